"""Chebyshev polynomials and the divided differences P_n, Q_n.

With S = s + t and T = s t,

    P_n(S, T)      = (T_n(t) - T_n(s)) / (t - s)
    Q_n(S, T, phi) = (T_n(t + phi) - T_n(s + phi)) / (t - s)

Both satisfy the order-4 recurrence

    X_{n+4} = 2(S + 2 phi)(X_{n+3} + X_{n+1}) - (4 phi^2 + 4T + 4 phi S + 2) X_{n+2} - X_n

(P is the case phi = 0).  The crossing curves used by the knot code are
T = S^2 - 3/4, S = 0 and T = (S^2 - 1)/2.  On each of them 4T is an integer
polynomial in the free variable, so the on-curve recurrences stay in Z.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import gcd
from typing import Dict, List, Sequence, Tuple, Union

import gmpy2

from . import zx
from .poly import BiPoly, MPoly, Poly


class Curve(enum.Enum):
    """A curve in the (S, T) plane along which crossings are parametrized."""

    A3 = "T=S^2-3/4"
    S0 = "S=0"
    B4 = "T=(S^2-1)/2"

    @property
    def var(self) -> str:
        """Name of the free variable on the curve."""
        return "T" if self is Curve.S0 else "S"

    @property
    def s_poly(self) -> List[int]:
        """S as an integer polynomial in the free variable."""
        return [] if self is Curve.S0 else [0, 1]

    @property
    def four_t(self) -> List[int]:
        """4T as an integer polynomial in the free variable."""
        return {Curve.A3: [-3, 0, 4], Curve.S0: [0, 4], Curve.B4: [-2, 0, 2]}[self]

    @classmethod
    def parse(cls, tag: Union["Curve", str]) -> "Curve":
        if isinstance(tag, Curve):
            return tag
        key = str(tag).replace(" ", "")
        for c in cls:
            if key in (c.value, c.name):
                return c
        raise ValueError(f"unknown curve {tag!r}")


# -- T_n ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _cheb_T_coeffs(n: int) -> Tuple[int, ...]:
    if n == 0:
        return (1,)
    if n == 1:
        return (0, 1)
    a, b = [1], [0, 1]
    for _ in range(n - 1):
        a, b = b, zx.sub(zx.shift(zx.scale(b, 2), 1), a)
    return tuple(b)


def cheb_T(n: int) -> Poly:
    """Chebyshev polynomial of the first kind, T_n(t)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Poly.from_ints(_cheb_T_coeffs(n), 1, "t")


# -- generic P_n(S, T) and Q_n(S, T, phi) ------------------------------------

def _bi(terms: Dict[Tuple[int, int], int], vars=("S", "T")) -> BiPoly:
    return BiPoly.from_dict(terms, vars)


@lru_cache(maxsize=8)
def _cheb_P_table(n: int) -> Tuple[BiPoly, ...]:
    seq = [
        _bi({}),
        _bi({(0, 0): 1}),
        _bi({(1, 0): 2}),
        _bi({(0, 1): -4, (2, 0): 4, (0, 0): -3}),
    ]
    two_s = _bi({(1, 0): 2})
    mid = _bi({(0, 1): 4, (0, 0): 2})
    for k in range(4, n + 1):
        seq.append(two_s * (seq[k - 1] + seq[k - 3]) - mid * seq[k - 2] - seq[k - 4])
    return tuple(seq[: n + 1])


def cheb_P(n: int) -> BiPoly:
    """P_n as an integer BiPoly in (S, T)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _cheb_P_table(max(n, 3))[n]


@lru_cache(maxsize=8)
def _cheb_Q_table(n: int) -> Tuple[MPoly, ...]:
    def m(terms):
        return MPoly(terms)

    seq = [
        m({}),
        m({(0, 0, 0): 1}),
        m({(1, 0, 0): 2, (0, 0, 1): 4}),
        m({(0, 1, 0): -4, (1, 0, 1): 12, (2, 0, 0): 4, (0, 0, 2): 12, (0, 0, 0): -3}),
    ]
    lin = m({(1, 0, 0): 2, (0, 0, 1): 4})
    mid = m({(0, 0, 2): 4, (0, 1, 0): 4, (1, 0, 1): 4, (0, 0, 0): 2})
    for k in range(4, n + 1):
        seq.append(lin * (seq[k - 1] + seq[k - 3]) - mid * seq[k - 2] - seq[k - 4])
    return tuple(seq[: n + 1])


def cheb_Q(n: int, curve: Union[Curve, str, None] = None) -> Union[MPoly, BiPoly]:
    """Q_n, either generic in (S, T, phi) or restricted to a crossing curve.

    With a curve the result is an integer BiPoly in (free variable, phi).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if curve is None:
        return _cheb_Q_table(max(n, 3))[n]
    return q_on_curve(n, Curve.parse(curve), keep=(n,))[n]


# -- restriction to a curve ----------------------------------------------------

def p_on_curve(n: int, curve: Union[Curve, str]) -> Poly:
    """P_n restricted to the curve, as an integer Poly in the free variable."""
    curve = Curve.parse(curve)
    return Poly.from_ints(_p_on_curve(n, curve), 1, curve.var)


@lru_cache(maxsize=256)
def _p_on_curve(n: int, curve: Curve) -> Tuple[int, ...]:
    s = curve.s_poly
    ft = curve.four_t
    base = [[], [1], zx.scale(s, 2), zx.add(zx.neg(ft), zx.add(zx.scale(zx.mul(s, s), 4), [-3]))]
    if n < 4:
        return tuple(base[n])
    two_s = zx.scale(s, 2)
    mid = zx.add(ft, [2])
    seq = base
    for k in range(4, n + 1):
        nxt = zx.sub(
            zx.sub(zx.mul(two_s, zx.add(seq[-1], seq[-3])), zx.mul(mid, seq[-2])),
            seq[-4],
        )
        seq = seq[1:] + [nxt]
    return tuple(seq[-1])


def _curve_terms(curve: Curve):
    """Monomials (u-degree, phi-degree, coefficient) of the two recurrence multipliers."""
    lin = [(0, 1, 4)]
    mid = [(0, 2, 4), (0, 0, 2)]
    if curve.s_poly:
        lin.append((1, 0, 2))
        mid.append((1, 1, 4))
    for i, c in enumerate(curve.four_t):
        if c:
            mid.append((i, 0, c))
    return lin, mid


def _q_bases(curve: Curve):
    s = bool(curve.s_poly)
    q2 = [(0, 1, 4)] + ([(1, 0, 2)] if s else [])
    q3 = [(0, 2, 12), (0, 0, -3)]
    if s:
        q3 += [(1, 1, 12), (2, 0, 4)]
    q3 += [(i, 0, -c) for i, c in enumerate(curve.four_t) if c]
    return [[], [(0, 0, 1)], q2, q3]


def q_on_curve(n: int, curve: Union[Curve, str], keep: Sequence[int] = ()) -> Dict[int, BiPoly]:
    """Run the on-curve recurrence up to Q_n and return the requested members.

    Each Q_k is held as one big integer: the bivariate coefficient array is
    packed with a fixed slot width, so multiplying by a monomial is a bit
    shift and the whole recurrence is a handful of GMP operations per step.
    """
    curve = Curve.parse(curve)
    keep = set(keep) or {n}
    if n < 0 or any(k < 0 or k > n for k in keep):
        raise ValueError("indices must lie in [0, n]")
    lin, mid = _curve_terms(curve)
    stride = n + 2
    # l1-norm bound on every coefficient produced along the way
    lin1 = sum(abs(c) for *_, c in lin)
    mid1 = sum(abs(c) for *_, c in mid)
    bases = _q_bases(curve)
    norms = [sum(abs(c) for *_, c in b) for b in bases]
    for k in range(4, n + 1):
        norms.append(lin1 * (norms[k - 1] + norms[k - 3]) + mid1 * norms[k - 2] + norms[k - 4])
    nbytes = zx._slot_bytes(max(norms).bit_length() + 1)
    w = 8 * nbytes

    def pack(terms):
        return sum(c << (w * (i * stride + j)) for i, j, c in terms)

    def apply(x, terms):
        return sum(c * (x << (w * (i * stride + j))) for i, j, c in terms)

    seq = [gmpy2.mpz(pack(b)) for b in bases]
    out: Dict[int, BiPoly] = {}

    def emit(k, v):
        nslots = (k + 1) * stride
        flat = zx._unpack(v, nbytes, nslots) if v else []
        out[k] = BiPoly(zx.unflatten2(flat, stride), (curve.var, "phi"))

    for k in range(min(n, 3) + 1):
        if k in keep:
            emit(k, seq[k])
    window = seq
    for k in range(4, n + 1):
        q = apply(window[3] + window[1], lin) - apply(window[2], mid) - window[0]
        window = window[1:] + [q]
        if k in keep:
            emit(k, q)
    return out


def substitute_curve(p: Union[BiPoly, MPoly], curve: Union[Curve, str]) -> Union[Poly, BiPoly]:
    """Restrict a polynomial in (S, T[, phi]) to one of the crossing curves.

    A BiPoly in (S, T) becomes a Poly in the free variable; an MPoly in
    (S, T, phi) becomes a BiPoly in (free variable, phi).
    """
    curve = Curve.parse(curve)
    s_u = Poly.from_ints(curve.s_poly, 1, curve.var)
    t_u = Poly.from_ints(curve.four_t, 4, curve.var)
    if isinstance(p, BiPoly):
        if p.vars != ("S", "T"):
            raise ValueError("expected a polynomial in (S, T)")
        acc = Poly([], curve.var)
        tpow = [Poly([1], curve.var)]
        for i, row in enumerate(p.rows):
            if not row:
                continue
            while len(tpow) < len(row):
                tpow.append(tpow[-1] * t_u)
            inner = Poly([], curve.var)
            for j, c in enumerate(row):
                if c:
                    inner = inner + tpow[j] * c
            acc = acc + inner * s_u ** i
        return acc * Fraction(1, p.den)
    if isinstance(p, MPoly):
        if p.vars != ("S", "T", "phi"):
            raise ValueError("expected a polynomial in (S, T, phi)")
        if not p.terms:
            return BiPoly([], (curve.var, "phi"))
        by_phi: Dict[int, Dict[Tuple[int, int], int]] = {}
        for (i, j, k), c in p.terms.items():
            by_phi.setdefault(k, {})[(i, j)] = c
        den = 1
        polys = {}
        for k, terms in by_phi.items():
            polys[k] = substitute_curve(BiPoly.from_dict(terms, ("S", "T")), curve)
            den = den * polys[k].den // gcd(den, polys[k].den)
        dphi = max(by_phi) + 1
        du = max((q.degree for q in polys.values()), default=-1) + 1
        rows = [[0] * dphi for _ in range(max(du, 0))]
        for k, q in polys.items():
            for i, c in enumerate(q.num):
                rows[i][k] = c * (den // q.den)
        return BiPoly(rows, (curve.var, "phi"), den * p.den)
    raise TypeError("substitute_curve expects a BiPoly or MPoly")


# -- divisor chain -------------------------------------------------------------

@dataclass(frozen=True)
class ChainFactor:
    """The factor of Q_n (or P_n) contributed by the divisor d of n."""

    d: int
    poly: Union[Poly, BiPoly, MPoly]

    @property
    def degree(self) -> int:
        """Degree in phi for Q factors, in the free variable for P factors."""
        p = self.poly
        if isinstance(p, Poly):
            return p.degree
        if isinstance(p, BiPoly):
            return p.degree("phi") if "phi" in p.vars else p.degree(p.vars[0])
        return p.degree("phi")


def divisors(n: int) -> List[int]:
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def factor_chain(n: int, family: str = "Q", curve: Union[Curve, str, None] = Curve.A3) -> List[ChainFactor]:
    """Split Q_n (or P_n) into the cofactors attached to the divisors d > 1 of n.

    F_d = X_d / prod(F_e for e | d, 1 < e < d), computed by exact division.
    The product of all factors is X_n.  Factors are listed by d descending.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if family not in ("P", "Q"):
        raise ValueError("family must be 'P' or 'Q'")
    ds = [d for d in divisors(n) if d > 1]
    if not ds:
        return []
    members = _chain_members(n, ds, family, curve)
    factors: Dict[int, object] = {}
    for d in ds:
        x = members[d]
        if _zero(x):
            raise ValueError(f"{family}_{d} vanishes identically on this curve")
        for e in ds:
            if e < d and d % e == 0:
                x = _divexact(x, factors[e])
        factors[d] = x
    return [ChainFactor(d, factors[d]) for d in sorted(ds, reverse=True)]


def _chain_members(n, ds, family, curve):
    if curve is None:
        if family == "P":
            table = _cheb_P_table(max(n, 3))
        else:
            table = _cheb_Q_table(max(n, 3))
        return {d: table[d] for d in ds}
    curve = Curve.parse(curve)
    if family == "P":
        return {d: p_on_curve(d, curve) for d in ds}
    return q_on_curve(n, curve, keep=ds)


def _zero(x) -> bool:
    if isinstance(x, MPoly):
        return not x.terms
    return x.is_zero()


def _divexact(a, b):
    if isinstance(a, Poly):
        q = zx.divexact(a.num, b.num)
        return Poly.from_ints(q, 1, a.var) * Fraction(b.den, a.den)
    return a.divexact(b)
