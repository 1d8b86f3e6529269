"""Chebyshev diagrams C(a, b) for a in {3, 4} and classification of C(a, b, c, phi).

The curve is x = T_a(t), y = T_b(t), z = T_c(t + phi).  A double point of
the plane projection comes from a parameter pair (s, t); with S = s + t and
T = s t it lies on

* a = 3:  T = S^2 - 3/4, P_b(S, T) = 0               (b - 1 crossings)
* a = 4:  family A on S = 0, P_b(0, T) = 0          ((b - 1)/2 crossings)
          family B on T = (S^2 - 1)/2, P_b(S, T) = 0 (b - 1 crossings, in
          pairs with the same abscissa)

The crossing is a right twist iff D = Q_c(S, T, phi) * P_{|b - a|}(S, T) > 0.
The knot is singular exactly when phi is a root of the eliminant
R_{a,b,c}(phi) = Res(P_b, Q_c) taken along each crossing curve.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import List, Optional, Sequence, Tuple, Union

from .exactpoly import zx
from .exactpoly.chebyshev import Curve, factor_chain, p_on_curve
from .exactpoly.poly import Poly, RatLike, as_rat
from .exactpoly.resultant import ZX_RING, prem as ring_prem, subresultant_resultant
from .realroots import AlgebraicNumber, IsolInterval, order_by_image, real_roots, sign_at
from .twobridge import ConwayWord, KnotClass, SchubertFraction, canonical, cf_value


class CriticalPhiError(ValueError):
    """phi is a root of R_{a,b,c}: the curve C(a, b, c, phi) is singular."""

    def __init__(self, params: "ChebParams", interval: IsolInterval, crossing: Optional[int] = None):
        self.params = params
        self.interval = interval
        self.crossing = crossing
        super().__init__(
            f"phi = {params.phi} is a critical value of C({params.a},{params.b},{params.c}); "
            f"root interval {interval!r}"
        )


@dataclass(frozen=True)
class ChebParams:
    a: int
    b: int
    c: int
    phi: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "phi", as_rat(self.phi))
        validate_ab(self.a, self.b)
        if self.c < 1:
            raise ValueError("c must be positive")


def validate_ab(a: int, b: int) -> None:
    if a not in (3, 4):
        raise ValueError("a must be 3 or 4")
    if b < 1:
        raise ValueError("b must be positive")
    if gcd(a, b) != 1:
        raise ValueError(f"a = {a} and b = {b} are not coprime")


# -- crossings ---------------------------------------------------------------------

@dataclass(frozen=True)
class CrossingFamily:
    """Crossings parametrized by the roots of one integer polynomial on one curve."""

    curve: Curve
    poly: Poly  # square-free, positive leading coefficient
    roots: Tuple[AlgebraicNumber, ...]  # in abscissa order
    abscissa: Poly


@dataclass(frozen=True)
class CrossingSet:
    """All double points of C(a, b), ordered for reading off the Conway word.

    For a = 3 ``families`` holds one family.  For a = 4 it holds family A
    followed by family B, and ``pairs`` lists the B crossings with equal
    abscissa as index pairs into family B's roots.
    """

    a: int
    b: int
    families: Tuple[CrossingFamily, ...]
    pairs: Tuple[Tuple[int, int], ...] = ()

    def __len__(self):
        return sum(len(f.roots) for f in self.families)


def _abscissa(curve: Curve) -> Poly:
    if curve is Curve.A3:
        return Poly([0, 3, 0, -4], "S")  # -T_3(S)
    if curve is Curve.S0:
        return Poly([1, 8, 8], "T")
    return Poly([-1, 0, 4, 0, -2], "S")


def _family(b: int, curve: Curve, expected: int) -> Tuple[CrossingFamily, Tuple[Tuple[int, int], ...]]:
    p = p_on_curve(b, curve).primitive()
    roots = real_roots(p)
    if len(roots) != expected:
        raise ArithmeticError(f"expected {expected} crossings on {curve.value}, found {len(roots)}")
    f = _abscissa(curve)
    pairs: Tuple[Tuple[int, int], ...] = ()
    if curve is Curve.B4:
        roots, pairs = _pair_b_family(p, roots, f)
    else:
        order = order_by_image(roots, f).permutation
        roots = [roots[i] for i in order]
    return CrossingFamily(curve, p, tuple(roots), f), pairs


def _pair_b_family(p: Poly, roots: List[AlgebraicNumber], f: Poly):
    """Order family B by abscissa, grouping the two crossings of each pair."""
    n = len(roots)
    if all(c == 0 for c in p.num[1::2]):
        # even polynomial: the pairs are {S, -S}, ordered by the positive root
        pos = roots[n // 2:]
        order = order_by_image(pos, f).permutation
        out: List[AlgebraicNumber] = []
        pairs = []
        for i in order:
            r = pos[i]
            out += [r.negate(), r]
            pairs.append((len(out) - 2, len(out) - 1))
        return out, tuple(pairs)
    grouped = order_by_image(roots, f, allow_ties=True)
    out, pairs = [], []
    for g in grouped.groups:
        if len(g) != 2:
            raise ArithmeticError("family B crossings do not pair up")
        out += [roots[g[0]], roots[g[1]]]
        pairs.append((len(out) - 2, len(out) - 1))
    return out, tuple(pairs)


@lru_cache(maxsize=128)
def crossings(a: int, b: int) -> CrossingSet:
    """Crossing parameters of C(a, b), isolated and sorted by abscissa."""
    validate_ab(a, b)
    if a == 3:
        fam, _ = _family(b, Curve.A3, b - 1)
        return CrossingSet(3, b, (fam,))
    if b % 2 == 0:
        raise ValueError("b must be odd when a = 4")
    n = (b - 1) // 2
    fam_a, _ = _family(b, Curve.S0, n)
    fam_b, pairs = _family(b, Curve.B4, 2 * n)
    return CrossingSet(4, b, (fam_a, fam_b), pairs)


# -- critical polynomial ----------------------------------------------------------

@dataclass(frozen=True)
class FactorResultant:
    """One factor-pair resultant: Res(F^P_dp, F^Q_dq) along ``curve``."""

    curve: Curve
    d_p: int
    d_q: int
    degree: int
    poly: Poly


@dataclass(frozen=True)
class CriticalPoly:
    """R_{a,b,c} as a primitive integer polynomial in phi plus its factor provenance."""

    a: int
    b: int
    c: int
    R: Poly
    factors: Tuple[FactorResultant, ...] = field(default=(), repr=False)

    @property
    def degree(self) -> int:
        return self.R.degree


def _normalize(num: Sequence[int]) -> List[int]:
    p = zx.primitive(zx.trim(num))
    return zx.neg(p) if p and p[-1] < 0 else p


def _factor_resultant(p: Sequence[int], q_rows: Sequence[Sequence[int]]) -> List[int]:
    """Res_u(p(u), q(u, phi)) up to a nonzero constant, with q reduced mod p first."""
    pc = [[c] if c else [] for c in p]
    q = [list(r) for r in q_rows]
    if len(q) >= len(pc):
        q = ring_prem(q, pc, ZX_RING)
    if not q:
        return []
    if len(pc) == 1:
        return [1]
    return _normalize(subresultant_resultant(pc, q, ZX_RING))


def _curve_eliminant(b: int, c: int, curve: Curve, keep_factors: bool):
    pf = factor_chain(b, "P", curve) if b > 1 else []
    qf = factor_chain(c, "Q", curve) if c > 1 else []
    out: List[int] = [1]
    recs = []
    for fp in pf:
        pnum = fp.poly.num
        if len(pnum) <= 1:
            continue
        for fq in qf:
            r = _factor_resultant(pnum, fq.poly.rows)
            out = zx.mul(out, r)
            if keep_factors:
                recs.append(FactorResultant(curve, fp.d, fq.d, len(r) - 1, Poly.from_ints(r, 1, "phi")))
    return out, recs


def critical_poly(a: int, b: int, c: int, keep_factors: bool = True) -> CriticalPoly:
    """R_{a,b,c}(phi), computed as a product of factor-pair resultants.

    The result is normalized to a primitive polynomial with positive leading
    coefficient, since only its root set is used.
    """
    validate_ab(a, b)
    if a == 4 and b % 2 == 0:
        raise ValueError("b must be odd when a = 4")
    if a == 3:
        r, recs = _curve_eliminant(b, c, Curve.A3, keep_factors)
    else:
        r1, recs1 = _curve_eliminant(b, c, Curve.S0, keep_factors)
        r2, recs2 = _curve_eliminant(b, c, Curve.B4, keep_factors)
        r, recs = zx.mul(r1, r2), recs1 + recs2
    return CriticalPoly(a, b, c, Poly.from_ints(_normalize(r), 1, "phi"), tuple(recs))


def expected_degree(a: int, b: int, c: int) -> int:
    """(a - 1)(b - 1)(c - 1)/2, the degree of R for the instances studied here."""
    return (a - 1) * (b - 1) * (c - 1) // 2


# -- signs ---------------------------------------------------------------------------

def q_at_phi(n: int, curve: Curve, phi: RatLike) -> List[int]:
    """V^(n-1) Q_n(u, U/V) on the curve, an integer polynomial in the free variable.

    phi = U/V with V > 0, so the sign at any point equals that of Q_n.
    """
    phi = as_rat(phi)
    U, V = phi.numerator, phi.denominator
    s = curve.s_poly
    ft = curve.four_t
    V2 = V * V
    lin = zx.add(zx.scale(s, 2 * V), [4 * U])                                   # 2(V S + 2U)
    mid = zx.add(zx.add([4 * U * U], zx.scale(s, 4 * U * V)), zx.scale(zx.add(ft, [2]), V2))
    q3 = zx.add(
        zx.scale(zx.add(zx.neg(ft), zx.add(zx.scale(zx.mul(s, s), 4), [-3])), V2),
        zx.add(zx.scale(s, 12 * U * V), [12 * U * U]),
    )
    seq = [[], [1], zx.add(zx.scale(s, 2 * V), [4 * U]), q3]
    if n < 4:
        return seq[n]
    V4 = V2 * V2
    for _ in range(4, n + 1):
        nxt = zx.sub(
            zx.sub(zx.mul(lin, zx.add(seq[3], zx.scale(seq[1], V2))), zx.mul(mid, seq[2])),
            zx.scale(seq[0], V4),
        )
        seq = seq[1:] + [nxt]
    return seq[3]


def _reduce_mod(q: Sequence[int], p: Sequence[int]) -> List[int]:
    """A positive multiple of (q mod p); p must have positive leading coefficient."""
    r = zx.prem(q, p) if len(q) >= len(p) else zx.trim(q)
    return zx.primitive(r)


def _family_signs(fam: CrossingFamily, poly: Sequence[int]) -> List[int]:
    red = _reduce_mod(poly, fam.poly.num)
    return [sign_at(red, r) for r in fam.roots]


@lru_cache(maxsize=256)
def _p_signs(a: int, b: int) -> Tuple[Tuple[int, ...], ...]:
    cs = crossings(a, b)
    out = []
    for fam in cs.families:
        pd = p_on_curve(abs(b - a), fam.curve).num
        signs = _family_signs(fam, pd)
        if 0 in signs:
            raise ArithmeticError("P_{|b-a|} vanishes at a crossing")
        out.append(tuple(signs))
    return tuple(out)


def crossing_signs(params: ChebParams) -> Tuple[Tuple[int, ...], ...]:
    """sign D at every crossing, family by family, in abscissa order.

    +1 is a right twist, -1 a left twist.  Raises CriticalPhiError when a
    crossing has D = 0, which happens exactly when R_{a,b,c}(phi) = 0.
    """
    cs = crossings(params.a, params.b)
    psigns = _p_signs(params.a, params.b)
    out = []
    for fi, fam in enumerate(cs.families):
        qs = _family_signs(fam, q_at_phi(params.c, fam.curve, params.phi))
        for i, s in enumerate(qs):
            if s == 0:
                raise CriticalPhiError(params, IsolInterval.point(params.phi), i)
        out.append(tuple(q * p for q, p in zip(qs, psigns[fi])))
    return tuple(out)


def crossing_sign(params: ChebParams, family: int, index: int) -> int:
    """sign D at one crossing (``family`` 0 is the only family for a = 3, A/B for a = 4)."""
    return crossing_signs(params)[family][index]


def conway_word(a: int, b: int, signs: Sequence[Sequence[int]]) -> ConwayWord:
    """Conway word of C(a, b, c, phi) from the crossing signs.

    a = 3: eps_i = (-1)^b (-1)^(i-1) sign D(A_i) over the b - 1 crossings.
    a = 4: (-1)^b [d(A_1), -(d(B_1) + d(B'_1)), ..., d(A_n), -(d(B_n) + d(B'_n))].
    The global (-1)^b fixes the orientation so that the fractions agree with
    the standard tables including chirality.
    """
    g = -1 if b % 2 else 1
    if a == 3:
        (s,) = signs
        if len(s) != b - 1:
            raise ValueError("wrong number of signs")
        return tuple(g * (1 if i % 2 == 0 else -1) * x for i, x in enumerate(s))
    if len(signs) != 2:
        raise ValueError("a = 4 needs the A and B families")
    sa, sb = signs
    n = (b - 1) // 2
    if len(sa) != n or len(sb) != 2 * n:
        raise ValueError("wrong number of signs")
    word: List[int] = []
    for i in range(n):
        word += [g * sa[i], -g * (sb[2 * i] + sb[2 * i + 1])]
    return tuple(word)


@dataclass(frozen=True)
class Classification:
    params: ChebParams
    signs: Tuple[Tuple[int, ...], ...]
    word: ConwayWord
    fraction: Optional[Fraction]  # None when the word evaluates to 1/0
    schubert: SchubertFraction
    knot: KnotClass

    @property
    def trivial(self) -> bool:
        return self.knot.trivial


def classify(params: Union[ChebParams, Tuple[int, int, int, RatLike]], up_to_mirror: bool = False) -> Classification:
    """Conway word, Schubert fraction and knot type of C(a, b, c, phi)."""
    if not isinstance(params, ChebParams):
        params = ChebParams(*params)
    signs = crossing_signs(params)
    word = conway_word(params.a, params.b, signs)
    num, den = cf_value(word)
    if den == 0:
        # determinant 1: the diagram is an unknot
        value, sf = None, SchubertFraction(1, 0)
    else:
        value = Fraction(num, den)
        sf = SchubertFraction.of(value)
    return Classification(params, signs, word, value, sf, canonical(sf, up_to_mirror))
