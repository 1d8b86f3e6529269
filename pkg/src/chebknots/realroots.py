"""Certified real-root isolation and exact sign queries.

Roots of a square-free integer polynomial are isolated by Descartes' rule of
signs with bisection (the Vincent-Collins-Akritas scheme).  A real algebraic
number is a square-free integer polynomial together with an isolating
interval; every comparison below is decided exactly from signs of integer
polynomials at rational points, never from floating point.

Interval endpoints are never roots of the polynomial they isolate except
where a root of the same polynomial was found exactly during bisection; in
that case the neighbouring intervals may share that rational endpoint.  The
"sign just inside" an endpoint is then read off the derivative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

from .exactpoly import zx
from .exactpoly.poly import Poly, RatLike, as_rat, resultant, BiPoly


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class IsolInterval:
    """Rational interval holding exactly one root.

    ``lo == hi`` (both ends closed) marks an exact rational root; otherwise
    the root lies in the open interval ``(lo, hi)``.
    """

    lo: Fraction
    hi: Fraction
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("interval with lo > hi")
        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            raise ValueError("a degenerate interval must be closed")

    @classmethod
    def point(cls, x: RatLike) -> "IsolInterval":
        x = as_rat(x)
        return cls(x, x, True, True)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: RatLike) -> bool:
        x = as_rat(x)
        if self.is_point:
            return x == self.lo
        return self.lo < x < self.hi

    def negate(self) -> "IsolInterval":
        return IsolInterval(-self.hi, -self.lo, self.hi_closed, self.lo_closed)

    def __repr__(self):
        if self.is_point:
            return f"[{self.lo}]"
        return f"({self.lo}, {self.hi})"


# -- sign helpers on integer polynomials ---------------------------------------

def _sign_at(p: Sequence[int], x: Fraction) -> int:
    return zx.sign_at_frac(p, x.numerator, x.denominator)


def _sign_right(p: Sequence[int], x: Fraction) -> int:
    """Sign of p on (x, x + eps) for a square-free p."""
    s = _sign_at(p, x)
    return s if s else _sign_at(zx.derivative(p), x)


def _sign_left(p: Sequence[int], x: Fraction) -> int:
    """Sign of p on (x - eps, x) for a square-free p."""
    s = _sign_at(p, x)
    return s if s else -_sign_at(zx.derivative(p), x)


def _as_int_poly(p: Union[Poly, Sequence[int]]) -> List[int]:
    if isinstance(p, Poly):
        return zx.primitive(p.num) if p.den != 1 else list(p.num)
    return zx.trim(p)


# -- isolation -------------------------------------------------------------------

def root_bound_exp(p: Sequence[int]) -> int:
    """e such that every real root of p has absolute value below 2**e."""
    n = len(p) - 1
    lb = abs(p[-1]).bit_length()
    e = 0
    for i in range(1, n + 1):
        c = p[n - i]
        if c:
            need = -(-(abs(c).bit_length() - lb + 1) // i)
            e = max(e, need)
    return e + 1


def _descartes01(g: Sequence[int]) -> int:
    """Upper bound (exact when 0 or 1) for the number of roots of g in (0, 1)."""
    return zx.sign_variations(zx.taylor_shift1(zx.reverse(g)))


def _deflate_half(g: List[int]) -> List[int]:
    """g / (2x - 1) for g with g(1/2) = 0."""
    # synthetic division from the top: g = (2x - 1) h
    n = len(g) - 1
    h = [0] * n
    rem = 0
    for i in range(n, 0, -1):
        c = g[i] + rem
        if c % 2:
            raise ArithmeticError("not divisible by 2x - 1")
        h[i - 1] = c // 2
        rem = h[i - 1]
    if g[0] + rem != 0:
        raise ArithmeticError("not divisible by 2x - 1")
    return h


def _isolate_unit(f: List[int]):
    """Roots of f in (0, 1): list of (k, c, exact) meaning (c/2^k, (c+1)/2^k),
    or the exact point c/2^k when ``exact`` is set."""
    out = []
    stack = [(f, 0, 0)]
    while stack:
        g, k, c = stack.pop()
        if len(g) <= 1:
            continue
        v = _descartes01(g)
        if v == 0:
            continue
        if v == 1:
            out.append((k, c, False))
            continue
        n = len(g) - 1
        half = [g[i] << (n - i) for i in range(n + 1)]  # 2^n g(x/2)
        if sum(half) == 0:
            out.append((k + 1, 2 * c + 1, True))
            g = _deflate_half(g)
            n -= 1
            half = [g[i] << (n - i) for i in range(n + 1)]
        half = zx.primitive(half)
        right = zx.primitive(zx.taylor_shift1(half))
        stack.append((right, k + 1, 2 * c + 1))
        stack.append((half, k + 1, 2 * c))
    return out


def _isolate_positive(p: List[int]) -> List[IsolInterval]:
    if len(p) <= 1:
        return []
    e = root_bound_exp(p)
    f = zx.primitive([c << (e * i) for i, c in enumerate(p)])  # p(2^e x)
    res = []
    for k, c, exact in _isolate_unit(f):
        if exact:
            res.append(IsolInterval.point(Fraction(c << e, 1 << k)))
        else:
            res.append(IsolInterval(Fraction(c << e, 1 << k), Fraction((c + 1) << e, 1 << k)))
    res.sort(key=lambda iv: iv.lo)
    return res


def isolate_int(p: Sequence[int]) -> List[IsolInterval]:
    """Isolating intervals for the distinct real roots of an integer polynomial."""
    p = zx.trim(p)
    if not p:
        raise ValueError("cannot isolate the roots of the zero polynomial")
    q = zx.squarefree_part(p)
    out: List[IsolInterval] = []
    zero_root = q[0] == 0
    if zero_root:
        q = q[1:]
    neg = [iv.negate() for iv in reversed(_isolate_positive(zx.reflect(q)))]
    pos = _isolate_positive(q)
    out = neg + ([IsolInterval.point(0)] if zero_root else []) + pos
    return out


def isolate(p: Union[Poly, Sequence[int]]) -> List[IsolInterval]:
    """Sorted, pairwise disjoint isolating intervals, one per distinct real root."""
    return isolate_int(_as_int_poly(p))


# -- Sturm sequences ---------------------------------------------------------------

def sturm_sequence(p: Sequence[int]) -> List[List[int]]:
    p = zx.trim(p)
    seq = [p, zx.derivative(p)]
    while seq[-1] and len(seq[-1]) > 1:
        a, b = seq[-2], seq[-1]
        r = zx.prem(a, b)
        # prem multiplies by lc(b)^k; undo its sign, then negate
        k = len(a) - len(b) + 1
        if b[-1] < 0 and k % 2:
            r = zx.neg(r)
        r = zx.neg(zx.primitive(r))
        if not r:
            break
        seq.append(r)
    return [s for s in seq if s]


def _variations(signs: Iterable[int]) -> int:
    v, last = 0, 0
    for s in signs:
        if s:
            if last and s != last:
                v += 1
            last = s
    return v


def count_real_roots(p: Union[Poly, Sequence[int]], lo: Optional[RatLike] = None, hi: Optional[RatLike] = None) -> int:
    """Number of distinct real roots (in (lo, hi] when bounds are given), by Sturm's theorem."""
    q = _as_int_poly(p)
    if not q:
        raise ValueError("zero polynomial")
    seq = sturm_sequence(q)

    def v_at(x):
        if x is None:
            return None
        x = as_rat(x)
        return _variations(_sign_at(s, x) for s in seq)

    if lo is None:
        vlo = _variations(_sgn(s[-1]) * (-1 if (len(s) - 1) % 2 else 1) for s in seq)
    else:
        vlo = v_at(lo)
    if hi is None:
        vhi = _variations(_sgn(s[-1]) for s in seq)
    else:
        vhi = v_at(hi)
    return vlo - vhi


# -- algebraic numbers ---------------------------------------------------------------

class AlgebraicNumber:
    """A real root of a square-free integer polynomial, pinned by an interval.

    Instances are immutable; refinement returns a new object.
    """

    __slots__ = ("defining", "interval", "_slo")

    def __init__(self, defining: Union[Poly, Sequence[int]], interval: IsolInterval):
        self.defining = tuple(_as_int_poly(defining))
        self.interval = interval
        self._slo = 0 if interval.is_point else _sign_right(self.defining, interval.lo)

    @classmethod
    def rational(cls, x: RatLike) -> "AlgebraicNumber":
        x = as_rat(x)
        return cls([-x.numerator, x.denominator], IsolInterval.point(x))

    @property
    def poly(self) -> Poly:
        return Poly.from_ints(self.defining, 1, "t")

    @property
    def is_rational(self) -> bool:
        return self.interval.is_point

    @property
    def lo(self) -> Fraction:
        return self.interval.lo

    @property
    def hi(self) -> Fraction:
        return self.interval.hi

    def __repr__(self):
        return f"AlgebraicNumber(deg={len(self.defining) - 1}, {self.interval!r})"

    def cmp_rational(self, q: RatLike) -> int:
        """sign(q - self), decided exactly."""
        q = as_rat(q)
        iv = self.interval
        if iv.is_point:
            return _sgn(q - iv.lo)
        if q <= iv.lo:
            return -1
        if q >= iv.hi:
            return 1
        s = _sign_at(self.defining, q)
        if s == 0:
            return 0
        return -1 if s == self._slo else 1

    def bisect(self) -> "AlgebraicNumber":
        """Halve the isolating interval (or land on the root exactly)."""
        iv = self.interval
        if iv.is_point:
            return self
        m = iv.midpoint
        s = _sign_at(self.defining, m)
        if s == 0:
            new = IsolInterval.point(m)
        elif s == self._slo:
            new = IsolInterval(m, iv.hi)
        else:
            new = IsolInterval(iv.lo, m)
        out = AlgebraicNumber.__new__(AlgebraicNumber)
        out.defining = self.defining
        out.interval = new
        out._slo = 0 if new.is_point else (self._slo if new.lo == iv.lo else s)
        return out

    def refine(self, width: RatLike) -> "AlgebraicNumber":
        """Refine until the interval is no wider than ``width``."""
        width = as_rat(width)
        a = self
        while a.interval.width > width:
            a = a.bisect()
        return a

    def approx(self, bits: int = 64) -> Fraction:
        """A rational within 2**-bits of the number."""
        return self.refine(Fraction(1, 1 << bits)).interval.midpoint

    def __float__(self):
        return float(self.approx(60))

    def negate(self) -> "AlgebraicNumber":
        return AlgebraicNumber(zx.reflect(self.defining), self.interval.negate())


def real_roots(p: Union[Poly, Sequence[int]]) -> List[AlgebraicNumber]:
    """Distinct real roots of p, ascending, as algebraic numbers of its square-free part."""
    q = zx.squarefree_part(_as_int_poly(p))
    return [AlgebraicNumber(q, iv) for iv in isolate_int(q)]


def coprime_squarefree_basis(polys: Sequence[Union[Poly, Sequence[int]]]) -> List[List[int]]:
    """Square-free, pairwise coprime integer polynomials with the same real roots as the product.

    Coprimality is first certified modulo a prime; an exact gcd is only
    computed for pairs that fail the certificate.
    """
    basis: List[List[int]] = []
    for p in polys:
        f = zx.squarefree_part(_as_int_poly(p))
        for g in basis:
            if len(f) <= 1:
                break
            if zx.coprime_certificate(f, g):
                continue
            h = zx.gcd_poly(f, g)
            if len(h) > 1:
                f = zx.primitive(zx.divexact(f, h))
        if len(f) > 1:
            basis.append(f if f[-1] > 0 else zx.neg(f))
    return basis


def real_roots_of_product(polys: Sequence[Union[Poly, Sequence[int]]]) -> List[AlgebraicNumber]:
    """Distinct real roots of a product given by its factors, ascending.

    Each factor is isolated on its own, which is far cheaper than isolating the
    expanded product.  Roots from different factors are distinct, so
    overlapping intervals are bisected until the list is strictly ordered.
    """
    # isolating intervals are open with non-root endpoints, or exact points
    def key(r):
        return (r.lo, r.hi)

    roots = [AlgebraicNumber(f, iv) for f in coprime_squarefree_basis(polys) for iv in isolate_int(f)]
    roots.sort(key=key)
    i = 0
    while i + 1 < len(roots):
        a, b = roots[i], roots[i + 1]
        if a.hi <= b.lo:
            i += 1
            continue
        roots[i], roots[i + 1] = a.bisect(), b.bisect()
        roots.sort(key=key)
        i = max(i - 1, 0)
    return roots


# -- sampling ------------------------------------------------------------------------

Comparator = Callable[[Fraction], int]  # sign(q - x) for a fixed real x


def _simplest_between(cmp_lo: Optional[Comparator], cmp_hi: Optional[Comparator]) -> Fraction:
    """Simplest rational strictly between two reals given only by comparators.

    ``None`` stands for -inf / +inf.  The reals must satisfy lo < hi.
    """
    zero = Fraction(0)
    lo_below_zero = cmp_lo is None or cmp_lo(zero) > 0
    hi_above_zero = cmp_hi is None or cmp_hi(zero) < 0
    if lo_below_zero and hi_above_zero:
        return zero
    if not hi_above_zero:
        # hi <= 0: mirror to the positive side
        def neg(c):
            return (lambda q: -c(-q)) if c is not None else None

        return -_simplest_between(neg(cmp_hi), neg(cmp_lo))

    # 0 <= lo < hi: Stern-Brocot descent with galloping.
    def above_lo(n, d):
        return cmp_lo(Fraction(n, d)) > 0 if cmp_lo is not None else True

    def below_hi(n, d):
        if d == 0:
            return False
        return cmp_hi(Fraction(n, d)) < 0 if cmp_hi is not None else True

    a, b, c, d = 0, 1, 1, 0  # left a/b, right c/d
    while True:
        mn, md = a + c, b + d
        if not above_lo(mn, md):
            # move right: largest k with (a + k c)/(b + k d) <= lo
            k = _gallop(lambda k: not above_lo(a + k * c, b + k * d))
            a, b = a + k * c, b + k * d
        elif not below_hi(mn, md):
            k = _gallop(lambda k: not below_hi(c + k * a, d + k * b))
            c, d = c + k * a, d + k * b
        else:
            return Fraction(mn, md)


def simplest_between(
    lo: Union[AlgebraicNumber, Fraction, None], hi: Union[AlgebraicNumber, Fraction, None]
) -> Fraction:
    """Simplest rational strictly between two reals (``None`` for an infinite end)."""

    def comparator(x) -> Optional[Comparator]:
        if x is None:
            return None
        if isinstance(x, AlgebraicNumber):
            return x.cmp_rational
        x = as_rat(x)
        return lambda q: (q > x) - (q < x)

    return _simplest_between(comparator(lo), comparator(hi))


def _gallop(pred: Callable[[int], bool]) -> int:
    """Largest k >= 1 with pred(k), given pred(1) holds and pred is monotone."""
    lo, hi = 1, 2
    while pred(hi):
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo


def sample_between(
    roots: Sequence[Union[AlgebraicNumber, IsolInterval]],
    poly: Optional[Union[Poly, Sequence[int]]] = None,
) -> List[Fraction]:
    """One rational in each cell of the line cut at the given sorted roots.

    Each sample is the simplest rational (smallest denominator, then smallest
    absolute numerator) strictly between consecutive roots.  Bare intervals
    need the polynomial whose roots they isolate.
    """
    nums: List[AlgebraicNumber] = []
    for r in roots:
        if isinstance(r, AlgebraicNumber):
            nums.append(r)
        else:
            if poly is None:
                raise ValueError("intervals need their polynomial")
            nums.append(AlgebraicNumber(zx.squarefree_part(_as_int_poly(poly)), r))
    cmps: List[Optional[Comparator]] = [None] + [r.cmp_rational for r in nums] + [None]
    return [_simplest_between(cmps[i], cmps[i + 1]) for i in range(len(nums) + 1)]


# -- signs at algebraic numbers ----------------------------------------------------

def _descartes_interval(q: Sequence[int], lo: Fraction, hi: Fraction) -> int:
    """Descartes bound for the roots of q in (lo, hi)."""
    w = hi - lo
    # q(lo + w x), cleared of denominators
    t = zx.compose_linear(q, w.numerator, w.denominator)  # den^n q(w x)
    shifted = _shift_by(t, lo / w)
    return _descartes01(shifted)


def _shift_by(p: Sequence[int], a: Fraction) -> List[int]:
    """den^n * p(x + a) for rational a = num/den, as an integer polynomial."""
    num, den = a.numerator, a.denominator
    n = len(p) - 1
    # p(x + num/den) * den^n = sum p_i (den x + num)^i den^(n-i)
    out = [0] * (n + 1)
    power = [1]
    lin = [num, den]
    for i, c in enumerate(p):
        if c:
            term = zx.scale(power, c * den ** (n - i))
            for j, v in enumerate(term):
                out[j] += v
        power = zx.mul(power, lin)
    return zx.trim(out)


def sign_at(q: Union[Poly, Sequence[int]], alpha: AlgebraicNumber) -> int:
    """Exact sign of q(alpha).

    A zero is certified through g = gcd(q, defining): alpha is a root of q iff
    g changes sign across alpha's interval.  Otherwise the interval is
    bisected until q provably keeps one sign on it.
    """
    qi = _as_int_poly(q) if not isinstance(q, Poly) else list(q.num)
    if not qi:
        return 0
    if len(qi) == 1:
        return _sgn(qi[0])
    iv = alpha.interval
    if iv.is_point:
        return _sign_at(qi, iv.lo)
    p = list(alpha.defining)
    g = zx.gcd_poly(qi, p)
    if len(g) > 1 and _sign_right(g, iv.lo) != _sign_left(g, iv.hi):
        return 0
    a = alpha
    while True:
        iv = a.interval
        if iv.is_point:
            return _sign_at(qi, iv.lo)
        d = iv.lo.denominator * iv.hi.denominator
        L, H = zx.interval_eval_scaled(qi, int(iv.lo * d), int(iv.hi * d), d)
        if L > 0:
            return 1
        if H < 0:
            return -1
        s = _sign_right(qi, iv.lo)
        if s and _sign_at(qi, iv.lo) != 0 and _descartes_interval(qi, iv.lo, iv.hi) == 0:
            return s
        a = a.bisect()


# -- ordering by image --------------------------------------------------------------

class TieError(ValueError):
    """Two roots have the same image and ties were not permitted."""


@dataclass(frozen=True)
class ImageOrder:
    """Indices sorted by image, with runs of certified-equal images grouped."""

    groups: Tuple[Tuple[int, ...], ...]

    @property
    def permutation(self) -> List[int]:
        return [i for g in self.groups for i in g]

    @property
    def has_ties(self) -> bool:
        return any(len(g) > 1 for g in self.groups)


def image_polynomial(p: Sequence[int], f: Union[Poly, Sequence[int]]) -> List[int]:
    """Square-free integer polynomial whose roots include f(alpha) for every root alpha of p."""
    fi = _as_int_poly(f) if not isinstance(f, Poly) else None
    fp = f if isinstance(f, Poly) else Poly.from_ints(fi, 1, "x")
    # y - f(x) as a BiPoly in (x, y)
    rows = [[-c] for c in fp.num]
    rows = [r if r != [0] else [] for r in rows]
    if rows:
        rows[0] = zx.add(rows[0], [0, fp.den])
    else:
        rows = [[0, fp.den]]
    yf = BiPoly(rows, ("x", "y"), fp.den)
    res = resultant(Poly.from_ints(p, 1, "x"), yf, "x")
    return zx.squarefree_part(zx.primitive(res.num))


def _image_interval(f: Sequence[int], fden: int, a: AlgebraicNumber) -> Tuple[Fraction, Fraction]:
    iv = a.interval
    d = iv.lo.denominator * iv.hi.denominator
    L, H = zx.interval_eval_scaled(f, int(iv.lo * d), int(iv.hi * d), d)
    s = d ** max(len(f) - 1, 0) * fden
    return Fraction(L, s), Fraction(H, s)


def order_by_image(
    roots: Sequence[AlgebraicNumber],
    f: Union[Poly, Sequence[int]],
    allow_ties: bool = False,
    quick_rounds: int = 40,
) -> ImageOrder:
    """Sort roots by f(root), certifying every comparison.

    Images are first separated by refining the roots.  If some images still
    overlap, each image is located among the isolated roots of the image
    polynomial Res_x(p(x), y - f(x)); equal locations are genuine ties.
    """
    fp = f if isinstance(f, Poly) else Poly.from_ints(_as_int_poly(f), 1, "x")
    fnum, fden = list(fp.num), fp.den
    cur = list(roots)
    n = len(cur)
    if n == 0:
        return ImageOrder(())
    for _ in range(quick_rounds):
        imgs = [_image_interval(fnum, fden, a) for a in cur]
        order = sorted(range(n), key=lambda i: imgs[i][0])
        ok = all(
            imgs[order[k]][1] < imgs[order[k + 1]][0]
            for k in range(n - 1)
        )
        if ok:
            return ImageOrder(tuple((i,) for i in order))
        cur = [a.bisect() for a in cur]
    # certified slow path through the image polynomial
    defs = {a.defining for a in cur}
    g: List[int] = [1]
    for d in defs:
        g = zx.mul(g, image_polynomial(list(d), fp))
    g = zx.squarefree_part(g)
    targets = [AlgebraicNumber(g, iv) for iv in isolate_int(g)]
    slot = []
    for a in cur:
        # f(a) is one of the targets; it is pinned once its enclosure meets
        # exactly one target interval (closures taken, so shared endpoints count).
        while True:
            lo, hi = _image_interval(fnum, fden, a)
            hits = [j for j, t in enumerate(targets) if not (hi < t.lo or lo > t.hi)]
            if len(hits) == 1:
                slot.append(hits[0])
                break
            a = a.bisect()
            for j in hits:
                targets[j] = targets[j].bisect()
    groups = {}
    for i, j in enumerate(slot):
        groups.setdefault(j, []).append(i)
    out = tuple(tuple(groups[j]) for j in sorted(groups))
    res = ImageOrder(out)
    if res.has_ties and not allow_ties:
        raise TieError("roots with equal images")
    return res

