"""Exact polynomial types with rational coefficients.

Every type stores integer numerators plus one positive common denominator,
so arithmetic stays in Z and the rational view is produced on demand.

* ``Poly``   dense univariate, tagged with its variable name.
* ``BiPoly`` dense bivariate; ``rows[i]`` is the coefficient of ``x**i`` as
  a polynomial in ``y``.
* ``MPoly``  sparse trivariate, used for the generic form of the shifted
  Chebyshev divided differences.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from . import zx
from .resultant import ZX_RING, INT_RING, subresultant_resultant

Rat = Fraction
RatLike = Union[int, Fraction, str]

VARIABLES = ("t", "S", "T", "phi")


def as_rat(x: RatLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def _clear(coeffs: Iterable[RatLike]) -> Tuple[List[int], int]:
    fr = [as_rat(c) for c in coeffs]
    den = 1
    for c in fr:
        den = den * c.denominator // gcd(den, c.denominator)
    return [int(c * den) for c in fr], den


def _reduce(num: List[int], den: int) -> Tuple[List[int], int]:
    num = zx.trim(num)
    if not num:
        return [], 1
    if den < 0:
        num, den = zx.neg(num), -den
    g = gcd(zx.content(num), den)
    if g > 1:
        num = [c // g for c in num]
        den //= g
    return num, den


class Poly:
    """Dense univariate polynomial over Q.

    ``num`` holds integer numerators in ascending degree; the value is
    ``num / den``.  Instances are treated as immutable.
    """

    __slots__ = ("num", "den", "var")

    def __init__(self, coeffs: Iterable[RatLike] = (), var: str = "t"):
        num, den = _clear(coeffs)
        self.num, self.den = _reduce(num, den)
        self.var = var

    @classmethod
    def from_ints(cls, num: Sequence[int], den: int = 1, var: str = "t") -> "Poly":
        p = cls.__new__(cls)
        p.num, p.den = _reduce(list(num), den)
        p.var = var
        return p

    # -- views ------------------------------------------------------------
    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    @property
    def degree(self) -> int:
        return len(self.num) - 1

    def is_zero(self) -> bool:
        return not self.num

    @property
    def lc(self) -> Fraction:
        return Fraction(self.num[-1], self.den) if self.num else Fraction(0)

    def primitive(self) -> "Poly":
        """Integer polynomial with unit content and positive leading coefficient."""
        p = zx.primitive(self.num)
        if p and p[-1] < 0:
            p = zx.neg(p)
        return Poly.from_ints(p, 1, self.var)

    def integer_coeffs(self) -> List[int]:
        if self.den != 1:
            raise ValueError("polynomial has non-integer coefficients")
        return list(self.num)

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other], self.var)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Poly.from_ints(
            zx.add(zx.scale(self.num, o.den), zx.scale(o.num, self.den)), self.den * o.den, self.var
        )

    __radd__ = __add__

    def __neg__(self):
        return Poly.from_ints(zx.neg(self.num), self.den, self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Poly.from_ints(zx.mul(self.num, o.num), self.den * o.den, self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return Poly.from_ints(zx.power(self.num, e), self.den ** e, self.var)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other], self.var)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((tuple(self.num), self.den))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*{self.var}^{i}" if i else str(c))
        return f"Poly({' + '.join(terms) or '0'})"

    def __call__(self, x: RatLike) -> Fraction:
        return self.eval(x)

    def eval(self, x: RatLike) -> Fraction:
        x = as_rat(x)
        n, d = zx.eval_frac(self.num, x.numerator, x.denominator)
        return Fraction(n, d * self.den)

    def derivative(self) -> "Poly":
        return Poly.from_ints(zx.derivative(self.num), self.den, self.var)

    def divmod(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        q = [Fraction(0)] * max(len(r) - db, 0)
        for i in range(len(r) - 1, db - 1, -1):
            t = r[i] / b[-1]
            if t:
                q[i - db] = t
                for j in range(db + 1):
                    r[i - db + j] -= t * b[j]
        return Poly(q, self.var), Poly(r[:db], self.var)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def gcd(self, other: "Poly") -> "Poly":
        """Greatest common divisor, normalized to a primitive integer polynomial."""
        return Poly.from_ints(zx.gcd_poly(self.num, other.num), 1, self.var)

    def squarefree_part(self) -> "Poly":
        return Poly.from_ints(zx.squarefree_part(self.num), 1, self.var)

    def interval_eval(self, lo: RatLike, hi: RatLike) -> Tuple[Fraction, Fraction]:
        """Rational interval containing p([lo, hi])."""
        lo, hi = as_rat(lo), as_rat(hi)
        if lo > hi:
            raise ValueError("empty interval")
        d = lo.denominator * hi.denominator // gcd(lo.denominator, hi.denominator)
        L, H = zx.interval_eval_scaled(self.num, int(lo * d), int(hi * d), d)
        scale = d ** max(self.degree, 0) * self.den
        return Fraction(L, scale), Fraction(H, scale)


def derivative(p: Poly) -> Poly:
    return p.derivative()


def poly_gcd(p: Poly, q: Poly) -> Poly:
    return p.gcd(q)


def squarefree_part(p: Poly) -> Poly:
    return p.squarefree_part()


def evaluate(p: Poly, x: RatLike) -> Fraction:
    return p.eval(x)


def interval_eval(p: Poly, lo: RatLike, hi: RatLike) -> Tuple[Fraction, Fraction]:
    return p.interval_eval(lo, hi)


class BiPoly:
    """Dense bivariate polynomial over Q in variables ``(x, y)``.

    ``rows[i]`` is the integer coefficient polynomial of ``x**i`` in ``y``;
    the value is ``sum rows[i](y) x**i / den``.
    """

    __slots__ = ("rows", "den", "vars")

    def __init__(self, rows: Sequence[Sequence[int]], vars: Tuple[str, str] = ("S", "phi"), den: int = 1):
        rows = [zx.trim(r) for r in rows]
        while rows and not rows[-1]:
            rows.pop()
        if den < 0:
            rows, den = [zx.neg(r) for r in rows], -den
        g = den
        for r in rows:
            if g == 1:
                break
            g = gcd(g, zx.content(r))
        if rows and g > 1:
            rows = [[c // g for c in r] for r in rows]
            den //= g
        if not rows:
            den = 1
        self.rows = rows
        self.den = den
        self.vars = tuple(vars)

    @classmethod
    def from_dict(cls, terms: Dict[Tuple[int, int], RatLike], vars=("S", "phi")) -> "BiPoly":
        num, den = _clear(terms.values())
        if not terms:
            return cls([], vars)
        dx = max(i for i, _ in terms) + 1
        dy = max(j for _, j in terms) + 1
        rows = [[0] * dy for _ in range(dx)]
        for (i, j), c in zip(terms.keys(), num):
            rows[i][j] += c
        return cls(rows, vars, den)

    def is_zero(self) -> bool:
        return not self.rows

    def degree(self, var: str) -> int:
        if not self.rows:
            return -1
        if var == self.vars[0]:
            return len(self.rows) - 1
        if var == self.vars[1]:
            return max(len(r) for r in self.rows) - 1
        raise KeyError(var)

    def coeff(self, i: int, j: int) -> Fraction:
        if i < len(self.rows) and j < len(self.rows[i]):
            return Fraction(self.rows[i][j], self.den)
        return Fraction(0)

    def terms(self) -> Dict[Tuple[int, int], Fraction]:
        return {
            (i, j): Fraction(c, self.den)
            for i, r in enumerate(self.rows)
            for j, c in enumerate(r)
            if c
        }

    def transpose(self) -> "BiPoly":
        if not self.rows:
            return BiPoly([], (self.vars[1], self.vars[0]))
        dy = max(len(r) for r in self.rows)
        cols = [[r[j] if j < len(r) else 0 for r in self.rows] for j in range(dy)]
        return BiPoly(cols, (self.vars[1], self.vars[0]), self.den)

    def _stride(self) -> int:
        return max((len(r) for r in self.rows), default=0)

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.rows == other.rows and self.den == other.den and (
            self.vars == other.vars or not self.rows
        )

    def __hash__(self):
        return hash((tuple(map(tuple, self.rows)), self.den))

    def __repr__(self):
        return f"BiPoly(vars={self.vars}, deg=({self.degree(self.vars[0])},{self.degree(self.vars[1])}), den={self.den})"

    def __add__(self, other: "BiPoly") -> "BiPoly":
        n = max(len(self.rows), len(other.rows))
        rows = []
        for i in range(n):
            a = zx.scale(self.rows[i], other.den) if i < len(self.rows) else []
            b = zx.scale(other.rows[i], self.den) if i < len(other.rows) else []
            rows.append(zx.add(a, b))
        return BiPoly(rows, self.vars, self.den * other.den)

    def __neg__(self) -> "BiPoly":
        return BiPoly([zx.neg(r) for r in self.rows], self.vars, self.den)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other) -> "BiPoly":
        if isinstance(other, (int, Fraction)):
            other = as_rat(other)
            return BiPoly(
                [zx.scale(r, other.numerator) for r in self.rows], self.vars, self.den * other.denominator
            )
        if not self.rows or not other.rows:
            return BiPoly([], self.vars)
        stride = self._stride() + other._stride() - 1
        prod = zx.mul(zx.flatten2(self.rows, stride), zx.flatten2(other.rows, stride))
        return BiPoly(zx.unflatten2(prod, stride), self.vars, self.den * other.den)

    __rmul__ = __mul__

    def divexact(self, other: "BiPoly") -> "BiPoly":
        """Exact quotient; raises ArithmeticError if other does not divide self."""
        if not other.rows:
            raise ZeroDivisionError("bivariate division by zero")
        if not self.rows:
            return BiPoly([], self.vars)
        stride = self._stride()
        q = zx.divexact(zx.flatten2(self.rows, stride), zx.flatten2(other.rows, stride))
        rows = zx.unflatten2(q, stride)
        # A quotient row spilling past the stride would mean inexact division.
        if any(len(r) > stride - other._stride() + 1 for r in rows):
            raise ArithmeticError("inexact bivariate division")
        out = BiPoly(rows, self.vars, 1)
        return out * Fraction(other.den, self.den)

    def eval_y(self, y: RatLike) -> Poly:
        """Substitute the second variable, giving a Poly in the first."""
        y = as_rat(y)
        vals = []
        for r in self.rows:
            n, d = zx.eval_frac(r, y.numerator, y.denominator)
            vals.append(Fraction(n, d))
        return Poly([v / self.den for v in vals], self.vars[0])

    def eval_x(self, x: RatLike) -> Poly:
        return self.transpose().eval_y(x)


class MPoly:
    """Sparse trivariate polynomial with integer coefficients and a common denominator."""

    __slots__ = ("terms", "den", "vars")

    def __init__(self, terms: Dict[Tuple[int, int, int], int], vars=("S", "T", "phi"), den: int = 1):
        t = {k: v for k, v in terms.items() if v}
        g = den
        for v in t.values():
            if g == 1:
                break
            g = gcd(g, v)
        if t and g > 1:
            t = {k: v // g for k, v in t.items()}
            den //= g
        self.terms = t
        self.den = den if t else 1
        self.vars = tuple(vars)

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.terms == other.terms and self.den == other.den

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.den))

    def __repr__(self):
        return f"MPoly({len(self.terms)} terms, vars={self.vars}, den={self.den})"

    def degree(self, var: str) -> int:
        k = self.vars.index(var)
        return max((m[k] for m in self.terms), default=-1)

    def __add__(self, other: "MPoly") -> "MPoly":
        out = {k: v * other.den for k, v in self.terms.items()}
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v * self.den
        return MPoly(out, self.vars, self.den * other.den)

    def __neg__(self):
        return MPoly({k: -v for k, v in self.terms.items()}, self.vars, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, int):
            return MPoly({k: v * other for k, v in self.terms.items()}, self.vars, self.den)
        out: Dict[Tuple[int, int, int], int] = {}
        for (a, b, c), u in self.terms.items():
            for (d, e, f), w in other.terms.items():
                k = (a + d, b + e, c + f)
                out[k] = out.get(k, 0) + u * w
        return MPoly(out, self.vars, self.den * other.den)

    __rmul__ = __mul__

    def _strides(self, other: "MPoly"):
        s2 = self.degree(self.vars[2]) + max(other.degree(self.vars[2]), 0) + 1
        s1 = self.degree(self.vars[1]) + max(other.degree(self.vars[1]), 0) + 1
        return s1, s2

    def _flat(self, s1: int, s2: int) -> List[int]:
        size = max(((a * s1 + b) * s2 + c for a, b, c in self.terms), default=-1) + 1
        out = [0] * size
        for (a, b, c), v in self.terms.items():
            out[(a * s1 + b) * s2 + c] = v
        return out

    @staticmethod
    def _unflat(a: Sequence[int], s1: int, s2: int) -> Dict[Tuple[int, int, int], int]:
        out = {}
        for idx, v in enumerate(a):
            if v:
                q, c = divmod(idx, s2)
                i, b = divmod(q, s1)
                out[(i, b, c)] = v
        return out

    def divexact(self, other: "MPoly") -> "MPoly":
        """Exact quotient by multivariate Kronecker substitution."""
        if not other.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.terms:
            return MPoly({}, self.vars)
        s1 = self.degree(self.vars[1]) + 1
        s2 = self.degree(self.vars[2]) + 1
        q = zx.divexact(self._flat(s1, s2), other._flat(s1, s2))
        terms = self._unflat(q, s1, s2)
        out = MPoly(terms, self.vars, 1)
        if out * other != MPoly(self.terms, self.vars, 1):
            raise ArithmeticError("inexact trivariate division")
        return _mscale(out, other.den, self.den)

    def substitute(self, var: str, value: RatLike) -> "MPoly":
        """Replace one variable by a rational constant."""
        k = self.vars.index(var)
        v = as_rat(value)
        deg = max(self.degree(var), 0)
        out: Dict[Tuple[int, int, int], int] = {}
        for m, c in self.terms.items():
            e = m[k]
            mm = list(m)
            mm[k] = 0
            mm = tuple(mm)
            out[mm] = out.get(mm, 0) + c * v.numerator ** e * v.denominator ** (deg - e)
        return MPoly(out, self.vars, self.den * v.denominator ** deg)

    def to_bipoly(self, x: str, y: str) -> BiPoly:
        """View as a BiPoly in (x, y); every other variable must be absent."""
        ix, iy = self.vars.index(x), self.vars.index(y)
        terms = {}
        for m, c in self.terms.items():
            if any(m[k] for k in range(3) if k not in (ix, iy)):
                raise ValueError("polynomial involves a third variable")
            terms[(m[ix], m[iy])] = Fraction(c, self.den)
        return BiPoly.from_dict(terms, (x, y)) if terms else BiPoly([], (x, y))


def _mscale(p: MPoly, num: int, den: int) -> MPoly:
    return MPoly({k: v * num for k, v in p.terms.items()}, p.vars, p.den * den)


# -- resultants ---------------------------------------------------------------

def resultant(p: Union[Poly, BiPoly], q: Union[Poly, BiPoly], eliminate: str) -> Union[Poly, Fraction]:
    """Res_{eliminate}(p, q) with the Sylvester sign convention.

    A ``Poly`` argument is treated as constant in the other variable.  The
    result is a ``Poly`` in the remaining variable (or a rational number when
    both inputs are univariate).  Denominators are cleared once per input and
    the scaling is undone at the end.
    """
    if _is_zero(p) or _is_zero(q):
        raise ValueError("resultant of a zero polynomial")
    if isinstance(p, Poly) and isinstance(q, Poly):
        if p.var != eliminate or q.var != eliminate:
            raise ValueError("both polynomials must be in the eliminated variable")
        r = subresultant_resultant(p.num, q.num, INT_RING)
        return Fraction(r, p.den ** q.degree * q.den ** p.degree)
    other = None
    cols = []
    dens = []
    degs = []
    for f in (p, q):
        if isinstance(f, Poly):
            if f.var != eliminate:
                raise ValueError(f"polynomial is not in {eliminate}")
            cols.append([[c] if c else [] for c in f.num])
        else:
            g = f if f.vars[0] == eliminate else f.transpose()
            if g.vars[0] != eliminate:
                raise ValueError(f"polynomial does not involve {eliminate}")
            if other is not None and other != g.vars[1]:
                raise ValueError("inconsistent second variables")
            other = g.vars[1]
            cols.append(g.rows)
            f = g
        dens.append(f.den)
        degs.append(len(cols[-1]) - 1)
    r = subresultant_resultant(cols[0], cols[1], ZX_RING)
    scale = dens[0] ** degs[1] * dens[1] ** degs[0]
    return Poly.from_ints(r, scale, other)


def _is_zero(f) -> bool:
    return f.is_zero()
