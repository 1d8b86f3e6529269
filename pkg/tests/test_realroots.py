import random
from fractions import Fraction
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, strategies as st

from chebknots.diagram import critical_poly
from chebknots.exactpoly import Curve, Poly, cheb_Q, p_on_curve
from chebknots.exactpoly import zx
from chebknots.realroots import (
    AlgebraicNumber,
    IsolInterval,
    TieError,
    coprime_squarefree_basis,
    count_real_roots,
    image_polynomial,
    isolate,
    order_by_image,
    real_roots,
    real_roots_of_product,
    sample_between,
    sign_at,
)
from chebknots.twobridge import cf_eval


def from_roots(rats, quads=()):
    """Integer polynomial with the given rational roots times irreducible x^2 + c factors."""
    p = [1]
    for r in rats:
        r = Fraction(r)
        p = zx.mul(p, [-r.numerator, r.denominator])
    for c in quads:
        p = zx.mul(p, [c, 0, 1])
    return p


def certified(p, iv: IsolInterval) -> bool:
    if iv.is_point:
        return Poly(p, "x")(iv.lo) == 0
    a, b = Poly(p, "x")(iv.lo), Poly(p, "x")(iv.hi)
    return a * b < 0 or a == 0 or b == 0


P5 = [-1, 0, 12, 0, -16]


class TestIsolate:
    def test_p5_has_four_roots(self):
        assert len(isolate(P5)) == 4

    def test_no_real_roots(self):
        assert isolate([1, 0, 1]) == []
        assert count_real_roots(zx.power([1, 0, 1], 3)) == 0

    def test_r357(self):
        R = critical_poly(3, 5, 7).R
        assert len(isolate(R)) == 12
        assert count_real_roots(R) == 12

    @given(st.lists(st.fractions(max_denominator=12).filter(lambda x: abs(x) < 30), max_size=10),
           st.lists(st.integers(1, 40), max_size=3))
    def test_known_roots(self, rats, quads):
        p = from_roots(rats, quads)
        ivs = isolate(p)
        assert len(ivs) == len(set(rats))
        sf = zx.squarefree_part(p)
        for iv, r in zip(ivs, sorted(set(rats))):
            assert iv.contains(r)
            assert certified(sf, iv)

    def test_random_polynomials_against_sturm(self):
        rng = random.Random(20240611)
        for _ in range(200):
            deg = rng.randint(1, 60)
            p = zx.trim([rng.randint(-1000, 1000) for _ in range(deg + 1)])
            if len(p) < 2:
                continue
            ivs = isolate(p)
            assert len(ivs) == count_real_roots(p)
            sf = zx.squarefree_part(p)
            assert all(certified(sf, iv) for iv in ivs)
            assert all(ivs[i].hi <= ivs[i + 1].lo for i in range(len(ivs) - 1))

    def test_roots_at_dyadic_midpoints(self):
        # roots sitting exactly where bisection lands
        p = from_roots([0, Fraction(1, 2), Fraction(-1, 4), 1, 3])
        ivs = isolate(p)
        assert len(ivs) == 5
        assert all(certified(p, iv) for iv in ivs)

    def test_root_set_of_R_is_symmetric(self):
        for abc in [(3, 5, 7), (4, 5, 7), (3, 4, 6)]:
            R = critical_poly(*abc).R.integer_coeffs()
            # R(-phi) = +-R(phi)
            assert all(c == 0 for c in R[1::2]) or all(c == 0 for c in R[0::2])
            roots = real_roots(R)
            for r, m in zip(roots, reversed(roots)):
                assert m.cmp_rational(-r.lo) * m.cmp_rational(-r.hi) <= 0


class TestSturm:
    def test_interval_counts(self):
        p = from_roots([-2, 1, Fraction(3, 2), 5])
        assert count_real_roots(p, 0, 2) == 2
        assert count_real_roots(p, -2, 1) == 1  # half-open (lo, hi]
        assert count_real_roots(p) == 4


class TestSampleBetween:
    def test_empty(self):
        assert sample_between([]) == [Fraction(0)]

    def test_r357_samples(self):
        roots = real_roots(critical_poly(3, 5, 7).R)
        samples = sample_between(roots)
        assert len(samples) == 13
        half = [Fraction(x) for x in ("0", "1/15", "1/5", "1/4", "1/2", "2/3", "1")]
        assert samples == [-x for x in reversed(half[1:])] + half

    def test_middle_gap(self):
        p = zx.mul([-1, 2], from_roots([Fraction(27, 10)]))  # roots 1/2, 27/10
        samples = sample_between(real_roots(p))
        assert samples[1] == 1

    @given(st.lists(st.fractions(max_denominator=9).filter(lambda x: abs(x) < 10), min_size=1, max_size=8),
           st.lists(st.integers(-5, 30), max_size=3))
    def test_one_root_between_consecutive_samples(self, rats, quads):
        p = from_roots(rats, quads)
        roots = real_roots(p)
        samples = sample_between(roots)
        assert len(samples) == len(roots) + 1
        for x in samples:
            assert Poly(p, "x")(x) != 0
        for lo, hi in zip(samples, samples[1:]):
            assert count_real_roots(p, lo, hi) == 1


class TestSignAt:
    def test_defining_polynomial_vanishes(self):
        for r in real_roots(P5):
            assert sign_at(P5, r) == 0

    def test_constant(self):
        for r in real_roots(P5):
            assert sign_at([1], r) == 1

    def test_against_high_precision(self):
        rng = random.Random(7)
        checked = 0
        for _ in range(60):
            p = zx.trim([rng.randint(-30, 30) for _ in range(rng.randint(2, 12))])
            q = zx.trim([rng.randint(-30, 30) for _ in range(rng.randint(1, 12))])
            if len(p) < 2:
                continue
            with mpmath.workprec(300):
                numeric = [x.real for x in mpmath.polyroots(list(reversed(p)), maxsteps=500, extraprec=600)
                           if abs(x.imag) < mpmath.mpf(2) ** -200]
                for r in real_roots(p):
                    lo = mpmath.mpf(r.lo.numerator) / r.lo.denominator
                    hi = mpmath.mpf(r.hi.numerator) / r.hi.denominator
                    inside = [x for x in numeric if lo <= x <= hi]
                    v = mpmath.polyval(list(reversed(q)), inside[0]) if q else mpmath.mpf(0)
                    if abs(v) < mpmath.mpf(2) ** -150:
                        continue  # too close to call numerically
                    assert sign_at(q, r) == (1 if v > 0 else -1)
                    checked += 1
        assert checked > 50

    def test_shared_root_detected(self):
        p = from_roots([], [-2])           # +-sqrt 2
        q = zx.mul([-2, 0, 1], [3, 1])    # shares sqrt 2
        assert [sign_at(q, r) for r in real_roots(p)] == [0, 0]

    def test_q7_times_p2_gives_figure_eight_word(self):
        # crossing signs of C(3,5,7,0) assembled by hand from D = Q_7 * P_2
        q = cheb_Q(7, Curve.A3)
        q0 = zx.trim([int(q.coeff(i, 0)) for i in range(q.degree("S") + 1)])
        d = zx.mul(q0, p_on_curve(2, Curve.A3).integer_coeffs())
        roots = real_roots(P5)
        order = order_by_image(roots, Poly([0, 3, 0, -4], "S")).permutation
        signs = [sign_at(d, roots[i]) for i in order]
        word = [(-1) ** 5 * (-1) ** i * s for i, s in enumerate(signs)]
        assert cf_eval(word) == Fraction(5, 3)


class TestOrderByImage:
    def test_identity(self):
        roots = real_roots(from_roots([3, -1, 2], [-5]))
        perm = order_by_image(roots, Poly([0, 1], "x")).permutation
        assert perm == list(range(len(roots)))

    def test_reversal(self):
        roots = real_roots(from_roots([3, -1, 2]))
        assert order_by_image(roots, Poly([0, -1], "x")).permutation == [2, 1, 0]

    def test_b_family_ties(self):
        p = p_on_curve(5, Curve.B4).primitive()
        roots = real_roots(p)
        res = order_by_image(roots, Poly([-1, 0, 4, 0, -2], "S"), allow_ties=True)
        assert res.has_ties
        assert all(len(g) == 2 for g in res.groups)
        with pytest.raises(TieError):
            order_by_image(roots, Poly([-1, 0, 4, 0, -2], "S"))

    def test_image_polynomial(self):
        # images of +-1, 2 under x^2 are roots of (y - 1)(y - 4)
        img = image_polynomial(from_roots([1, -1, 2]), [0, 0, 1])
        assert count_real_roots(img) == 2
        assert Poly(img, "y")(1) == 0 and Poly(img, "y")(4) == 0


class TestAlgebraicNumber:
    def test_refine_and_compare(self):
        (r,) = [x for x in real_roots([-2, 0, 1]) if x.lo >= 0]
        r = r.refine(Fraction(1, 10 ** 6))
        assert r.hi - r.lo <= Fraction(1, 10 ** 6)
        assert r.cmp_rational(Fraction(141421, 100000)) < 0
        assert r.cmp_rational(Fraction(141422, 100000)) > 0
        assert abs(float(r) - 2 ** 0.5) < 1e-12

    def test_rational(self):
        r = AlgebraicNumber.rational(Fraction(3, 7))
        assert r.is_rational and r.cmp_rational(Fraction(3, 7)) == 0


class TestProducts:
    def test_coprime_certificate(self):
        assert zx.coprime_certificate([1, 0, 1], [-2, 0, 1])
        assert not zx.coprime_certificate(from_roots([1, 2]), from_roots([2, 3]))

    def test_gcd_still_exact_when_certificate_fails(self):
        assert zx.gcd_poly(from_roots([1, 2, 5]), from_roots([2, 5, 7])) == from_roots([2, 5])

    def test_basis_removes_shared_and_repeated_factors(self):
        basis = coprime_squarefree_basis([from_roots([1, 1, 2]), from_roots([2, 3]), from_roots([1])])
        assert sorted(len(f) - 1 for f in basis) == [1, 2]

    @given(st.lists(st.lists(st.fractions(max_denominator=6).filter(lambda x: abs(x) < 8), min_size=1, max_size=4),
                    min_size=1, max_size=4),
           st.lists(st.integers(-6, 20), max_size=2))
    def test_matches_expanded_product(self, root_lists, quads):
        factors = [from_roots(r) for r in root_lists] + [from_roots([], [c]) for c in quads]
        prod = [1]
        for f in factors:
            prod = zx.mul(prod, f)
        merged = real_roots_of_product(factors)
        assert len(merged) == count_real_roots(prod)
        assert all(x.hi <= y.lo for x, y in zip(merged, merged[1:]))
        for r in merged:
            assert sign_at(prod, r) == 0
        want = sorted({F(x) for rs in root_lists for x in rs})
        rational = [r for r in merged if r.is_rational or any(r.cmp_rational(x) == 0 for x in want)]
        assert len(rational) >= len(want)

    def test_r479_factorwise(self):
        crit = critical_poly(4, 7, 9)
        merged = real_roots_of_product([f.poly for f in crit.factors])
        full = real_roots(crit.R)
        assert len(merged) == len(full) == 48
        assert sample_between(merged) == sample_between(full)
