from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from efp6v.exact_core import (
    Poly,
    RatFun,
    as_fraction,
    bernoulli,
    binomial,
    det_int_poly,
    det_rational,
    poly_gcd,
    poly_recenter,
    precision,
    ratfun_equal_zero,
    to_mpf,
)

fractions = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 100)
polys = st.lists(st.fractions(max_denominator=20), max_size=6).map(Poly)


class TestScalars:
    def test_as_fraction_accepts_rational_text(self):
        assert as_fraction("3/4") == Fraction(3, 4)
        assert as_fraction(2) == 2

    @pytest.mark.parametrize("bad", ["0.5", 0.5, "1e-3"])
    def test_as_fraction_rejects_decimals(self, bad):
        with pytest.raises((ValueError, TypeError)):
            as_fraction(bad)

    def test_binomial_edges(self):
        assert binomial(5, 2) == 10
        assert binomial(3, 5) == 0
        assert binomial(4, -1) == 0

    def test_bernoulli_known_values(self):
        assert [bernoulli(n) for n in (0, 1, 2, 4, 6, 12)] == [
            1, Fraction(-1, 2), Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-691, 2730)
        ]
        assert all(bernoulli(n) == 0 for n in range(3, 41, 2))

    @given(st.integers(1, 40))
    def test_bernoulli_recurrence(self, n):
        assert sum(binomial(n + 1, k) * bernoulli(k) for k in range(n + 1)) == 0

    def test_precision_context_restores(self):
        before = mpmath.mp.prec
        with precision(200):
            assert mpmath.mp.prec == 200
        assert mpmath.mp.prec == before
        with pytest.raises(ValueError):
            with precision(20):
                pass

    def test_to_mpf_is_exact_ratio(self):
        assert to_mpf(Fraction(1, 3)) * 3 == 1


class TestPoly:
    def test_canonical_trailing_zeros(self):
        assert Poly([1, 2, 0, 0]) == Poly([1, 2])
        assert Poly([0, 0]).is_zero() and Poly().degree == -1

    def test_divmod_and_exact_div(self):
        a = Poly([-1, 0, 1])
        q, r = a.divmod(Poly([-1, 1]))
        assert q == Poly([1, 1]) and r.is_zero()
        with pytest.raises(ArithmeticError):
            Poly([1, 0, 1]).exact_div(Poly([-1, 1]))

    def test_evaluation_types(self):
        p = Poly([1, Fraction(1, 2), 3])
        assert p(Fraction(2)) == 14
        assert p(mpmath.mpf(2)) == 14

    @given(polys, polys)
    def test_add_sub_round_trip(self, a, b):
        assert (a + b) - b == a

    @given(polys, polys.filter(lambda p: not p.is_zero()))
    def test_division_identity(self, a, b):
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.degree < b.degree

    @given(polys, fractions)
    def test_recenter_round_trip(self, p, c):
        assert poly_recenter(poly_recenter(p, c), -c) == p

    @given(polys, fractions, fractions)
    def test_recenter_evaluates_shifted(self, p, c, t):
        assert poly_recenter(p, c)(t) == p(t + c)

    def test_gcd_is_monic(self):
        a = Poly([-1, 0, 1]) * 3
        b = Poly([1, 2, 1]) * 5
        assert poly_gcd(a, b) == Poly([1, 1])


class TestRatFun:
    def test_reduces_to_lowest_terms(self):
        f = RatFun(Poly([-1, 0, 1]), Poly([-2, 2]))
        assert f.num == Poly([Fraction(1, 2), Fraction(1, 2)]) and f.den == Poly([1])

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            RatFun(Poly([1]), Poly())

    @given(polys, polys.filter(lambda p: not p.is_zero()))
    def test_quotient_rule(self, n, d):
        f = RatFun(n, d)
        assert f.deriv() == RatFun(n.deriv() * d - n * d.deriv(), d * d)

    def test_equal_zero(self):
        f = RatFun(Poly([1, 1]), Poly([2, 1]))
        assert ratfun_equal_zero(f - f)
        assert not ratfun_equal_zero(f)


class TestDeterminants:
    def test_int_poly_det_against_expansion(self):
        # [[1, x], [x, 1]] -> 1 - x^2
        assert det_int_poly([[[1], [0, 1]], [[0, 1], [1]]]) == Poly([1, 0, -1])

    @given(st.lists(st.lists(st.fractions(max_denominator=9), min_size=3, max_size=3), min_size=3, max_size=3))
    def test_rational_det_matches_cofactor(self, m):
        cof = (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
        assert det_rational(m) == cof
