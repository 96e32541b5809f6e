from fractions import Fraction

import mpmath
import pytest
from grids import SADDLE_GRID

from efp6v.efp_exact import EfpParams
from efp6v.fredholm import trace_K_exact
from efp6v.saddle import (
    S2_at_saddle,
    action_S,
    action_S_derivative,
    bhat_consistency,
    saddle_data,
    saddle_points,
    trK_saddle,
)

A, V = Fraction(1, 16), Fraction(1, 2)


@pytest.mark.parametrize("alpha,v", SADDLE_GRID[::3])
def test_saddle_point_invariants(alpha, v):
    nm, npl = saddle_points(alpha, v)
    a = mpmath.mpf(alpha.numerator) / alpha.denominator
    assert npl < -1 / mpmath.sqrt(a) < nm < 0
    assert abs(nm * npl * a - 1) < 1e-140
    assert abs(action_S_derivative(nm, alpha, v, 1)) < 1e-140
    assert abs(action_S_derivative(npl, alpha, v, 1)) < 1e-140
    total = action_S(nm, alpha, v) + action_S(npl, alpha, v)
    assert abs(total + (1 - v) / v * mpmath.log(a)) < 1e-140
    assert abs(S2_at_saddle(nm, v) - action_S_derivative(nm, alpha, v, 2)) < 1e-140


@pytest.mark.parametrize("k", range(1, 7))
def test_action_derivatives_against_numeric(k):
    nu = mpmath.mpf("-0.7")
    numeric = mpmath.diff(lambda x: action_S(x, A, V), nu, k)
    assert abs(numeric - action_S_derivative(nu, A, V, k)) < mpmath.mpf("1e-40")


def test_rate_negative():
    d = saddle_data(A, V)
    assert d.rate < 0 and d.S > 0


@pytest.mark.parametrize("alpha,v", SADDLE_GRID)
def test_bhat_consistency(alpha, v):
    assert all(abs(x) < mpmath.mpf("1e-100") for x in bhat_consistency(alpha, v))


def test_saddle_approximation_improves_with_s():
    rel = []
    for s in (4, 8, 16):
        t = trace_K_exact(EfpParams(2 * s, s, 0), A)
        rel.append(abs(trK_saddle(A, V, s) / (mpmath.mpf(t.numerator) / t.denominator) - 1))
    assert rel[0] > rel[1] > rel[2]


def test_regime_guard():
    with pytest.raises(ValueError):
        saddle_points(Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(ValueError):
        trK_saddle(A, V, 4, order=3)
