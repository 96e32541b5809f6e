from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from efp6v.critical import (
    HahnData,
    barnes_logG_asym,
    barnes_logG_exact,
    crs_constant,
    hahn_eval,
    hahn_norm,
    hahn_ratio,
    log_crs_asym,
    log_crs_leading,
    script_b,
    script_b_closed,
    taylor_alpha0_efp,
    taylor_alpha1_coeffs,
    taylor_alpha1_efp,
    zeta_prime_minus1,
)
from efp6v.efp_exact import EfpParams

# Leading (1-alpha)^{s^2} coefficients read off the recentred exact polynomials.
RECENTRED_LEADING = {(3, 2): 6, (4, 2): 20, (5, 3): 175}


@pytest.mark.parametrize("r", range(1, 9))
def test_hahn_orthogonality(r):
    for n in range(r):
        for m in range(n + 1):
            ip = sum(hahn_eval(n, Fraction(x), r) * hahn_eval(m, Fraction(x), r) for x in range(r))
            assert ip == (hahn_norm(n, r) if n == m else 0)


@given(st.integers(2, 20).flatmap(lambda r: st.tuples(st.just(r), st.integers(1, r - 1))))
def test_hahn_ratio_closed_form(rn):
    r, n = rn
    d = HahnData(r, n)
    assert d.ratio == hahn_norm(n, r) / hahn_norm(n - 1, r) == hahn_ratio(n, r)


@pytest.mark.parametrize("rs,value", sorted(RECENTRED_LEADING.items()))
def test_crs_frozen(rs, value):
    assert crs_constant(*rs) == value


def test_crs_square_block_is_one():
    assert all(crs_constant(s, s) == 1 for s in range(1, 12))


@pytest.mark.parametrize("r,s", [(6, 2), (7, 4), (8, 5)])
def test_crs_matches_recentred_polynomial(r, s):
    from efp6v.efp_exact import efp_polynomial
    from efp6v.exact_core import poly_recenter

    t = poly_recenter(efp_polynomial(EfpParams(r, s, 0)), 1)
    assert t.coeff(s * s) * (-1) ** (s * s) == crs_constant(r, s)
    assert all(t.coeff(k) == 0 for k in range(s * s))


@pytest.mark.parametrize("r,s", [(3, 1), (5, 2), (6, 6)])
def test_alpha1_checks_pass(r, s):
    p = EfpParams(r, s, 0)
    c1, _ = taylor_alpha1_coeffs(p)
    assert c1 == Fraction(-s * (r - 1), 2)
    assert taylor_alpha1_efp(p)[1] == Fraction(-s * (r - s), 2)


def test_alpha1_rejects_q():
    with pytest.raises(ValueError):
        taylor_alpha1_coeffs(EfpParams(3, 1, 1))


def test_alpha0_known_case():
    # F_{2,1,0} = 1 - alpha^2
    assert taylor_alpha0_efp(EfpParams(2, 1, 0)) == (2, 1)


def test_zeta_prime_minus1_against_glaisher():
    frozen = mpmath.mpf("-0.165421143700450929213919660242780642764")
    assert abs(zeta_prime_minus1() - frozen) < mpmath.mpf("1e-38")
    assert abs(zeta_prime_minus1() - (mpmath.mpf(1) / 12 - mpmath.log(mpmath.glaisher))) < mpmath.mpf("1e-150")


@pytest.mark.parametrize("k", [20, 40, 80])
def test_barnes_expansion(k):
    exact = barnes_logG_exact(k)
    assert abs(exact - mpmath.log(mpmath.barnesg(k + 1))) < mpmath.mpf("1e-140")
    err = abs(exact - barnes_logG_asym(k, 2))
    assert err * k ** 6 < mpmath.mpf("0.01")


@pytest.mark.parametrize("v", [Fraction(1, 5), Fraction(1, 2), Fraction(4, 5)])
def test_script_b_general_matches_closed(v):
    for k in (1, 2):
        assert abs(script_b(k, v) - script_b_closed(k, v)) < mpmath.mpf("1e-140")


def test_log_crs_leading_frozen():
    # independent evaluation: log 2 - (9/2) log(3/2) + (1/2) log 2 at v = 1/2
    assert abs(log_crs_leading(Fraction(1, 2)) - mpmath.mpf("-0.784872215646821754775210837402")) < 1e-29


def test_log_crs_asym_improves_with_order():
    s, v = 16, Fraction(1, 2)
    exact = mpmath.log(crs_constant(32, 16))
    errs = [abs(exact - log_crs_asym(s, v, n)) for n in (0, 1, 2)]
    assert errs[0] > errs[1] > errs[2]
