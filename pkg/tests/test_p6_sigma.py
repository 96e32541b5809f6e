import dataclasses
from fractions import Fraction

import pytest

from efp6v.efp_exact import EfpParams, efp_polynomial
from efp6v.exact_core import Poly, RatFun
from efp6v.p6_sigma import nu_params, ratfun_equal_zero, sigma_form_residual, sigma_from_efp


def _sigma(r, s, q):
    p = EfpParams(r, s, q)
    return sigma_from_efp(efp_polynomial(p), p)


def test_nu_parameters():
    nu = nu_params(EfpParams(3, 2, 1))
    assert nu.nus == (-3, -Fraction(0), -3, 1)
    assert (nu.theta0, nu.theta1, nu.theta_alpha, nu.theta_inf) == (2, 4, -3, -3)


def test_sigma_closed_form_small_case():
    sd = _sigma(2, 1, 0)
    expected = RatFun(Poly([1, Fraction(-5, 4), Fraction(-1, 4)]), Poly([1, 1]))
    assert sd.sigma == expected


@pytest.mark.parametrize("r,s,q", [(1, 1, 0), (2, 1, 0), (3, 2, 1), (4, 4, 0), (5, 2, 2), (7, 3, 0)])
def test_residual_vanishes(r, s, q):
    assert ratfun_equal_zero(sigma_form_residual(_sigma(r, s, q)))


@pytest.mark.parametrize("k", range(4))
def test_perturbed_nu_breaks_identity(k):
    sd = _sigma(2, 1, 0)
    field = f"nu{k + 1}"
    bumped = dataclasses.replace(sd.nu, **{field: getattr(sd.nu, field) + 1})
    assert not ratfun_equal_zero(sigma_form_residual(dataclasses.replace(sd, nu=bumped)))


def test_perturbed_sigma_breaks_identity():
    sd = _sigma(3, 2, 0)
    shifted = dataclasses.replace(sd, sigma=sd.sigma + 1)
    assert not ratfun_equal_zero(sigma_form_residual(shifted))


def test_zero_efp_rejected():
    with pytest.raises(ValueError):
        sigma_from_efp(Poly(), EfpParams(1, 2, 0))
