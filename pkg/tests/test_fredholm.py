from fractions import Fraction

import mpmath
import numpy as np
import pytest

from efp6v.efp_exact import EfpParams, efp_eval
from efp6v.exact_core import Poly
from efp6v.fredholm import (
    ContourGrid,
    E_by_quadrature,
    compute_E,
    kernel_data,
    nystrom_det,
    nystrom_matrix,
    reduced_kernel,
    trace_K_exact,
    trace_K_poly,
    trace_K_quadrature,
)

HALF = Fraction(1, 2)


@pytest.mark.parametrize("r,s,q", [(1, 1, 0), (3, 2, 1), (6, 3, 0), (4, 4, 1)])
def test_E_degree_and_quadrature(r, s, q):
    p = EfpParams(r, s, q)
    E = compute_E(p, Fraction(1, 3))
    assert E.degree == s + q and E.lead() == 1
    lam = mpmath.mpc("0.1", "0.05")
    assert abs(E_by_quadrature(p, Fraction(1, 3), lam) - E(lam)) < mpmath.mpf("1e-25")


def test_trace_frozen_polynomials():
    # F_{2,1,0} = 1 - alpha^2 gives Tr K = alpha^2
    assert trace_K_poly(EfpParams(2, 1, 0)) == Poly([0, 0, 1])
    # checked against the 64-node trapezoid value 0.716049382716... = 58/81 at alpha = 1/3
    assert trace_K_poly(EfpParams(3, 2, 1)) == Poly([0, 0, 18, -52, 60, -24])
    assert trace_K_exact(EfpParams(3, 2, 1), Fraction(1, 3)) == Fraction(58, 81)


@pytest.mark.parametrize("r,s,q", [(1, 1, 0), (3, 2, 1), (5, 2, 0)])
def test_trace_quadrature(r, s, q):
    p = EfpParams(r, s, q)
    a = Fraction(1, 3)
    val = trace_K_quadrature(kernel_data(p, a), ContourGrid.default(a, 64), 256)
    exact = trace_K_exact(p, a)
    assert abs(val - mpmath.mpf(exact.numerator) / exact.denominator) < mpmath.mpf("1e-25")
    assert abs(val.imag) < mpmath.mpf("1e-25")


def test_trace_truncation():
    p = EfpParams(3, 2, 1)
    assert trace_K_exact(p, order=4) == Poly([0, 0, 18, -52])
    with pytest.raises(ValueError):
        trace_K_exact(p, order=1)


def test_leading_trace_term_matches_log_F():
    """-log F = Tr K + O((Tr K)^2)."""
    for r, s in [(4, 2), (6, 3)]:
        p = EfpParams(r, s, 0)
        a = Fraction(1, 16)
        F = efp_eval(p, a)
        t = mpmath.mpf(trace_K_exact(p, a).numerator) / trace_K_exact(p, a).denominator
        diff = abs(-mpmath.log(mpmath.mpf(F.numerator) / F.denominator) - t)
        assert diff <= t * t


def test_nystrom_float_path():
    p = EfpParams(3, 2, 0)
    kd = kernel_data(p, HALF)
    res = nystrom_det(kd, ContourGrid.default(HALF, 64), prec_bits=53)
    F = efp_eval(p, HALF)
    assert abs(res.value - float(F)) < 1e-10


def test_nystrom_high_precision():
    p = EfpParams(4, 2, 1)
    kd = kernel_data(p, HALF)
    res = nystrom_det(kd, ContourGrid.default(HALF, 128), prec_bits=256)
    F = efp_eval(p, HALF)
    assert abs(res.value - mpmath.mpf(F.numerator) / F.denominator) < mpmath.mpf("1e-30")
    assert res.radius < mpmath.mpf("1e-40")


def test_geometric_convergence():
    p = EfpParams(5, 2, 1)
    kd = kernel_data(p, HALF)
    F = efp_eval(p, HALF)
    exact = mpmath.mpf(F.numerator) / F.denominator
    errs = [abs(nystrom_det(kd, ContourGrid.default(HALF, m), 256).value - exact) for m in (16, 32, 64)]
    assert errs[1] < errs[0] * 1e-3 and errs[2] < errs[1] * 1e-3


def test_radius_robustness():
    p = EfpParams(6, 3, 0)
    kd = kernel_data(p, HALF)
    vals = [nystrom_det(kd, ContourGrid(HALF * k / 4, 256), 128).value for k in (1, 2, 3)]
    assert max(vals) - min(vals) < mpmath.mpf("1e-10")


def test_conjugation_invariance():
    p = EfpParams(4, 2, 0)
    kd = kernel_data(p, HALF)
    A = nystrom_matrix(kd, ContourGrid.default(HALF, 32), prec_bits=53)
    rng = np.random.default_rng(7)
    c = rng.uniform(0.5, 2, 32) * np.exp(2j * np.pi * rng.uniform(size=32))
    B = (c[:, None] * A) / c[None, :]
    eye = np.eye(32)
    assert abs(np.linalg.det(eye - A) - np.linalg.det(eye - B)) < 1e-12


def test_kernel_diagonal_is_derivative_limit():
    kd = kernel_data(EfpParams(3, 2, 0), HALF)
    lam = mpmath.mpc("0.1", "0.2")
    h = mpmath.mpf("1e-60")
    assert abs(reduced_kernel(kd, lam, lam) - reduced_kernel(kd, lam + h, lam)) < mpmath.mpf("1e-50")


def test_contour_validation():
    kd = kernel_data(EfpParams(2, 1, 0), Fraction(1, 4))
    with pytest.raises(ValueError):
        nystrom_det(kd, ContourGrid(Fraction(1, 2), 32))
    with pytest.raises(ValueError):
        nystrom_det(kd, ContourGrid(Fraction(1, 8), 4))
    with pytest.raises(ValueError):
        kernel_data(EfpParams(2, 1, 0), Fraction(1))
