"""F_{r,s,q} as a Fredholm determinant, evaluated by Nystrom quadrature.

The integrable kernel is conjugated by the square-root factor it carries, so
the operator actually discretised is

    K(lam, mu) = (E(lam) - E(mu)) / (lam - mu) * w(mu) / (2 pi i)

with w(mu) = (mu - alpha)^r / ((mu - 1)^(r+q) mu^s) and E the polynomial part
at infinity of (nu - 1)^(r+q) nu^s / (nu - alpha)^r.  Everything here is
single valued, so a trapezoid rule on a small circle around 0 converges
geometrically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import flint
import mpmath
import numpy as np

from .efp_exact import EfpParams
from .exact_core import DEFAULT_PRECISION_BITS, Poly, Rational, as_fraction

__all__ = [
    "KernelData",
    "ContourGrid",
    "NystromResult",
    "compute_E",
    "kernel_data",
    "reduced_kernel",
    "nystrom_matrix",
    "nystrom_det",
    "trace_K_exact",
    "trace_K_poly",
    "trace_K_quadrature",
    "E_by_quadrature",
]


def compute_E(p: EfpParams, alpha: Rational) -> Poly:
    """Polynomial part at infinity of (nu-1)^(r+q) nu^s / (nu-alpha)^r, in lambda."""
    a = as_fraction(alpha)
    numer = Poly([-1, 1]) ** (p.r + p.q) * Poly([0] * p.s + [1])
    return numer // (Poly([-a, 1]) ** p.r)


@dataclass(frozen=True)
class KernelData:
    params: EfpParams
    alpha: Fraction
    E: Poly

    @property
    def dE(self) -> Poly:
        return self.E.deriv()

    def weight(self, mu):
        """w(mu) for complex mu of any numeric type supporting arithmetic."""
        p, a = self.params, _lift(self.alpha, mu)
        return (mu - a) ** p.r / ((mu - 1) ** (p.r + p.q) * mu ** p.s)


def kernel_data(p: EfpParams, alpha: Rational) -> KernelData:
    a = as_fraction(alpha)
    if not 0 < a < 1:
        raise ValueError("need 0 < alpha < 1")
    return KernelData(p, a, compute_E(p, a))


@dataclass(frozen=True)
class ContourGrid:
    """m equally spaced nodes on |lam| = rho; trapezoid weights 2 pi i lam / m."""

    rho: Fraction
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("need at least one node")
        if not 0 < self.rho < 1:
            raise ValueError("contour radius must lie in (0, 1)")

    @classmethod
    def default(cls, alpha: Rational, m: int) -> "ContourGrid":
        return cls(as_fraction(alpha) / 2, m)


def _lift(c: Fraction, like):
    if isinstance(like, (flint.acb, flint.arb)):
        return flint.acb(c.numerator) / c.denominator
    if isinstance(like, (mpmath.mpc, mpmath.mpf)):
        return mpmath.mpf(c.numerator) / c.denominator
    return c.numerator / c.denominator


def _horner(poly: Poly, x):
    acc = x * 0
    for c in reversed(poly.coeffs):
        acc = acc * x + _lift(c, x)
    return acc


def reduced_kernel(kd: KernelData, lam, mu):
    """Conjugated kernel value; the diagonal uses E'(lam)."""
    if lam == mu:
        dd = _horner(kd.dE, lam)
    else:
        dd = (_horner(kd.E, lam) - _horner(kd.E, mu)) / (lam - mu)
    two_pi_i = 2j * math.pi if isinstance(mu, complex) else (
        2 * flint.acb.pi() * flint.acb(0, 1) if isinstance(mu, flint.acb) else 2j * mpmath.pi
    )
    return dd * kd.weight(mu) / two_pi_i


# Nystrom ---------------------------------------------------------------------

def _dd_factors(E: Poly):
    """C with (E(x) - E(y))/(x - y) = sum_ab C[a][b] x^a y^b, C[a][b] = e_{a+b+1}."""
    d = max(E.degree, 0)
    return [[E.coeff(a + b + 1) for b in range(d)] for a in range(d)]


def nystrom_matrix(kd: KernelData, g: ContourGrid, prec_bits: int = DEFAULT_PRECISION_BITS):
    """A_jk = K(lam_j, lam_k) * 2 pi i lam_k / m, as numpy (<= 53 bits) or flint acb_mat.

    The divided difference of E is assembled as V C V^T (V the node
    Vandermonde matrix), which equals the entrywise quotient exactly and
    gives E' on the diagonal without a special case.
    """
    m = g.m
    C = _dd_factors(kd.E)
    d = len(C)
    pr, q, s = kd.params.r, kd.params.q, kd.params.s
    if prec_bits <= 53:
        nodes = float(g.rho) * np.exp(2j * np.pi * np.arange(m) / m)
        a = float(kd.alpha)
        scale = (nodes - a) ** pr / ((nodes - 1) ** (pr + q) * nodes ** s) * nodes / m
        if d == 0:
            return np.zeros((m, m), dtype=complex)
        V = nodes[:, None] ** np.arange(d)[None, :]
        Cf = np.array([[float(c) for c in row] for row in C])
        return (V @ Cf @ V.T) * scale[None, :]
    old = flint.ctx.prec
    flint.ctx.prec = prec_bits
    try:
        if d == 0:
            return flint.acb_mat(m, m)
        rho = flint.acb(g.rho.numerator) / g.rho.denominator
        nodes = [rho * flint.acb(flint.fmpq(2 * j, m)).exp_pi_i() for j in range(m)]
        V = flint.acb_mat([[x ** a for a in range(d)] for x in nodes])
        Cm = flint.acb_mat([[flint.acb(flint.fmpq(c.numerator, c.denominator)) for c in row] for row in C])
        scaled_V = flint.acb_mat([[x ** a * kd.weight(x) * x / m for a in range(d)] for x in nodes])
        return V * Cm * scaled_V.transpose()
    finally:
        flint.ctx.prec = old


def _arb_to_mpf(x, prec_bits: int) -> mpmath.mpf:
    man, exp = x.man_exp()
    with mpmath.workprec(max(prec_bits, int(man).bit_length() + 2)):
        return +mpmath.mpf((int(man), int(exp)))


@dataclass(frozen=True)
class NystromResult:
    value: mpmath.mpf
    imag: mpmath.mpf
    m: int
    rho: Fraction
    prec_bits: int
    radius: mpmath.mpf  # ball radius of the determinant (0 for the float path)


def nystrom_det(
    kd: KernelData,
    g: ContourGrid,
    prec_bits: int = DEFAULT_PRECISION_BITS,
    imag_tol=None,
) -> NystromResult:
    """det(I - A) for the Nystrom matrix of the conjugated kernel.

    The determinant must come out real; an imaginary part above ``imag_tol``
    (default 1e-20, or 1e-8 on the float path) raises ValueError because it
    signals a contour or parameter mistake.
    """
    if g.m < 8:
        raise ValueError("need m >= 8 nodes")
    if not g.rho < min(kd.alpha, 1):
        raise ValueError("contour must keep alpha and 1 outside")
    A = nystrom_matrix(kd, g, prec_bits)
    if prec_bits <= 53:
        d = complex(np.linalg.det(np.eye(g.m) - A))
        value, imag, rad = mpmath.mpf(d.real), mpmath.mpf(d.imag), mpmath.mpf(0)
        tol = 1e-8 if imag_tol is None else imag_tol
    else:
        old = flint.ctx.prec
        flint.ctx.prec = prec_bits
        try:
            eye = flint.acb_mat(g.m, g.m, [1 if j == k else 0 for j in range(g.m) for k in range(g.m)])
            d = (eye - A).det()
            value = _arb_to_mpf(d.real.mid(), prec_bits)
            imag = _arb_to_mpf(d.imag.mid(), prec_bits)
            rad = max(_arb_to_mpf(d.real.rad(), 64), _arb_to_mpf(d.imag.rad(), 64))
        finally:
            flint.ctx.prec = old
        tol = mpmath.mpf("1e-20") if imag_tol is None else imag_tol
    if abs(imag) > tol:
        raise ValueError(f"Nystrom determinant has imaginary part {mpmath.nstr(imag, 5)}; check contour radius")
    return NystromResult(value, imag, g.m, g.rho, prec_bits, rad)


# traces ------------------------------------------------------------------------

def _series_in_alpha(n_terms: int, top: int, bottom: int) -> list[Poly]:
    """Coefficients g_n(alpha) of (1-x)^top (1-alpha x)^(-bottom), n < n_terms."""

    def rising(j):  # coefficient of (alpha x)^j in (1 - alpha x)^(-bottom)
        return 1 if j == 0 else (math.comb(bottom - 1 + j, j) if bottom else 0)

    out = []
    for n in range(n_terms):
        coeffs = [0] * (n + 1)
        for i in range(min(n, top) + 1):
            coeffs[n - i] += (-1) ** i * math.comb(top, i) * rising(n - i)
        out.append(Poly(coeffs))
    return out


def trace_K_poly(p: EfpParams) -> Poly:
    """Tr K as an exact polynomial in alpha (finite, no truncation needed)."""
    r, s, q = p.r, p.s, p.q
    if s == 0:
        return Poly()
    g1 = _series_in_alpha(s, r, r + q)
    g2 = _series_in_alpha(s + q, r + q, r)
    total = Poly()
    for k in range(s):
        total = total + Poly([0] * k + [k + 1]) * g1[s - 1 - k] * g2[s + q - 1 - k]
    sign = -1 if q % 2 else 1
    return Poly([0] * (r - s + 1) + [sign]) * total


def trace_K_exact(p: EfpParams, alpha: Rational | None = None, order: int | None = None):
    """Exact Tr K: the polynomial in alpha, its truncation below alpha^order, or its value."""
    poly = trace_K_poly(p)
    if order is not None:
        if order < p.r - p.s + 1:
            raise ValueError(f"order {order} is below the leading power {p.r - p.s + 1}")
        poly = Poly(poly.coeffs[:order])
    if alpha is None:
        return poly
    return poly(as_fraction(alpha))


def trace_K_quadrature(kd: KernelData, g: ContourGrid, prec_bits: int = DEFAULT_PRECISION_BITS):
    """Tr K from the trapezoid sum of the diagonal E'(lam) w(lam) lam / m."""
    with mpmath.workprec(prec_bits):
        rho = mpmath.mpf(g.rho.numerator) / g.rho.denominator
        total = mpmath.mpc(0)
        for j in range(g.m):
            lam = rho * mpmath.expjpi(mpmath.mpf(2 * j) / g.m)
            total += _horner(kd.dE, lam) * kd.weight(lam) * lam
        return total / g.m


def E_by_quadrature(p: EfpParams, alpha: Rational, lam, radius=10, m: int = 512):
    """E(lam) from the contour integral over a large circle (trapezoid rule)."""
    a = mpmath.mpf(as_fraction(alpha).numerator) / as_fraction(alpha).denominator
    R = mpmath.mpf(radius)
    total = mpmath.mpc(0)
    for j in range(m):
        nu = R * mpmath.expjpi(mpmath.mpf(2 * j) / m)
        g = (nu - 1) ** (p.r + p.q) * nu ** p.s / (nu - a) ** p.r
        total += g / (nu - lam) * nu
    return total / m
