"""Exponentially small part of log F in the ordered regime, as a single integral.

For q = 0 and r > s the leading transseries term of log F_{r,s,0} is

    -s^2 C(r,s)^2 int_0^alpha { 2F1(r,-s;1+r-s;x)^2 / (1-x)
        - (r-s)/(r-s+1) 2F1(r,-s;r-s;x) 2F1(1+r,1-s;2+r-s;x) } x^(r-s) dx

where every 2F1 terminates, so the integrand is a polynomial over (1 - x).
"""

from __future__ import annotations

from fractions import Fraction

import mpmath
from mpmath.calculus.quadrature import GaussLegendre

from .efp_exact import EfpParams
from .exact_core import Poly, Rational, as_fraction, binomial, to_mpf

__all__ = [
    "gauss2f1_terminating",
    "correction_integrand",
    "ordered_correction",
    "ordered_correction_exact",
]


def gauss2f1_terminating(a: Rational, b: int, c: Rational, alpha: Rational | None = None):
    """Terminating 2F1(a, b; c; alpha) with b a nonpositive integer.

    Returns the exact value at a rational ``alpha`` or, when ``alpha`` is
    None, the polynomial in alpha.
    """
    a, c = as_fraction(a), as_fraction(c)
    b_ = as_fraction(b)
    if b_.denominator != 1 or b_ > 0:
        raise ValueError("b must be a nonpositive integer")
    n = -int(b_)
    coeffs = [Fraction(1)]
    term = Fraction(1)
    for k in range(n):
        if c + k == 0:
            raise ValueError(f"c = {c} hits a pole before the series terminates")
        term = term * (a + k) * (b_ + k) / ((c + k) * (k + 1))
        coeffs.append(term)
    poly = Poly(coeffs)
    return poly if alpha is None else poly(as_fraction(alpha))


def _check(p: EfpParams, alpha) -> None:
    if p.q != 0:
        raise ValueError("the integral representation holds for q = 0")
    if not 1 <= p.s < p.r:
        raise ValueError("need 1 <= s < r")
    a = to_mpf(alpha)
    beta = to_mpf(p.beta)
    if not 0 < a < beta:
        raise ValueError("ordered regime needs 0 < alpha < beta = ((1-v)/(1+v))^2")


def correction_integrand(p: EfpParams) -> tuple[Poly, Poly]:
    """(P, Q) such that the integrand is (P(x)/(1-x) - Q(x)) x^(r-s)."""
    r, s = p.r, p.s
    f = gauss2f1_terminating(r, -s, 1 + r - s)
    g = gauss2f1_terminating(r, -s, r - s)
    h = gauss2f1_terminating(1 + r, 1 - s, 2 + r - s)
    return f * f, g * h * Fraction(r - s, r - s + 1)


def _prefactor(p: EfpParams) -> Fraction:
    return -(p.s ** 2) * binomial(p.r, p.s) ** 2


def ordered_correction(p: EfpParams, alpha, tol=None, max_degree: int = 12):
    """Predicted log F from the integral, by Gauss-Legendre quadrature on [0, alpha].

    The node count is doubled until two successive results agree to ``tol``
    (default 1e-20); returns (value, node_count).
    """
    _check(p, alpha)
    a = to_mpf(alpha)
    tol = mpmath.mpf("1e-20") if tol is None else to_mpf(tol) if not isinstance(tol, mpmath.mpf) else tol
    P, Q = correction_integrand(p)
    k = p.r - p.s

    def integrand(x):
        return (P(x) / (1 - x) - Q(x)) * x ** k

    rule = GaussLegendre(mpmath.mp)
    prev = None
    for degree in range(3, max_degree + 1):
        nodes = rule.calc_nodes(degree, mpmath.mp.prec)
        # nodes live on [-1, 1]; map to [0, a]
        half = a / 2
        total = mpmath.fsum(w * integrand(half * (t + 1)) for t, w in nodes) * half
        if prev is not None and abs(total - prev) <= tol * max(1, abs(total)):
            return to_mpf(_prefactor(p)) * total, len(nodes)
        prev = total
    raise RuntimeError("Gauss-Legendre quadrature did not settle")


def ordered_correction_exact(p: EfpParams, alpha) -> mpmath.mpf:
    """Same integral done in closed form: polynomial part plus a -log(1-alpha) tail."""
    _check(p, alpha)
    a = to_mpf(alpha)
    P, Q = correction_integrand(p)
    k = p.r - p.s
    # x^k P(x)/(1-x) = D(x) + P(1)/(1-x) with D a polynomial
    shifted = Poly([0] * k + list(P.coeffs))
    D, R = shifted.divmod(Poly([1, -1]))
    integral_poly = Poly([0] + [c / (j + 1) for j, c in enumerate((D - Poly([0] * k + list(Q.coeffs))).coeffs)])
    value = integral_poly(a) - to_mpf(R.coeff(0)) * mpmath.log(1 - a)
    return to_mpf(_prefactor(p)) * value
