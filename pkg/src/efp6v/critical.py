"""Behaviour of F_{r,s,q} near alpha = 1 and alpha = 0, and large-s constants.

Near alpha = 1 (q = 0) the EFP vanishes like C_{r,s} (1-alpha)^{s^2}; the
constant C_{r,s} is a product of Hahn-polynomial norms.  Near alpha = 0 it
departs from 1 at order alpha^{r-s+1}.  For large s, log C_{r,s} follows from
the asymptotics of the Barnes G-function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .efp_exact import EfpParams, efp_polynomial
from .exact_core import Poly, bernoulli, binomial, det_int_poly, poly_recenter, to_mpf

__all__ = [
    "HahnData",
    "hahn_norm",
    "hahn_ratio",
    "hahn_eval",
    "crs_constant",
    "taylor_alpha1_coeffs",
    "taylor_alpha1_efp",
    "taylor_alpha0_efp",
    "zeta_prime_minus1",
    "barnes_logG_asym",
    "barnes_logG_exact",
    "script_b",
    "script_b_closed",
    "log_crs_asym",
    "log_crs_leading",
]


# Hahn polynomials on {0, ..., r-1} ---------------------------------------------

def hahn_norm(n: int, r: int) -> Fraction:
    """Squared norm h_n of the n-th monic Hahn polynomial."""
    if not 0 <= n < r:
        raise ValueError("need 0 <= n < r")
    f = math.factorial
    return Fraction(f(n) ** 4 * f(r + n), f(2 * n) * f(2 * n + 1) * f(r - n - 1))


def hahn_ratio(n: int, r: int) -> Fraction:
    """h_n / h_{n-1} in closed form (n >= 1)."""
    return Fraction(n * n * (r * r - n * n), 4 * (4 * n * n - 1))


@dataclass(frozen=True)
class HahnData:
    r: int
    n: int

    @property
    def h(self) -> Fraction:
        return hahn_norm(self.n, self.r)

    @property
    def ratio(self) -> Fraction:
        return hahn_ratio(self.n, self.r)


def hahn_eval(n: int, x, r: int):
    """Monic Hahn polynomial p_n(x) from the three-term recurrence."""
    if not 0 <= n <= r - 1:
        raise ValueError("need 0 <= n <= r-1")
    mid = Fraction(r - 1, 2)
    prev, cur = 0, 1
    for k in range(n):
        b = hahn_ratio(k, r) if k else 0
        prev, cur = cur, (x - mid) * cur - b * prev
    return cur


def crs_constant(r: int, s: int) -> Fraction:
    """C_{r,s}: leading coefficient of F_{r,s,0} in powers of (1-alpha)."""
    if not 1 <= s <= r:
        raise ValueError("need 1 <= s <= r")
    f = math.factorial
    out = Fraction(1)
    for j in range(s):
        out *= Fraction(f(j + r) * f(j) ** 2, f(r - j - 1) * f(2 * j) * f(2 * j + 1))
    return out


# alpha -> 1 ---------------------------------------------------------------------

def _require_q0(p: EfpParams) -> None:
    if p.q != 0:
        raise ValueError("expansion at alpha = 1 is available for q = 0 only")
    if not 1 <= p.s <= p.r:
        raise ValueError("need 1 <= s <= r")


def _hankel_det_at_one(p: EfpParams) -> Poly:
    mat = [[[m ** (j + k) for m in range(p.r)] for k in range(p.s)] for j in range(p.s)]
    return poly_recenter(det_int_poly(mat), 1)


def taylor_alpha1_coeffs(p: EfpParams, verify: bool = True) -> tuple[Fraction, Fraction]:
    """(c1, c2) with det H(alpha) = det H(1) (1 + c1 (1-alpha) + c2/2 (1-alpha)^2 + ...).

    With ``verify`` the closed forms are checked against the recentred exact
    Hankel determinant; a mismatch raises ArithmeticError.
    """
    _require_q0(p)
    r, s = p.r, p.s
    c1 = Fraction(-s * (r - 1), 2)
    c2 = (
        c1
        + Fraction(s * s * (1 - 2 * r + s * s), 4)
        + Fraction(s ** 4 * (r * r - s * s), 4 * s * s - 1)
    )
    if verify:
        d = _hankel_det_at_one(p)
        # t = alpha - 1 = -(1 - alpha)
        e1 = -d.coeff(1) / d.coeff(0)
        e2 = 2 * d.coeff(2) / d.coeff(0)
        if (e1, e2) != (c1, c2):
            raise ArithmeticError(f"alpha=1 coefficients disagree for {p.astuple()}: {(c1, c2)} vs {(e1, e2)}")
    return c1, c2


def _alpha1_series_from_poly(p: EfpParams) -> tuple[Fraction, list[Fraction]]:
    F = efp_polynomial(p)
    t = poly_recenter(F, 1)  # coefficients in t = alpha - 1
    k0 = p.s * p.s
    lead = t.coeff(k0) * (-1) ** k0
    series = [t.coeff(k0 + k) * (-1) ** (k0 + k) / lead for k in range(3)]
    return lead, series


def taylor_alpha1_efp(p: EfpParams, verify: bool = True) -> list[Fraction]:
    """First three coefficients of F / (C_{r,s} (1-alpha)^{s^2}) in powers of (1-alpha)."""
    _require_q0(p)
    r, s = p.r, p.s
    d = s * (r - s)
    coeffs = [
        Fraction(1),
        Fraction(-d, 2),
        Fraction(d * (2 * s ** 3 * r - 2 * s ** 4 - 3 * s * s + 1), 4 * (4 * s * s - 1)),
    ]
    if verify:
        lead, exact = _alpha1_series_from_poly(p)
        if lead != crs_constant(r, s) or exact != coeffs:
            raise ArithmeticError(f"alpha=1 expansion disagrees for {p.astuple()}")
    return coeffs


# alpha -> 0 ---------------------------------------------------------------------

def taylor_alpha0_efp(p: EfpParams, verify: bool = True) -> tuple[int, Fraction]:
    """(exponent, c) with F = 1 - c alpha^exponent + higher order."""
    r, s, q = p.r, p.s, p.q
    if not 1 <= s <= r:
        raise ValueError("need 1 <= s <= r")
    exponent = r - s + 1
    coeff = binomial(r, s - 1) * binomial(r + q, s + q - 1)
    if verify:
        F = efp_polynomial(p)
        ok = F.coeff(0) == 1 and all(F.coeff(k) == 0 for k in range(1, exponent))
        if not ok or F.coeff(exponent) != -coeff:
            raise ArithmeticError(f"alpha=0 expansion disagrees for {p.astuple()}")
    return exponent, coeff


# Barnes G and large-s constants -------------------------------------------------

def zeta_prime_minus1() -> mpmath.mpf:
    """zeta'(-1) at the current precision, from the Hurwitz-zeta derivative."""
    return mpmath.zeta(-1, 1, 1)


def barnes_logG_exact(k: int) -> mpmath.mpf:
    """log G(k+1) = sum_{j=1}^{k-1} log j! for a positive integer k."""
    return mpmath.fsum(mpmath.log(mpmath.factorial(j)) for j in range(1, k))


def barnes_logG_asym(z, n: int) -> mpmath.mpf:
    """Large-z expansion of log G(z+1) with n inverse-square corrections."""
    z = to_mpf(z)
    if z <= 0:
        raise ValueError("need z > 0")
    lz = mpmath.log(z)
    out = z * z / 2 * lz - mpmath.mpf(3) / 4 * z * z + mpmath.log(2 * mpmath.pi) / 2 * z
    out += -lz / 12 + zeta_prime_minus1()
    for k in range(1, n + 1):
        out += to_mpf(bernoulli(2 * k + 2) / (4 * k * (k + 1))) / z ** (2 * k)
    return out


def script_b(k: int, v) -> mpmath.mpf:
    """Coefficient of s^{-2k} in the large-s expansion of log C_{r,s}, r = s/v."""
    v = to_mpf(v)
    B = lambda n: to_mpf(bernoulli(n))  # noqa: E731
    v2k = v ** (2 * k)
    out = B(2 * k + 2) / (4 * k * (k + 1)) * (v2k / (1 + v) ** (2 * k) + v2k / (1 - v) ** (2 * k) - 2 * v2k)
    for m in range(k):
        j = k - m
        out -= B(2 * j + 2) / (2 ** (2 * m + 1) * j * (j + 1)) * math.comb(2 * k - 1, 2 * m)
    out -= mpmath.mpf(4 * k * k + 6 * k - 1) / (2 ** (2 * k + 3) * 3 * k * (k + 1) * (2 * k + 1))
    return out


def script_b_closed(k: int, v) -> mpmath.mpf:
    """Closed forms of the k = 1, 2 coefficients (see :func:`script_b`)."""
    v = to_mpf(v)
    v2 = v * v
    if k == 1:
        return -(mpmath.mpf(1) / 8 - (1 + v2) / 15 + v2 * (1 + v2) / (15 * (1 - v2) ** 2)) / 8
    if k == 2:
        return -v2 ** 3 * (v2 ** 3 - 4 * v2 ** 2 + 5 * v2 - 10) / (504 * (1 - v2) ** 4) + mpmath.mpf(31) / 16128
    raise ValueError("closed forms available for k = 1, 2")


def log_crs_leading(v) -> mpmath.mpf:
    """Coefficient of -s^2 in log C_{r,s}."""
    v = to_mpf(v)
    return (
        mpmath.log(4 * v)
        - (1 + v) ** 2 / (2 * v * v) * mpmath.log(1 + v)
        - (1 - v) ** 2 / (2 * v * v) * mpmath.log(1 - v)
    )


def log_crs_asym(s: int, v, n: int) -> mpmath.mpf:
    """Large-s expansion of log C_{s/v, s} through order s^{-2n}."""
    v = to_mpf(v)
    if not 0 < v < 1:
        raise ValueError("need 0 < v < 1")
    s_ = mpmath.mpf(s)
    out = -s_ * s_ * log_crs_leading(v) - mpmath.log(s_) / 12
    out += -mpmath.log((1 - v * v) / 2) / 12 + zeta_prime_minus1()
    for k in range(1, n + 1):
        coeff = script_b_closed(k, v) if k <= 2 else script_b(k, v)
        out += coeff / s_ ** (2 * k)
    return out
