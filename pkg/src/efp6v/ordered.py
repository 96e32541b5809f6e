"""Large-s expansion of log(1 - F_{r,s,0}) in the ordered regime (v < u).

    log(1 - F) = -chi s - log s + b0 + b1/s + b2/s^2 + O(s^-3)

chi is available in a (u, v) form, two (alpha, beta) forms and as an
integral; b0..b2 come in (alpha, v) and (u, v) forms.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath

from .disordered import AsymSeries, beta_of_v, u_of_alpha
from .efp_exact import EfpParams, efp_eval
from .exact_core import as_fraction, bernoulli, to_mpf

__all__ = [
    "chi",
    "chi_longchi",
    "chi_longchi2",
    "chi_integral",
    "chi_prime",
    "chi_ode_residual",
    "chi_small_alpha_limit",
    "b_coeffs",
    "b_coeffs_uv",
    "ordered_series",
    "log1mF_ordered",
    "log1mF_exact",
    "log_binom_asym",
    "log_binom_exact",
]


def _check_ordered(u, v) -> None:
    if not 0 < v < u < 1:
        raise ValueError(f"ordered regime needs 0 < v < u < 1 (u={mpmath.nstr(u, 8)}, v={mpmath.nstr(v, 8)})")


# rate function -----------------------------------------------------------------

def chi(u, v) -> mpmath.mpf:
    """Rate of 1 - F in (u, v) variables; zero at v = u."""
    u, v = to_mpf(u), to_mpf(v)
    if u == v:
        return mpmath.mpf(0)
    _check_ordered(u, v)
    sq = mpmath.sqrt
    first = (sq(1 - v * u) + sq(u * (u - v))) / sq(1 - u * u)
    second = (sq(u * (1 - v * u)) + sq(u - v)) / sq((1 - u * u) * v)
    return 4 / v * mpmath.log(first) - 4 * mpmath.log(second)


def _alpha_beta(alpha, v):
    a, v = to_mpf(alpha), to_mpf(v)
    b = beta_of_v(v)
    if not 0 < a <= b:
        raise ValueError("ordered regime needs 0 < alpha < beta")
    return a, b


def chi_longchi(alpha, v) -> mpmath.mpf:
    """(alpha, beta) form with a single square root of (1-alpha)(beta-alpha)."""
    a, b = _alpha_beta(alpha, v)
    rb, ra = mpmath.sqrt(b), mpmath.sqrt(a)
    w = mpmath.sqrt((1 - a) * (b - a))
    return (
        2 * (1 + rb) / (1 - rb) * mpmath.log((rb + a + w) / ((1 + rb) * ra))
        - 2 * mpmath.log((rb - a + w) / ((1 - rb) * ra))
    )


def chi_longchi2(alpha, v) -> mpmath.mpf:
    """(alpha, beta) form built from sqrt(alpha) and sqrt(beta) products."""
    a, b = _alpha_beta(alpha, v)
    rb, ra = mpmath.sqrt(b), mpmath.sqrt(a)
    sq = mpmath.sqrt
    p = sq((1 + ra) * (rb + ra))
    m = sq((1 - ra) * (rb - ra))
    pm = sq((1 - ra) * (rb + ra))
    mp = sq((1 + ra) * (rb - ra))
    return (
        4 * (1 + rb) / (1 - rb) * mpmath.log((p + m) / sq(2 * (1 + rb) * ra))
        - 4 * mpmath.log((pm + mp) / sq(2 * (1 - rb) * ra))
    )


def chi_integral(alpha, v) -> mpmath.mpf:
    """Rate as an integral over [alpha, beta]."""
    a, b = _alpha_beta(alpha, v)
    rb = mpmath.sqrt(b)

    def integrand(x):
        return mpmath.sqrt((b - x) / (1 - x)) / x

    return 2 / (1 - rb) * mpmath.quad(integrand, [a, b])


def chi_prime(alpha, v) -> mpmath.mpf:
    """d chi / d alpha (negative on (0, beta))."""
    a, v = to_mpf(alpha), to_mpf(v)
    return -mpmath.sqrt(((1 - v) ** 2 - (1 + v) ** 2 * a) / (1 - a)) / (v * a)


def chi_ode_residual(alpha, v) -> mpmath.mpf:
    """alpha^2 (alpha-1) chi'^2 - ((1+v)^2 alpha - (1-v)^2)/v^2."""
    a, v = to_mpf(alpha), to_mpf(v)
    d = chi_prime(a, v)
    return a * a * (a - 1) * d * d - ((1 + v) ** 2 * a - (1 - v) ** 2) / (v * v)


def chi_small_alpha_limit(v) -> mpmath.mpf:
    """Limit of chi + ((1-v)/v) log alpha as alpha -> 0."""
    v = to_mpf(v)
    return 2 * (mpmath.log(v) + (1 - v) / v * mpmath.log(1 - v))


# correction coefficients --------------------------------------------------------

def b_coeffs(alpha, v) -> tuple[mpmath.mpf, mpmath.mpf, mpmath.mpf]:
    """(b0, b1, b2) in (alpha, v) form."""
    a, v = to_mpf(alpha), to_mpf(v)
    _check_ordered(u_of_alpha(a), v)
    v2 = v * v
    R = (1 - v) ** 2 - a * (1 + v) ** 2
    b0 = mpmath.log(a * v2 / (2 * mpmath.pi * mpmath.sqrt(1 - a) * R ** mpmath.mpf(1.5)))
    b1 = -(
        (1 + v ** 4) * (1 - a) ** 2
        + 9 * (v + v ** 3) * (1 - a * a)
        - 2 * v2 * (10 * a * a - 11 * a + 10)
    ) / (6 * mpmath.sqrt(1 - a) * R ** mpmath.mpf(1.5))
    b2 = v2 / ((1 - a) * R ** 3) * (
        (a * a + 8 * a + 1) * (1 - a) ** 2 * (v ** 4 + 1)
        - 4 * (1 - a) * (a ** 3 + 1) * (v ** 3 + v)
        + 6 * (1 - a) ** 4 * v2
        + 4 * a * (a * a + a + 1) * v2
    )
    return b0, b1, b2


def b_coeffs_uv(u, v) -> tuple[mpmath.mpf, mpmath.mpf, mpmath.mpf]:
    """(b0, b1, b2) in (u, v) form."""
    u, v = to_mpf(u), to_mpf(v)
    _check_ordered(u, v)
    u2, v2 = u * u, v * v
    P = (u - v) * (1 - u * v)
    ru = mpmath.sqrt(u)
    b0 = mpmath.log(v2 * (1 - u2) ** 2 / (32 * mpmath.pi * ru * P ** mpmath.mpf(1.5)))
    # sign and u^2 coefficients fixed so this matches the alpha form
    b1 = (
        9 * v2 * (1 + u2 * u2)
        - 36 * v * u * (1 + v2) * (1 + u2)
        - (8 - 142 * v2 + 8 * v2 * v2) * u2
    ) / (48 * ru * P ** mpmath.mpf(1.5))
    b2 = v2 / (64 * u * P ** 3) * (
        3 * v2 * (u ** 8 + 1)
        - 8 * v * u * (v2 + 1) * (u ** 6 + 1)
        + 4 * u2 * (10 * v2 * v2 + v2 + 10) * (u2 * u2 + 1)
        - 120 * v * u ** 3 * (v2 + 1) * (u2 + 1)
        - (16 * v2 * v2 - 370 * v2 + 16) * u2 * u2
    )
    return b0, b1, b2


def ordered_series(alpha, v, n: int = 2) -> AsymSeries:
    a, v = to_mpf(alpha), to_mpf(v)
    u = u_of_alpha(a)
    _check_ordered(u, v)
    if not 0 <= n <= 2:
        raise ValueError("orders 0..2 are available")
    b0, b1, b2 = b_coeffs(a, v)
    corr = ((1, b1), (2, b2))[:n]
    return AsymSeries("ordered", chi(u, v), 1, mpmath.mpf(-1), b0, corr, n)


def log1mF_ordered(p: EfpParams, alpha, n: int = 2) -> mpmath.mpf:
    """Predicted log(1 - F_{r,s,0}(alpha)) through b_n/s^n."""
    if p.q != 0:
        raise ValueError("large-s expansion is available for q = 0 only")
    return ordered_series(alpha, p.v, n)(p.s)


def log1mF_exact(p: EfpParams, alpha) -> mpmath.mpf:
    """log(1 - F) with 1 - F formed exactly before the logarithm."""
    d = 1 - efp_eval(p, as_fraction(alpha))
    if d <= 0:
        raise ValueError("1 - F is not positive")
    return mpmath.log(mpmath.mpf(d.numerator)) - mpmath.log(d.denominator)


# log-binomial expansion ---------------------------------------------------------

def log_binom_asym(s: int, v, m: int) -> mpmath.mpf:
    """Large-s expansion of 2 log C(s/v, s-1) through m terms of each tail sum."""
    v = to_mpf(v)
    if not 0 < v < 1:
        raise ValueError("need 0 < v < 1")
    s_ = mpmath.mpf(s)
    w = v / (1 - v)
    out = -2 * (mpmath.log(v) + (1 - v) / v * mpmath.log(1 - v)) * s_ - mpmath.log(s_)
    out += mpmath.log(v * v / (2 * mpmath.pi * (1 - v) ** 3))
    for n in range(1, m + 1):
        B = to_mpf(bernoulli(2 * n))
        num = B * v ** (2 * n - 1) - (B + 2 * n) * w ** (2 * n - 1) - B
        out += num / (n * (2 * n - 1) * s_ ** (2 * n - 1))
    for k in range(1, m + 1):
        out += w ** (2 * k) / (k * s_ ** (2 * k))
    return out


def log_binom_exact(s: int, v) -> mpmath.mpf:
    """2 log C(s/v, s-1) from the exact integer binomial."""
    r = Fraction(s) / as_fraction(v)
    if r.denominator != 1:
        raise ValueError("s/v must be an integer")
    return 2 * mpmath.log(math.comb(int(r), s - 1))
