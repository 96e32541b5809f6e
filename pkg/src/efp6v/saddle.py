"""Saddle-point asymptotics of Tr K in the ordered regime.

Tr K is a double contour integral whose exponent is s*(S(nu) + S(mu)) with

    S(nu) = (1/v) log((1 - nu)/(1 - alpha nu)) - log(-nu).

S has two negative critical points nu_+ < -1/sqrt(alpha) < nu_- < 0; the
dominant contribution comes from nu = mu = nu_-.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .disordered import u_of_alpha
from .exact_core import to_mpf
from .ordered import b_coeffs

__all__ = [
    "SaddleData",
    "saddle_points",
    "action_S",
    "action_S_derivative",
    "S2_at_saddle",
    "bhat_coeffs",
    "saddle_data",
    "trK_saddle",
    "bhat_consistency",
]


def saddle_points(alpha, v) -> tuple[mpmath.mpf, mpmath.mpf]:
    """(nu_-, nu_+), both negative, with nu_- nu_+ = 1/alpha."""
    a, v = to_mpf(alpha), to_mpf(v)
    u = u_of_alpha(a)
    if not 0 < v < u:
        raise ValueError("saddle points are real only in the ordered regime 0 < v < u")
    ra = mpmath.sqrt(a)
    x = mpmath.sqrt(1 - v * (1 + ra) / (1 - ra))
    y = mpmath.sqrt(1 - v * (1 - ra) / (1 + ra))
    pref = -(1 - a) / (4 * a * v)
    plus = pref * (x + y) ** 2
    minus = pref * (x - y) ** 2
    return minus, plus


def action_S(nu, alpha, v) -> mpmath.mpf:
    nu, a, v = to_mpf(nu), to_mpf(alpha), to_mpf(v)
    if nu >= 0:
        raise ValueError("S is defined here for nu < 0")
    return mpmath.log((1 - nu) / (1 - a * nu)) / v - mpmath.log(-nu)


def action_S_derivative(nu, alpha, v, k: int) -> mpmath.mpf:
    """k-th derivative of S, 1 <= k <= 6, from the closed form for log derivatives."""
    if not 1 <= k <= 6:
        raise ValueError("derivatives of order 1..6 are provided")
    nu, a, v = to_mpf(nu), to_mpf(alpha), to_mpf(v)
    f = math.factorial(k - 1)
    out = -f / v * ((1 - nu) ** -k - a ** k * (1 - a * nu) ** -k)
    out -= (-1) ** (k - 1) * f * nu ** -k
    return out


def S2_at_saddle(nu, v) -> mpmath.mpf:
    """S''(nu_-) in the simplified form valid at a critical point."""
    nu, v = to_mpf(nu), to_mpf(v)
    return ((1 - v) * nu + 1 + v) / (nu * nu * (1 - nu))


def bhat_coeffs(alpha, v) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Correction coefficients (bhat1, bhat2) of the saddle-point series."""
    a, v = to_mpf(alpha), to_mpf(v)
    R = (1 - v) ** 2 - (1 + v) ** 2 * a
    bh1 = -(
        (1 - a) ** 2 * (v ** 4 + 1)
        + 9 * (1 - a * a) * (v ** 3 + v)
        - 2 * (10 * a * a - 11 * a + 10) * v * v
    ) / (6 * mpmath.sqrt(1 - a) * R ** mpmath.mpf(1.5))
    bh2 = (
        (1 - a) ** 4 * (v ** 8 + 1)
        + 18 * (1 + a) * (1 - a) ** 3 * (v ** 7 + v)
        + (113 * a * a + 782 * a + 113) * (1 - a) ** 2 * (v ** 6 + v * v)
        - 18 * (1 - a * a) * (35 * a * a - 36 * a + 35) * (v ** 5 + v ** 3)
        + 12 * (83 * (a ** 4 + 1) - 194 * (a ** 3 + a) + 321 * a * a) * v ** 4
    ) / (72 * (1 - a) * R ** 3)
    return bh1, bh2


@dataclass(frozen=True)
class SaddleData:
    alpha: mpmath.mpf
    v: mpmath.mpf
    nu_minus: mpmath.mpf
    nu_plus: mpmath.mpf
    S: mpmath.mpf
    derivatives: tuple[mpmath.mpf, ...]  # S', S'', ..., S^(6) at nu_-
    bhat1: mpmath.mpf
    bhat2: mpmath.mpf

    @property
    def rate(self) -> mpmath.mpf:
        """2 S(nu_-) + ((1-v)/v) log alpha; negative in the ordered regime."""
        return 2 * self.S + (1 - self.v) / self.v * mpmath.log(self.alpha)


def saddle_data(alpha, v) -> SaddleData:
    a, v = to_mpf(alpha), to_mpf(v)
    nm, npl = saddle_points(a, v)
    ders = tuple(action_S_derivative(nm, a, v, k) for k in range(1, 7))
    bh1, bh2 = bhat_coeffs(a, v)
    return SaddleData(a, v, nm, npl, action_S(nm, a, v), ders, bh1, bh2)


def trK_saddle(alpha, v, s: int, order: int = 2) -> mpmath.mpf:
    """Saddle-point approximation of Tr K through bhat_order / s^order."""
    if not 0 <= order <= 2:
        raise ValueError("orders 0..2 are available")
    d = saddle_data(alpha, v)
    nu = d.nu_minus
    f = 1 / (1 - d.alpha * nu * nu) ** 2
    s_ = mpmath.mpf(s)
    series = 1 + (d.bhat1 / s_ if order >= 1 else 0) + (d.bhat2 / s_ ** 2 if order >= 2 else 0)
    pref = d.alpha / (2 * mpmath.pi) * f / S2_at_saddle(nu, d.v)
    return pref * mpmath.exp(s_ * d.rate - mpmath.log(s_)) * series


def bhat_consistency(alpha, v) -> tuple[mpmath.mpf, mpmath.mpf]:
    """(bhat1 - b1, bhat2 - bhat1^2/2 - b2); both vanish identically."""
    _, b1, b2 = b_coeffs(alpha, v)
    bh1, bh2 = bhat_coeffs(alpha, v)
    return bh1 - b1, bh2 - bh1 ** 2 / 2 - b2
