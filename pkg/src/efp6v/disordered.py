"""Large-s expansion of log F_{r,s,0} in the disordered regime (v > u).

    log F = -phi s^2 - (1/12) log s + a0 + a2/s^2 + a4/s^4 + O(s^-6)

with v = s/r and u = (1 - sqrt(alpha))/(1 + sqrt(alpha)).  Every coefficient
is available in two algebraically independent forms, one in (u, v) and one in
(alpha, v); the tests insist they agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath

from .critical import script_b_closed, zeta_prime_minus1
from .efp_exact import EfpParams
from .exact_core import to_mpf

__all__ = [
    "GeometryParams",
    "AsymSeries",
    "u_of_alpha",
    "alpha_of_u",
    "beta_of_v",
    "phi",
    "phi_alpha",
    "phi_integral",
    "phi_third_derivative_at_transition",
    "phi_v_derivatives_fd",
    "a_coeffs",
    "a_coeffs_alpha",
    "disordered_series",
    "logF_disordered",
    "reduced_ode_factors",
    "sigma2_solutions",
    "sigma2_leading_check",
]


def u_of_alpha(alpha) -> mpmath.mpf:
    r = mpmath.sqrt(to_mpf(alpha))
    return (1 - r) / (1 + r)


def alpha_of_u(u) -> mpmath.mpf:
    u = to_mpf(u)
    return ((1 - u) / (1 + u)) ** 2


def beta_of_v(v) -> mpmath.mpf:
    v = to_mpf(v)
    return ((1 - v) / (1 + v)) ** 2


@dataclass(frozen=True)
class GeometryParams:
    """alpha and v together with the derived u and beta."""

    alpha: mpmath.mpf
    v: mpmath.mpf

    @classmethod
    def make(cls, alpha, v) -> "GeometryParams":
        return cls(to_mpf(alpha), to_mpf(v))

    @property
    def u(self) -> mpmath.mpf:
        return u_of_alpha(self.alpha)

    @property
    def beta(self) -> mpmath.mpf:
        return beta_of_v(self.v)

    @property
    def regime(self) -> str:
        if self.v > self.u:
            return "disordered"
        if self.v < self.u:
            return "ordered"
        return "critical"


@dataclass(frozen=True)
class AsymSeries:
    """Truncated expansion rate*s^p + log_coeff*log s + const + sum c_k s^{-k}."""

    regime: str
    rate: mpmath.mpf
    rate_power: int
    log_coeff: mpmath.mpf
    const: mpmath.mpf
    corrections: tuple[tuple[int, mpmath.mpf], ...] = field(default_factory=tuple)
    order: int = 0

    def __call__(self, s) -> mpmath.mpf:
        s = to_mpf(s)
        out = -self.rate * s ** self.rate_power + self.log_coeff * mpmath.log(s) + self.const
        for k, c in self.corrections:
            out += c / s ** k
        return out

    @property
    def error_exponent(self) -> int:
        """Power of 1/s of the first omitted term."""
        step = 2 if self.regime == "disordered" else 1
        last = self.corrections[-1][0] if self.corrections else 0
        return last + step


def _check_disordered(u, v) -> None:
    if not 0 < u < v < 1:
        raise ValueError(f"disordered regime needs 0 < u < v < 1 (u={mpmath.nstr(u, 8)}, v={mpmath.nstr(v, 8)})")


# rate function -----------------------------------------------------------------

def phi(u, v) -> mpmath.mpf:
    """Leading rate in (u, v) variables; zero at v = u."""
    u, v = to_mpf(u), to_mpf(v)
    if not 0 < u <= v <= 1:
        raise ValueError("phi needs 0 < u <= v <= 1")
    if u == v:
        return mpmath.mpf(0)
    out = mpmath.log(v / u) - (1 + v) ** 2 / (2 * v * v) * mpmath.log((1 + v) / (1 + u))
    if v != 1:
        out -= (1 - v) ** 2 / (2 * v * v) * mpmath.log((1 - v) / (1 - u))
    return out


def phi_alpha(alpha, v) -> mpmath.mpf:
    """Leading rate in (alpha, v) variables."""
    a, v = to_mpf(alpha), to_mpf(v)
    ra = mpmath.sqrt(a)
    v2 = v * v
    out = -mpmath.log((1 - ra) / 2) - mpmath.log((1 + ra) / 2) / v2
    out += (1 - v) ** 2 / (4 * v2) * mpmath.log(a) + mpmath.log(v)
    out -= (1 + v) ** 2 / (2 * v2) * mpmath.log(1 + v)
    if v != 1:
        out -= (1 - v) ** 2 / (2 * v2) * mpmath.log(1 - v)
    return out


def phi_integral(alpha, v) -> mpmath.mpf:
    """Leading rate as an integral over [beta, alpha]."""
    a, v = to_mpf(alpha), to_mpf(v)
    c0, c1 = (1 - v) / (2 * v), (1 + v) / (2 * v)

    def integrand(x):
        return (c0 - c1 * mpmath.sqrt(x)) ** 2 / (x * (1 - x))

    return mpmath.quad(integrand, [beta_of_v(v), a])


def phi_third_derivative_at_transition(u) -> mpmath.mpf:
    """d^3 phi / dv^3 at v = u (the first two derivatives vanish there)."""
    u = to_mpf(u)
    return 2 / (u ** 3 * (1 - u * u))


def phi_v_derivatives_fd(u, h=None) -> tuple[mpmath.mpf, ...]:
    """One-sided forward differences of phi in v at v = u, orders 0..3."""
    u = to_mpf(u)
    h = mpmath.mpf("1e-6") if h is None else to_mpf(h)
    f = [phi(u, u + k * h) for k in range(4)]
    return (
        f[0],
        (f[1] - f[0]) / h,
        (f[2] - 2 * f[1] + f[0]) / h ** 2,
        (f[3] - 3 * f[2] + 3 * f[1] - f[0]) / h ** 3,
    )


# correction coefficients --------------------------------------------------------

def _tail(v) -> mpmath.mpf:
    return -mpmath.log((1 - v * v) / 2) / 12 + zeta_prime_minus1()


def a_coeffs(u, v) -> tuple[mpmath.mpf, mpmath.mpf, mpmath.mpf]:
    """(a0, a2, a4) from the (u, v) closed forms."""
    u, v = to_mpf(u), to_mpf(v)
    _check_disordered(u, v)
    u2, v2 = u * u, v * v
    d = v2 - u2
    a0 = mpmath.log((1 - u2) * v2 / d) / 8 + _tail(v)
    a2 = (
        u2 * (1 - v2) * (2 * v2 ** 2 + 5 * u2 * v2 - u2 ** 2) / (64 * d ** 3)
        - (1 + v2) * (v2 - (1 - v2) ** 2) / (120 * (1 - v2) ** 2)
        - mpmath.mpf(1) / 64
    )
    bracket = (
        10 * v ** 10 * u2 - 2 * v ** 10 - 90 * v ** 8 * u2 + 140 * v ** 8 * u ** 4
        + 105 * v ** 6 * u ** 6 - 160 * v ** 6 * u ** 4 - 4 * v ** 4 * u ** 8
        + 5 * v ** 4 * u ** 6 - 6 * v2 * u ** 8 + v2 * u ** 10 + u ** 10
    )
    a4 = (
        -u2 * (1 - v2) / (256 * d ** 6) * bracket
        - v ** 6 * (v ** 6 - 4 * v ** 4 + 5 * v2 - 10) / (504 * (1 - v2) ** 4)
        + mpmath.mpf(31) / 16128
    )
    return a0, a2, a4


def a_coeffs_alpha(alpha, v) -> tuple[mpmath.mpf, mpmath.mpf, mpmath.mpf]:
    """(a0, a2, a4) from the (alpha, v) closed forms."""
    a, v = to_mpf(alpha), to_mpf(v)
    _check_disordered(u_of_alpha(a), v)
    ra = mpmath.sqrt(a)
    v2 = v * v
    D = 2 * (1 + v2) * ra - (1 - v2) * (1 + a)
    a0 = mpmath.log(4 * v2 * ra / D) / 8 + _tail(v)
    a2 = (
        (1 - v2) * (1 - ra) ** 2
        * (2 * (1 + ra) ** 4 * v2 ** 2 + 5 * (1 - a) ** 2 * v2 - (1 - ra) ** 4)
        / (64 * D ** 3)
        + script_b_closed(1, v)
    )
    p, m = 1 + ra, 1 - ra
    bracket = (
        8 * p ** 8 * (1 - 3 * ra + a) * v ** 10
        + 10 * m ** 2 * p ** 6 * (5 - 46 * ra + 5 * a) * v ** 8
        - 5 * (1 - a) ** 4 * (11 + 106 * ra + 11 * a) * v ** 6
        + m ** 6 * p ** 2 * (1 + 18 * ra + a) * v ** 4
        - m ** 8 * (5 + 14 * ra + 5 * a) * v2
        + m ** 10
    )
    a4 = -(1 - v2) * m ** 2 / (256 * D ** 6) * bracket + script_b_closed(2, v)
    return a0, a2, a4


def disordered_series(alpha, v, n: int = 2) -> AsymSeries:
    a, v = to_mpf(alpha), to_mpf(v)
    u = u_of_alpha(a)
    _check_disordered(u, v)
    if not 0 <= n <= 2:
        raise ValueError("orders 0..2 are available")
    a0, a2, a4 = a_coeffs(u, v)
    corr = ((2, a2), (4, a4))[:n]
    return AsymSeries("disordered", phi(u, v), 2, mpmath.mpf(-1) / 12, a0, corr, n)


def logF_disordered(p: EfpParams, alpha, n: int = 2) -> mpmath.mpf:
    """Predicted log F_{r,s,0}(alpha) through a_{2n}/s^{2n}."""
    if p.q != 0:
        raise ValueError("large-s expansion is available for q = 0 only")
    return disordered_series(alpha, p.v, n)(p.s)


# leading-order ODE --------------------------------------------------------------

def reduced_ode_factors(sig, dsig, alpha, v) -> tuple[mpmath.mpf, mpmath.mpf]:
    """The two factors of the leading-order reduced equation for sigma_2."""
    a, v = to_mpf(alpha), to_mpf(v)
    c = (1 + v * v) / (4 * v * v)
    first = c + sig + (1 - a) * dsig
    second = (1 - v * v) ** 2 / (16 * v ** 4) + dsig * (c - sig + a * dsig)
    return first, second


def sigma2_solutions(alpha, v) -> dict[str, tuple[mpmath.mpf, mpmath.mpf]]:
    """(value, derivative) of the two particular solutions sigma_2^{+/-}."""
    a, v = to_mpf(alpha), to_mpf(v)
    ra = mpmath.sqrt(a)
    c = (1 + v * v) / (4 * v * v)
    k = (1 - v * v) / (2 * v * v)
    return {
        "+": (c + k * ra, k / (2 * ra)),
        "-": (c - k * ra, -k / (2 * ra)),
    }


def sigma2_leading_check(alpha, v, c_one=1, c_two=1) -> dict[str, mpmath.mpf]:
    """Residuals of the reduced ODE on its particular and general solutions.

    Keys: "minus" and "plus" (second factor on sigma_2^-/+), "general_I"
    (first factor), "general_II" (second factor).  All vanish identically.
    """
    a, v = to_mpf(alpha), to_mpf(v)
    c1, c2 = to_mpf(c_one), to_mpf(c_two)
    sols = sigma2_solutions(a, v)
    c = (1 + v * v) / (4 * v * v)
    gen_I = (c1 * (a - 1) - c, c1)
    gen_II = (c2 * a + c + (1 - v * v) ** 2 / (16 * c2 * v ** 4), c2)
    return {
        "minus": reduced_ode_factors(*sols["-"], a, v)[1],
        "plus": reduced_ode_factors(*sols["+"], a, v)[1],
        "general_I": reduced_ode_factors(*gen_I, a, v)[0],
        "general_II": reduced_ode_factors(*gen_II, a, v)[1],
    }
