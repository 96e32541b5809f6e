"""The sigma-form Painleve VI identity satisfied by every EFP polynomial.

With sigma = alpha(alpha-1) F'/F - ((r+q+s)^2/4) alpha + ((r+q+s)q + 2rs)/4,

    alpha^2 (alpha-1)^2 sigma' sigma''^2
      + ((1-2alpha) sigma'^2 + 2 sigma sigma' + nu1 nu2 nu3 nu4)^2
      - prod_k (sigma' + nu_k^2) = 0

holds identically in alpha.  The residual is computed exactly: writing
sigma = N/D, every term is a polynomial over D^8.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import flint

from .efp_exact import EfpParams
from .exact_core import Poly, RatFun, from_flint, ratfun_equal_zero, to_flint

__all__ = [
    "PainleveNu",
    "SigmaData",
    "nu_params",
    "sigma_from_efp",
    "sigma_form_residual",
    "ratfun_equal_zero",
]


@dataclass(frozen=True)
class PainleveNu:
    nu1: Fraction
    nu2: Fraction
    nu3: Fraction
    nu4: Fraction
    theta0: int
    theta1: int
    theta_alpha: int
    theta_inf: int

    @property
    def nus(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.nu1, self.nu2, self.nu3, self.nu4)


def nu_params(p: EfpParams) -> PainleveNu:
    r, s, q = p.r, p.s, p.q
    return PainleveNu(
        nu1=Fraction(-(r + q + s), 2),
        nu2=Fraction(-(r - q - s), 2),
        nu3=Fraction(-(r + q + s), 2),
        nu4=Fraction(r + q - s, 2),
        theta0=s,
        theta1=r + q,
        theta_alpha=-r,
        theta_inf=-(s + q),
    )


@dataclass(frozen=True)
class SigmaData:
    sigma: RatFun
    params: EfpParams
    nu: PainleveNu


def sigma_from_efp(F: Poly, p: EfpParams) -> SigmaData:
    """sigma(alpha) as a canonical rational function, built from the EFP polynomial."""
    if F.is_zero():
        raise ValueError("sigma is undefined for F = 0")
    r, s, q = p.r, p.s, p.q
    n = r + q + s
    linear = Poly([Fraction(n * q + 2 * r * s, 4), Fraction(-n * n, 4)])
    a_am1 = Poly([0, -1, 1])  # alpha (alpha - 1)
    num = a_am1 * F.deriv() + linear * F
    return SigmaData(RatFun(num, F), p, nu_params(p))


def _residual_numerator(N, D, nus):
    """Numerator over D^8 of the sigma-form residual, for sigma = N/D (flint polys)."""
    x = flint.fmpq_poly([0, 1])
    dN, dD = N.derivative(), D.derivative()
    A = dN * D - N * dD  # sigma'  = A / D^2
    B = A.derivative() * D - 2 * A * dD  # sigma'' = B / D^3
    nu_prod = 1
    for nu in nus:
        nu_prod *= nu
    c = flint.fmpq(nu_prod.numerator, nu_prod.denominator)
    D2 = D * D
    term1 = (x * (x - 1)) ** 2 * A * B * B
    inner = (1 - 2 * x) * A * A + 2 * N * A * D + c * D2 * D2
    term3 = flint.fmpq_poly([1])
    for nu in nus:
        sq = nu * nu
        term3 *= A + flint.fmpq(sq.numerator, sq.denominator) * D2
    return term1 + inner * inner - term3


def sigma_form_residual(sd: SigmaData) -> RatFun:
    """LHS - RHS of the sigma-form equation as an exact canonical rational function."""
    N, D = to_flint(sd.sigma.num), to_flint(sd.sigma.den)
    num = _residual_numerator(N, D, sd.nu.nus)
    if num == 0:
        return RatFun(Poly())
    return RatFun(from_flint(num), from_flint(D ** 8))
