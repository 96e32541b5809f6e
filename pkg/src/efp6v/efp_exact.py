"""Exact EFP values: Hankel determinant formula plus two brute-force oracles.

F_{r,s,q}(alpha) is the probability that the top-left s x (s+q) block of an
N x N domain-wall lattice (N = r+s+q) consists only of type-2 vertices, with
free-fermion weights w1 = w2 = sqrt(1-alpha), w3 = w4 = sqrt(alpha), w5 = w6 = 1.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .exact_core import Poly, Rational, as_fraction, det_int_poly, det_rational

__all__ = [
    "EfpParams",
    "hankel_matrix",
    "efp_polynomial",
    "efp_eval",
    "efp_enumerate",
    "efp_multi_integral",
    "MAX_ENUMERATION_N",
    "MAX_INTEGRAL_S",
]

MAX_ENUMERATION_N = 6
MAX_INTEGRAL_S = 5


@dataclass(frozen=True)
class EfpParams:
    r: int
    s: int
    q: int = 0

    def __post_init__(self):
        if self.r < 1 or self.s < 0 or self.q < 0:
            raise ValueError(f"need r >= 1, s >= 0, q >= 0; got {self.astuple()}")

    def astuple(self) -> tuple[int, int, int]:
        return (self.r, self.s, self.q)

    @property
    def N(self) -> int:
        return self.r + self.s + self.q

    @property
    def v(self) -> Fraction:
        return Fraction(self.s, self.r)

    @property
    def beta(self) -> Fraction:
        v = self.v
        return ((1 - v) / (1 + v)) ** 2

    @property
    def trivially_zero(self) -> bool:
        return self.s > self.r

    @property
    def trivially_one(self) -> bool:
        return self.s == 0


def _prefactor(p: EfpParams) -> Fraction:
    num = math.factorial(p.q) ** p.s
    den = 1
    for k in range(p.s):
        den *= math.factorial(p.q + k) * math.factorial(k)
    return Fraction(num, den)


def _moment_coeffs(p: EfpParams, power: int) -> list[int]:
    # sum_m m^power C(m+q, m) alpha^m, with 0**0 == 1
    return [m ** power * math.comb(m + p.q, m) for m in range(p.r)]


def hankel_matrix(p: EfpParams) -> list[list[Poly]]:
    """s x s Hankel matrix of moment polynomials in alpha."""
    if p.s == 0:
        raise ValueError("empty Hankel matrix for s = 0 (F is identically 1)")
    return [[Poly(_moment_coeffs(p, j + k)) for k in range(p.s)] for j in range(p.s)]


@lru_cache(maxsize=256)
def _efp_polynomial_cached(r: int, s: int, q: int) -> Poly:
    p = EfpParams(r, s, q)
    if s > r:
        return Poly()
    if s == 0:
        return Poly([1])
    mat = [[_moment_coeffs(p, j + k) for k in range(s)] for j in range(s)]
    det = det_int_poly(mat)
    shift = s * (s - 1) // 2
    low = det.coeffs[:shift]
    if any(low):
        raise ArithmeticError(
            f"Hankel determinant for {p.astuple()} is not divisible by alpha^{shift}"
        )
    reduced = Poly(det.coeffs[shift:])
    one_minus = Poly([1, -1]) ** (s * (s + q))
    return reduced * one_minus * _prefactor(p)


def efp_polynomial(p: EfpParams) -> Poly:
    """Exact F_{r,s,q} as a polynomial in alpha (zero polynomial when s > r)."""
    return _efp_polynomial_cached(p.r, p.s, p.q)


def efp_eval(p: EfpParams, alpha: Rational) -> Fraction:
    """Exact F_{r,s,q}(alpha) at a rational point.

    Goes through a rational determinant rather than the polynomial, which is
    much cheaper for large r and s.
    """
    alpha = as_fraction(alpha)
    if p.s > p.r:
        return Fraction(0)
    if p.s == 0:
        return Fraction(1)
    if alpha == 0:
        return Fraction(1)
    if alpha == 1:
        return Fraction(0)
    powers = [alpha ** m for m in range(p.r)]
    moments = [
        sum(c * a for c, a in zip(_moment_coeffs(p, n), powers)) for n in range(2 * p.s - 1)
    ]
    mat = [[moments[j + k] for k in range(p.s)] for j in range(p.s)]
    det = det_rational(mat)
    s, q = p.s, p.q
    return _prefactor(p) * (1 - alpha) ** (s * (s + q)) * det / alpha ** (s * (s - 1) // 2)


# Lattice enumeration ---------------------------------------------------------
#
# Edge states: horizontal edges carry "L" or "R", vertical edges "U" or "D".
# A vertex is read as (left, top) -> (right, bottom).  Type k of the weight
# table is stored with the pair of exponents it contributes to the squared
# weight (1-alpha)^a alpha^b.
_VERTEX_RULES: dict[tuple[str, str], list[tuple[int, str, str]]] = {
    ("R", "U"): [(1, "R", "U"), (5, "L", "D")],
    ("L", "D"): [(2, "L", "D"), (6, "R", "U")],
    ("R", "D"): [(3, "R", "D")],
    ("L", "U"): [(4, "L", "U")],
}
_SQUARED_EXPONENTS = {1: (1, 0), 2: (1, 0), 3: (0, 1), 4: (0, 1), 5: (0, 0), 6: (0, 0)}


def _row_transfer(top: tuple[str, ...], frozen_cols: int):
    """All ways to fill one row given the vertical states entering from above.

    Yields (bottom_states, (a, b)) with a, b the squared-weight exponents.
    The first ``frozen_cols`` vertices are forced to be type 2.
    """
    n = len(top)

    def walk(col, left, bottom, a, b):
        if col == n:
            if left == "R":  # right boundary arrows point outward
                yield tuple(bottom), (a, b)
            return
        for vtype, right, down in _VERTEX_RULES.get((left, top[col]), ()):
            if col < frozen_cols and vtype != 2:
                continue
            da, db = _SQUARED_EXPONENTS[vtype]
            bottom.append(down)
            yield from walk(col + 1, right, bottom, a + da, b + db)
            bottom.pop()

    yield from walk(0, "L", [], 0, 0)


def _weighted_counts(N: int, frozen_rows: int, frozen_cols: int) -> dict[tuple[int, int], int]:
    states: dict[tuple[str, ...], dict[tuple[int, int], int]] = {("D",) * N: {(0, 0): 1}}
    for row in range(N):
        cols = frozen_cols if row < frozen_rows else 0
        nxt: dict[tuple[str, ...], dict[tuple[int, int], int]] = defaultdict(lambda: defaultdict(int))
        for top, weights in states.items():
            for bottom, (da, db) in _row_transfer(top, cols):
                bucket = nxt[bottom]
                for (a, b), count in weights.items():
                    bucket[(a + da, b + db)] += count
        states = nxt
    return dict(states.get(("U",) * N, {}))


def _sum_weights(counts: dict[tuple[int, int], int], alpha: Fraction):
    if all(a % 2 == 0 and b % 2 == 0 for a, b in counts):
        return sum(
            (c * (1 - alpha) ** (a // 2) * alpha ** (b // 2) for (a, b), c in counts.items()),
            Fraction(0),
        ), None
    # odd type counts: fall back to square roots at working precision
    x = mpmath.mpf(alpha.numerator) / alpha.denominator
    total = mpmath.fsum(c * mpmath.sqrt(1 - x) ** a * mpmath.sqrt(x) ** b for (a, b), c in counts.items())
    return total, mpmath.mp.prec


def efp_enumerate(p: EfpParams, alpha: Rational) -> Fraction:
    """F_{r,s,q}(alpha) by summing over every DWBC configuration.

    Exponential in N; refused above N = 6.
    """
    alpha = as_fraction(alpha)
    if p.N > MAX_ENUMERATION_N:
        raise ValueError(f"enumeration limited to N = r+s+q <= {MAX_ENUMERATION_N}, got N = {p.N}")
    total, prec_total = _sum_weights(_weighted_counts(p.N, 0, 0), alpha)
    frozen, prec_frozen = _sum_weights(_weighted_counts(p.N, p.s, p.s + p.q), alpha)
    if prec_total is None and prec_frozen is None:
        return frozen / total
    return mpmath.mpf(frozen) / total


# Multiple contour integral ---------------------------------------------------

def _series_coeffs(p: EfpParams, upto: int) -> list[Poly]:
    """Taylor coefficients at z=0 of (alpha z + 1 - alpha)^(r+q) / (z-1)^s, in alpha."""
    r, s, q = p.r, p.s, p.q
    lin = Poly([1, -1])  # 1 - alpha
    numer = [lin ** (r + q - k) * Poly([0] * k + [math.comb(r + q, k)]) for k in range(r + q + 1)]
    sign = -1 if s % 2 else 1
    # (z-1)^{-s} = (-1)^s sum_n C(n+s-1, s-1) z^n
    geo = [sign * math.comb(n + s - 1, s - 1) for n in range(upto + 1)]
    out = []
    for n in range(upto + 1):
        acc = Poly()
        for k in range(min(n, r + q) + 1):
            acc = acc + numer[k] * geo[n - k]
        out.append(acc)
    return out


def _vandermonde_squared_terms(s: int) -> dict[tuple[int, ...], int]:
    terms: dict[tuple[int, ...], int] = {(0,) * s: 1}
    for j, k in itertools.combinations(range(s), 2):
        # multiply by (z_j - z_k)^2 = z_j^2 - 2 z_j z_k + z_k^2
        factor = []
        for ej, ek, c in ((2, 0, 1), (1, 1, -2), (0, 2, 1)):
            e = [0] * s
            e[j], e[k] = ej, ek
            factor.append((tuple(e), c))
        nxt: dict[tuple[int, ...], int] = defaultdict(int)
        for mono, c in terms.items():
            for e, d in factor:
                nxt[tuple(a + b for a, b in zip(mono, e))] += c * d
        terms = {m: c for m, c in nxt.items() if c}
    return terms


def efp_multi_integral(p: EfpParams) -> Poly:
    """F_{r,s,q} from the s-fold contour integral, by residue extraction at z = 0."""
    if p.s > MAX_INTEGRAL_S:
        raise ValueError(f"multiple-integral oracle limited to s <= {MAX_INTEGRAL_S}, got s = {p.s}")
    if p.s == 0:
        return Poly([1])
    r, s = p.r, p.s
    coeffs = _series_coeffs(p, r - 1)
    total = Poly()
    for mono, c in _vandermonde_squared_terms(s).items():
        if any(e > r - 1 for e in mono):
            continue
        term = Poly([c])
        for e in mono:
            term = term * coeffs[r - 1 - e]
        total = total + term
    sign = -1 if (s * (s + 1) // 2) % 2 else 1
    return total * Fraction(sign, math.factorial(s))
