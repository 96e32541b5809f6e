"""Exact arithmetic for the EFP engine.

Scalars are :class:`fractions.Fraction` (always in lowest terms, positive
denominator).  :class:`Poly` is an immutable univariate polynomial with
rational coefficients, used both for polynomials in ``alpha`` and, in the
Fredholm module, for polynomials in the spectral variable ``lambda``.
:class:`RatFun` is a canonical ratio of two such polynomials.

Floating evaluation goes through mpmath; :func:`precision` is the single
place where working precision is set.
"""

from __future__ import annotations

import contextlib
import functools
import math
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence, Union

import mpmath

Rational = Union[int, Fraction]

DEFAULT_PRECISION_BITS = 512


def as_fraction(x) -> Fraction:
    """Convert ``x`` to a Fraction, refusing floats (no binary drift)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        text = x.strip()
        if any(ch in text for ch in ".eE") and "/" not in text:
            raise ValueError(
                f"decimal value {x!r} rejected; give an exact rational such as '1/2'"
            )
        return Fraction(text)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def binomial(n: int, k: int) -> Fraction:
    """C(n, k) for n >= 0, zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError("binomial requires n >= 0")
    if k < 0 or k > n:
        return Fraction(0)
    return Fraction(math.comb(n, k))


@functools.lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    # sum_{k=0}^{m} C(m+1, k) B_k = 0 for m >= 1, B_0 = 1 (gives B_1 = -1/2).
    table = [Fraction(1)]
    for m in range(1, n + 1):
        acc = sum(math.comb(m + 1, k) * table[k] for k in range(m))
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with B_1 = -1/2."""
    if n < 0:
        raise ValueError("bernoulli requires n >= 0")
    if n > 1 and n % 2 == 1:
        return Fraction(0)
    return _bernoulli_table(n)[n]


@contextlib.contextmanager
def precision(bits: int | None = None) -> Iterator[int]:
    """Context manager setting mpmath's binary precision; yields the bits used."""
    bits = DEFAULT_PRECISION_BITS if bits is None else int(bits)
    if bits < 53:
        raise ValueError("precision below 53 bits is not supported")
    with mpmath.workprec(bits):
        yield bits


def to_mpf(x) -> mpmath.mpf:
    """Exact rational (or already-mpf) value as an mpf at the current precision."""
    if isinstance(x, mpmath.mpf):
        return +x
    x = as_fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


class Poly:
    """Immutable polynomial with exact rational coefficients.

    ``coeffs[k]`` multiplies ``x**k``; trailing zeros are trimmed so the
    zero polynomial has ``coeffs == ()`` and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational] = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # construction helpers
    @classmethod
    def const(cls, c: Rational) -> "Poly":
        return cls([c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def from_ints(cls, coeffs: Sequence[int]) -> "Poly":
        return cls(coeffs)

    # basic queries
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(f"{c}" if k == 0 else f"({c})*x^{k}")
        return "Poly(" + " + ".join(terms) + ")"

    # arithmetic
    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly([other])

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead()
        if len(rem) - 1 < dq:
            return Poly(), self
        quo = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] / lead
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(quo), Poly(rem[:dq])

    def __floordiv__(self, other) -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other) -> "Poly":
        return self.divmod(other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (1 / self.lead())

    # calculus and evaluation
    def deriv(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation; exact for rationals, follows the type of ``x`` otherwise."""
        if isinstance(x, int):
            x = Fraction(x)
        acc = 0 * x
        for c in reversed(self.coeffs):
            if isinstance(x, Fraction):
                acc = acc * x + c
            else:
                acc = acc * x + _lift(c, x)
        return acc

    def shift(self, c: Rational) -> "Poly":
        """Return q with q(t) = self(c + t) (Taylor recentering)."""
        return poly_recenter(self, c)

    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient (-1 for the zero polynomial)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return -1


def _lift(c: Fraction, like):
    # Fractions promoted to whatever numeric type `like` is (mpf, mpc, arb, acb).
    try:
        import flint  # noqa: F401

        if isinstance(like, (flint.arb, flint.acb)):
            return flint.arb(c.numerator) / c.denominator
    except ImportError:  # pragma: no cover
        pass
    if isinstance(like, (mpmath.mpf, mpmath.mpc)):
        return mpmath.mpf(c.numerator) / c.denominator
    return type(like)(c.numerator) / c.denominator if not isinstance(like, complex) else c.numerator / c.denominator


def poly_recenter(p: Poly, c: Rational) -> Poly:
    """q(t) = p(c + t), computed by repeated synthetic division."""
    c = as_fraction(c)
    if c == 0:
        return p
    work = list(p.coeffs)
    n = len(work)
    for i in range(n):
        for k in range(n - 2, i - 1, -1):
            work[k] += c * work[k + 1]
    return Poly(work)


def to_flint(p: Poly):
    """Poly -> flint.fmpq_poly (exact)."""
    import flint

    return flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in p.coeffs])


def from_flint(f) -> Poly:
    return Poly(Fraction(int(c.p), int(c.q)) for c in f.coeffs())


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q; gcd(0, 0) = 0.  Computed with FLINT's fmpq_poly."""
    if a.is_zero() and b.is_zero():
        return Poly()
    return from_flint(to_flint(a).gcd(to_flint(b))).monic()


class RatFun:
    """Canonical rational function num/den: gcd(num, den) = 1, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _canonical: bool = False):
        num = Poly._coerce(num)
        den = Poly([1]) if den is None else Poly._coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _canonical:
            if num.is_zero():
                den = Poly([1])
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
                lc = den.lead()
                if lc != 1:
                    num = num * (1 / lc)
                    den = den * (1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    @staticmethod
    def _coerce(other) -> "RatFun":
        if isinstance(other, RatFun):
            return other
        return RatFun(Poly._coerce(other))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, (RatFun, Poly, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFun({self.num!r} / {self.den!r})"

    def __add__(self, other) -> "RatFun":
        other = self._coerce(other)
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den, _canonical=True)

    def __sub__(self, other) -> "RatFun":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatFun":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RatFun":
        other = self._coerce(other)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFun":
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int) -> "RatFun":
        if n < 0:
            return RatFun(self.den, self.num) ** (-n)
        return RatFun(self.num ** n, self.den ** n, _canonical=True)

    def deriv(self) -> "RatFun":
        return RatFun(self.num.deriv() * self.den - self.num * self.den.deriv(), self.den ** 2)

    def __call__(self, x):
        return self.num(x) / self.den(x)


def ratfun_equal_zero(f: RatFun) -> bool:
    """True iff the canonical numerator is the zero polynomial."""
    return f.num.is_zero()


def bareiss_det(matrix: Sequence[Sequence], divexact: Callable, zero, one):
    """Fraction-free determinant over an integral domain.

    ``divexact(a, b)`` must return a/b knowing the division is exact.
    Works for ints, Fractions (pass ordinary division) and polynomial rings.
    """
    n = len(matrix)
    if n == 0:
        return one
    m = [list(row) for row in matrix]
    sign = 1
    prev = one
    for k in range(n - 1):
        if _is_zero(m[k][k]):
            for i in range(k + 1, n):
                if not _is_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return zero
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i, row_k = m[i], m[k]
            a_ik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = divexact(pivot * row_i[j] - a_ik * row_k[j], prev)
            row_i[k] = zero
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def _is_zero(x) -> bool:
    if isinstance(x, (Poly, IntPoly)):
        return x.is_zero()
    return x == 0


class IntPoly:
    """Minimal integer-coefficient polynomial used inside Bareiss elimination.

    Faster than :class:`Poly` because coefficients stay Python ints.
    """

    __slots__ = ("c",)

    def __init__(self, c: Sequence[int] = ()):
        c = list(c)
        while c and c[-1] == 0:
            c.pop()
        self.c = c

    def is_zero(self) -> bool:
        return not self.c

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.c, other.c
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.c, other.c
        out = list(a) + [0] * max(0, len(b) - len(a))
        for i, y in enumerate(b):
            out[i] -= y
        return IntPoly(out)

    def __neg__(self) -> "IntPoly":
        return IntPoly([-x for x in self.c])

    def divexact(self, other: "IntPoly") -> "IntPoly":
        num, den = list(self.c), other.c
        if not den:
            raise ZeroDivisionError("IntPoly division by zero")
        if not num:
            return IntPoly()
        dd = len(den) - 1
        lead = den[-1]
        quo = [0] * (len(num) - dd)
        for k in range(len(num) - 1 - dd, -1, -1):
            q, rem = divmod(num[k + dd], lead)
            if rem:
                raise ArithmeticError("IntPoly division is not exact")
            quo[k] = q
            if q:
                for j, y in enumerate(den):
                    num[k + j] -= q * y
        if any(num[:dd]):
            raise ArithmeticError("IntPoly division is not exact")
        return IntPoly(quo)

    def to_poly(self) -> Poly:
        return Poly(self.c)


def det_int_poly(matrix: Sequence[Sequence[Sequence[int]]]) -> Poly:
    """Exact determinant of a matrix of integer polynomials (coefficient lists)."""
    m = [[IntPoly(e) for e in row] for row in matrix]
    det = bareiss_det(m, lambda a, b: a.divexact(b), IntPoly(), IntPoly([1]))
    return det.to_poly()


def det_rational(matrix: Sequence[Sequence[Rational]]) -> Fraction:
    """Exact determinant of a rational matrix (Bareiss with exact Fraction division)."""
    m = [[as_fraction(e) for e in row] for row in matrix]
    return bareiss_det(m, lambda a, b: a / b, Fraction(0), Fraction(1))
