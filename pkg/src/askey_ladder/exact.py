"""Exact scalars: rationals, Gaussian rationals, Pochhammer symbols.

Rationals are :class:`fractions.Fraction`, which already keeps lowest terms
with a positive denominator. :class:`GaussianRational` adds an imaginary part
so that arguments like ``a + ix`` and shifts ``x - i/2`` stay exact.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

Rational = Fraction

_RAT = r"[+-]?\d+(?:/\d+)?"
_RATIONAL_RE = re.compile(rf"^\s*({_RAT})\s*$")
_GAUSSIAN_RE = re.compile(rf"^\s*({_RAT})\s*([+-])\s*(\d+(?:/\d+)?)\s*\*\s*i\s*$")


class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, value: Scalar) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value, 0)
        raise TypeError(f"cannot convert {type(value).__name__} to GaussianRational")

    def is_real(self) -> bool:
        return self.im == 0

    def conj(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """``z * conj(z)`` as a rational."""
        return self.re * self.re + self.im * self.im

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(self.re) if self.im == 0 else hash((self.re, self.im))
            object.__setattr__(self, "_hash", h)
        return h

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self.re, -self.im)

    def __pos__(self) -> GaussianRational:
        return self

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussianRational(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("GaussianRational division by zero")
            return GaussianRational(self.re / other, self.im / other)
        if isinstance(other, GaussianRational):
            n = other.norm()
            if n == 0:
                raise ZeroDivisionError("GaussianRational division by zero")
            c, d = other.re, other.im
            return GaussianRational(
                (self.re * c + self.im * d) / n, (self.im * c - self.re * d) / n
            )
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other) / self
        return NotImplemented

    def __pow__(self, k: int) -> GaussianRational:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return 1 / (self ** -k)
        result, base = GaussianRational(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self) -> str:
        return render(self)


Scalar = Union[int, Fraction, GaussianRational]

I = GaussianRational(0, 1)


def pochhammer(a: Scalar, k: int) -> Scalar:
    """Rising factorial ``a (a+1) ... (a+k-1)``; ``(a)_0 = 1``."""
    if k < 0:
        raise ValueError("pochhammer index must be nonnegative")
    result: Scalar = Fraction(1)
    for j in range(k):
        result = result * (a + j)
    return result


def factorial(k: int) -> Fraction:
    if k < 0:
        raise ValueError("factorial of a negative integer")
    return Fraction(math.factorial(k))


def i_power(n: int) -> GaussianRational:
    """``i**n`` without multiplication; period four."""
    return ((GaussianRational(1), I, GaussianRational(-1), GaussianRational(0, -1)))[n % 4]


def simplify(value: Scalar) -> Scalar:
    """Demote a Gaussian rational with zero imaginary part to a Fraction."""
    if isinstance(value, GaussianRational) and value.im == 0:
        return value.re
    if isinstance(value, int):
        return Fraction(value)
    return value


def _render_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render(value: Scalar) -> str:
    """``p/q`` for rationals; ``p/q+r/s*i`` (explicit sign) for Gaussian rationals."""
    if isinstance(value, GaussianRational):
        sign = "-" if value.im < 0 else "+"
        return f"{_render_rational(value.re)}{sign}{_render_rational(abs(value.im))}*i"
    return _render_rational(Fraction(value))


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not an exact rational literal: {text!r}")
    return _fraction(m.group(1))


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


def parse(text: str) -> Scalar:
    """Inverse of :func:`render`. Plain rationals come back as Fractions."""
    if _RATIONAL_RE.match(text):
        return parse_rational(text)
    m = _GAUSSIAN_RE.match(text)
    if not m:
        raise ValueError(f"not an exact rational or Gaussian rational literal: {text!r}")
    im = _fraction(m.group(3))
    if m.group(2) == "-":
        im = -im
    return GaussianRational(_fraction(m.group(1)), im)
