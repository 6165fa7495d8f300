"""Terminating generalized hypergeometric series, evaluated exactly."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import PrematurePole
from .exact import Scalar, simplify


@dataclass(frozen=True)
class TerminatingSeriesSpec:
    """``pFq(num; den; z)`` where one numerator parameter equals ``-degree``.

    ``argument`` defaults to 1. The only other values in use are the constant
    arguments of the Krawtchouk (``1/p``) and Meixner-Pollaczek (``2``) series.
    """

    numerator: tuple[Scalar, ...]
    denominator: tuple[Scalar, ...]
    degree: int
    argument: Scalar = field(default=Fraction(1))

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(self.numerator))
        object.__setattr__(self, "denominator", tuple(self.denominator))
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        if not any(p == -self.degree for p in self.numerator):
            raise ValueError(f"no numerator parameter equals -{self.degree}")


def eval_terminating(spec: TerminatingSeriesSpec) -> Scalar:
    """Sum ``sum_k prod (num)_k / prod (den)_k * z^k / k!`` for ``k = 0..n``.

    Terms are updated incrementally. The series stops as soon as a numerator
    factor vanishes; a denominator factor that vanishes at the same step is
    cancelled against it (``-i`` over ``-j`` with ``i <= j``). A denominator
    zero with a nonzero numerator raises :class:`PrematurePole`.
    """
    term: Scalar = Fraction(1)
    total: Scalar = Fraction(1)
    z = spec.argument
    for k in range(1, spec.degree + 1):
        num: Scalar = z
        for a in spec.numerator:
            num = num * (a + (k - 1))
        if not num:
            break
        den: Scalar = Fraction(k)
        for b in spec.denominator:
            factor = b + (k - 1)
            if not factor:
                raise PrematurePole(k, b)
            den = den * factor
        term = term * num / den
        total = total + term
    return simplify(total)


def hyper(numerator: Sequence[Scalar], denominator: Sequence[Scalar], degree: int,
          argument: Scalar = Fraction(1)) -> Scalar:
    return eval_terminating(TerminatingSeriesSpec(tuple(numerator), tuple(denominator),
                                                  degree, argument))

