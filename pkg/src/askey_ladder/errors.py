"""Exception hierarchy shared by every module."""

from __future__ import annotations


class AskeyError(Exception):
    """Base class for all library errors."""


class PrematurePole(AskeyError, ZeroDivisionError):
    """A denominator Pochhammer factor vanished before the series terminated."""

    def __init__(self, k: int, parameter: object):
        self.k = k
        self.parameter = parameter
        super().__init__(f"denominator parameter {parameter} vanishes at term k={k}")


class PoleInWeight(AskeyError, ZeroDivisionError):
    pass


class PoleInNorm(AskeyError, ZeroDivisionError):
    pass


class InvalidParameters(AskeyError, ValueError):
    """A parameter record violates its construction-time invariants."""


class ShiftedParamsInvalid(InvalidParameters):
    """A parameter-shifted instance appearing in an identity is not evaluable."""


class DenominatorZero(AskeyError, ZeroDivisionError):
    pass


class ZeroArgument(AskeyError, ValueError):
    pass


class UnsupportedAngle(AskeyError, ValueError):
    pass


class NegativeRadicand(AskeyError, ValueError):
    def __init__(self, k: int, radicand: object):
        self.k = k
        self.radicand = radicand
        super().__init__(f"coupling radicand for k={k} is {radicand}, not positive")


class ConvergenceFailure(AskeyError, ArithmeticError):
    def __init__(self, index: int, iterations: int):
        self.index = index
        self.iterations = iterations
        super().__init__(f"eigenvalue {index} did not converge within {iterations} iterations")
