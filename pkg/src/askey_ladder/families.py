"""Named polynomial families built on the terminating-series kernel.

Racah and Wilson sit at the 4F3 level; Hahn, continuous Hahn and continuous
dual Hahn at 3F2; Krawtchouk and Meixner-Pollaczek at 2F1. Continuous Hahn,
continuous dual Hahn and Meixner-Pollaczek use the usual hypergeometric
normalizations; each evaluator's docstring spells its formula out.

Parameter records validate themselves on construction. The ``*_polynomial``
functions evaluate raw, unvalidated parameter tuples; the identity checkers
need them because parameter-shifted instances leave the truncated family.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidParameters, PoleInNorm, PoleInWeight, UnsupportedAngle
from .exact import GaussianRational, I, Scalar, factorial, i_power, pochhammer, simplify
from .hypergeom import hyper


def _q(value) -> Fraction:
    if isinstance(value, GaussianRational):
        if value.im:
            raise InvalidParameters(f"expected a real parameter, got {value}")
        return value.re
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _is_nonpositive_integer(value: Fraction) -> bool:
    return value.denominator == 1 and value <= 0


# --------------------------------------------------------------------- Racah

class Truncation(enum.Enum):
    ALPHA = "alpha"            # alpha + 1 = -m
    BETA_DELTA = "beta-delta"  # beta + delta + 1 = -m
    GAMMA = "gamma"            # gamma + 1 = -m


@dataclass(frozen=True)
class TruncationCase:
    kind: Truncation
    m: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 0:
            raise InvalidParameters(f"m must be a nonnegative integer, got {self.m!r}")
        object.__setattr__(self, "kind", Truncation(self.kind))


@dataclass(frozen=True)
class RacahParams:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction
    truncation: TruncationCase

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta"):
            object.__setattr__(self, name, _q(getattr(self, name)))
        m = self.m
        if self._truncated_parameter() != -m:
            raise InvalidParameters(
                f"{self.truncation.kind.value} truncation requires the designated "
                f"combination + 1 to equal -{m}"
            )
        # (p)_k must not vanish for k <= m; the truncated parameter -m is safe.
        for label, p in zip(("alpha+1", "beta+delta+1", "gamma+1"), self.denominators()):
            if _is_nonpositive_integer(p) and p > -m:
                raise InvalidParameters(f"{label} = {p} gives a premature pole for m={m}")

    @classmethod
    def truncated(cls, kind: Truncation | str, m: int, alpha=None, beta=None, gamma=None,
                  delta=None) -> RacahParams:
        """Build a record, solving the truncation condition for the missing parameter."""
        kind = Truncation(kind)
        if kind is Truncation.ALPHA:
            alpha = Fraction(-m - 1)
        elif kind is Truncation.GAMMA:
            gamma = Fraction(-m - 1)
        elif beta is None:
            beta = Fraction(-m - 1) - _q(delta)
        else:
            delta = Fraction(-m - 1) - _q(beta)
        return cls(alpha, beta, gamma, delta, TruncationCase(kind, m))

    @property
    def m(self) -> int:
        return self.truncation.m

    def _truncated_parameter(self) -> Fraction:
        kind = self.truncation.kind
        if kind is Truncation.ALPHA:
            return self.alpha + 1
        if kind is Truncation.BETA_DELTA:
            return self.beta + self.delta + 1
        return self.gamma + 1

    def denominators(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.alpha + 1, self.beta + self.delta + 1, self.gamma + 1)

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.alpha, self.beta, self.gamma, self.delta)

    def lam(self, x: Scalar) -> Scalar:
        """The lattice ``lambda(x) = x (x + gamma + delta + 1)``."""
        return x * (x + self.gamma + self.delta + 1)


def racah_polynomial(n: int, x: Scalar, alpha, beta, gamma, delta) -> Scalar:
    """``R_n(lambda(x); alpha, beta, gamma, delta)`` for a raw parameter tuple."""
    return hyper(
        (-n, n + alpha + beta + 1, -x, x + gamma + delta + 1),
        (alpha + 1, beta + delta + 1, gamma + 1),
        n,
    )


def racah_eval(params: RacahParams, n: int, x: Scalar) -> Scalar:
    if not 0 <= n <= params.m:
        raise InvalidParameters(f"degree {n} outside 0..{params.m}")
    return racah_polynomial(n, x, *params.as_tuple())


def racah_weight(params: RacahParams, x: int) -> Fraction:
    a, b, g, d = params.as_tuple()
    num = (pochhammer(a + 1, x) * pochhammer(b + d + 1, x) * pochhammer(g + 1, x)
           * pochhammer(g + d + 1, x) * pochhammer((g + d + 3) / 2, x))
    den = (pochhammer(-a + g + d + 1, x) * pochhammer(-b + g + 1, x)
           * pochhammer((g + d + 1) / 2, x) * pochhammer(d + 1, x) * factorial(x))
    if den == 0:
        raise PoleInWeight(f"weight denominator vanishes at x={x}")
    return num / den


def racah_multiplier(params: RacahParams) -> Fraction:
    """The constant ``M``; its form depends on which parameter truncates."""
    a, b, g, d = params.as_tuple()
    m = params.m
    kind = params.truncation.kind
    if kind is Truncation.ALPHA:
        num = pochhammer(-b, m) * pochhammer(g + d + 2, m)
        den = pochhammer(-b + g + 1, m) * pochhammer(d + 1, m)
    elif kind is Truncation.BETA_DELTA:
        num = pochhammer(-a + d, m) * pochhammer(g + d + 2, m)
        den = pochhammer(-a + g + d + 1, m) * pochhammer(d + 1, m)
    else:
        num = pochhammer(a + b + 2, m) * pochhammer(-d, m)
        den = pochhammer(a - d + 1, m) * pochhammer(b + 1, m)
    if den == 0:
        raise PoleInNorm(f"multiplier denominator vanishes for {kind.value} truncation")
    return num / den


def racah_norm(params: RacahParams, n: int, as_printed: bool = False) -> Fraction:
    """Squared norm ``h_n`` of ``R_n`` under :func:`racah_weight`.

    ``as_printed=True`` drops the ``(alpha - delta + 1)_n`` factor. That variant
    disagrees with the brute-force sum for n >= 1 and exists for comparison.
    """
    a, b, g, d = params.as_tuple()
    num = (pochhammer(n + a + b + 1, n) * pochhammer(a + b - g + 1, n)
           * pochhammer(b + 1, n) * factorial(n))
    if not as_printed:
        num *= pochhammer(a - d + 1, n)
    den = (pochhammer(a + b + 2, 2 * n) * pochhammer(a + 1, n)
           * pochhammer(b + d + 1, n) * pochhammer(g + 1, n))
    if den == 0:
        raise PoleInNorm(f"norm denominator vanishes at n={n}")
    return racah_multiplier(params) * num / den


# -------------------------------------------------------------------- Wilson

@dataclass(frozen=True)
class WilsonParams:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, _q(getattr(self, name)))

    def max_degree(self) -> int | None:
        """Largest degree free of poles in ``(a+b)_n (a+c)_n (a+d)_n``, or None."""
        bounds = [int(-s) for s in (self.a + self.b, self.a + self.c, self.a + self.d)
                  if _is_nonpositive_integer(s)]
        return min(bounds) if bounds else None

    def shifted(self, da=0, db=0, dc=0, dd=0) -> WilsonParams:
        return WilsonParams(self.a + da, self.b + db, self.c + dc, self.d + dd)


def wilson_eval(params: WilsonParams, n: int, x: Scalar) -> Scalar:
    """``W_n(x^2; a, b, c, d)``; ``x`` may be a Gaussian rational."""
    a, b, c, d = params.a, params.b, params.c, params.d
    ix = I * x
    series = hyper((-n, n + a + b + c + d - 1, a + ix, a - ix), (a + b, a + c, a + d), n)
    prefactor = pochhammer(a + b, n) * pochhammer(a + c, n) * pochhammer(a + d, n)
    return simplify(prefactor * series)


# --------------------------------------------------------------------- Hahn

@dataclass(frozen=True)
class HahnParams:
    alpha: Fraction
    beta: Fraction
    m: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", _q(self.alpha))
        object.__setattr__(self, "beta", _q(self.beta))
        if not isinstance(self.m, int) or self.m < 0:
            raise InvalidParameters(f"m must be a nonnegative integer, got {self.m!r}")
        a1 = self.alpha + 1
        if _is_nonpositive_integer(a1) and a1 > -self.m:
            raise InvalidParameters(f"alpha+1 = {a1} gives a premature pole for m={self.m}")


def hahn_eval(params: HahnParams, n: int, x: Scalar) -> Scalar:
    """``Q_n(x; alpha, beta, m)``, a polynomial of degree n in x for n <= m."""
    if not 0 <= n <= params.m:
        raise InvalidParameters(f"degree {n} outside 0..{params.m}")
    return hyper((-n, n + params.alpha + params.beta + 1, -x), (params.alpha + 1, -params.m), n)


# --------------------------------------------------------------- Krawtchouk

@dataclass(frozen=True)
class KrawtchoukParams:
    p: Fraction
    m: int

    def __post_init__(self):
        object.__setattr__(self, "p", _q(self.p))
        if not 0 < self.p < 1:
            raise InvalidParameters(f"p must lie strictly between 0 and 1, got {self.p}")
        if not isinstance(self.m, int) or self.m < 0:
            raise InvalidParameters(f"m must be a nonnegative integer, got {self.m!r}")


def krawtchouk_eval(params: KrawtchoukParams, n: int, x: Scalar) -> Scalar:
    """``K_n(x; p, m) = 2F1(-n, -x; -m; 1/p)``."""
    if not 0 <= n <= params.m:
        raise InvalidParameters(f"degree {n} outside 0..{params.m}")
    return hyper((-n, -x), (-params.m,), n, argument=1 / params.p)


# ------------------------------------------------------- continuous families

@dataclass(frozen=True)
class ContHahnParams:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, _q(getattr(self, name)))

    def shifted(self, da=0, db=0, dc=0, dd=0) -> ContHahnParams:
        return ContHahnParams(self.a + da, self.b + db, self.c + dc, self.d + dd)


def cont_hahn_eval(params: ContHahnParams, n: int, x: Scalar) -> Scalar:
    """``p_n(x; a, b, c, d) = i^n (a+c)_n (a+d)_n / n! 3F2(-n, n+a+b+c+d-1, a+ix; a+c, a+d; 1)``."""
    a, b, c, d = params.a, params.b, params.c, params.d
    series = hyper((-n, n + a + b + c + d - 1, a + I * x), (a + c, a + d), n)
    prefactor = i_power(n) * (pochhammer(a + c, n) * pochhammer(a + d, n) / factorial(n))
    return simplify(prefactor * series)


@dataclass(frozen=True)
class ContDualHahnParams:
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, _q(getattr(self, name)))


def cont_dual_hahn_eval(params: ContDualHahnParams, n: int, x: Scalar) -> Scalar:
    """``S_n(x^2; a, b, c) = (a+b)_n (a+c)_n 3F2(-n, a+ix, a-ix; a+b, a+c; 1)``."""
    a, b, c = params.a, params.b, params.c
    ix = I * x
    series = hyper((-n, a + ix, a - ix), (a + b, a + c), n)
    return simplify(pochhammer(a + b, n) * pochhammer(a + c, n) * series)


@dataclass(frozen=True)
class MeixnerPollaczekParams:
    """``lam > 0``; ``phi`` is the angle in units of pi (``phi=1/2`` is a right angle)."""

    lam: Fraction
    phi: Fraction = Fraction(1, 2)

    def __post_init__(self):
        object.__setattr__(self, "lam", _q(self.lam))
        object.__setattr__(self, "phi", _q(self.phi))
        if self.lam <= 0:
            raise InvalidParameters(f"lambda must be positive, got {self.lam}")
        if not 0 < self.phi < 1:
            raise InvalidParameters(f"phi must lie in (0, pi), got {self.phi}*pi")


def meixner_pollaczek_eval(params: MeixnerPollaczekParams, n: int, x: Scalar) -> Scalar:
    """``P_n^(lam)(x; phi) = (2 lam)_n / n! e^{i n phi} 2F1(-n, lam+ix; 2 lam; 1 - e^{-2 i phi})``.

    Exact only at ``phi = pi/2``, where ``e^{i phi} = i`` and the argument is 2.
    """
    if params.phi != Fraction(1, 2):
        raise UnsupportedAngle(f"exact evaluation needs phi = pi/2, got {params.phi}*pi")
    lam = params.lam
    series = hyper((-n, lam + I * x), (2 * lam,), n, argument=Fraction(2))
    prefactor = i_power(n) * (pochhammer(2 * lam, n) / factorial(n))
    return simplify(prefactor * series)


FAMILIES = (
    "racah", "wilson", "hahn", "krawtchouk", "cont-hahn", "cont-dual-hahn", "meixner-pollaczek",
)
