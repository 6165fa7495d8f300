"""Exact residual checks for the difference-equation pairs and their relatives.

Every checker evaluates both sides of one equation at a single point and
returns a :class:`ResidualReport` holding ``lhs - rhs``. Exact checks pass
only when the residual is exactly zero. A point where some polynomial in the
equation (parameter-shifted ones included) cannot be evaluated raises
:class:`ShiftedParamsInvalid` or :class:`DenominatorZero`, and sweep drivers
count it as skipped.

Shift operators ``exp(-+ (i/2) d/dx)`` act by substitution ``f(x -+ i/2)``,
carried out in Gaussian-rational arithmetic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import (
    DenominatorZero,
    InvalidParameters,
    PrematurePole,
    ShiftedParamsInvalid,
    ZeroArgument,
)
from .exact import GaussianRational, I, Scalar, pochhammer, render, simplify
from .families import (
    ContDualHahnParams,
    ContHahnParams,
    HahnParams,
    KrawtchoukParams,
    RacahParams,
    Truncation,
    WilsonParams,
    cont_dual_hahn_eval,
    cont_hahn_eval,
    hahn_eval,
    krawtchouk_eval,
    racah_eval,
    racah_norm,
    racah_polynomial,
    racah_weight,
    wilson_eval,
)

HALF = Fraction(1, 2)
HALF_I = GaussianRational(0, HALF)


class EquationId(enum.Enum):
    RacahPair1 = "RacahPair1"
    RacahPair2 = "RacahPair2"
    RacahComposition = "RacahComposition"
    RacahOrthogonality = "RacahOrthogonality"
    ProofIdentity = "ProofIdentity"
    HahnShiftPair1 = "HahnShiftPair1"
    HahnShiftPair2 = "HahnShiftPair2"
    KrawtchoukPair1 = "KrawtchoukPair1"
    KrawtchoukPair2 = "KrawtchoukPair2"
    WilsonRec1 = "WilsonRec1"
    WilsonRec2 = "WilsonRec2"
    WilsonDiff1 = "WilsonDiff1"
    WilsonDiff2 = "WilsonDiff2"
    WilsonComposition = "WilsonComposition"
    CDualHahnReduction = "CDualHahnReduction"
    ContHahnPair1 = "ContHahnPair1"
    ContHahnPair2 = "ContHahnPair2"
    RacahToHahnLimit = "RacahToHahnLimit"


@dataclass(frozen=True)
class ResidualReport:
    equation: EquationId
    params: str
    n: int | None
    x: Scalar | None
    residual: Scalar | float
    exact: bool
    passed: bool
    l: int | None = None
    variant: str | None = None

    def to_json(self) -> dict:
        out = {
            "equationId": self.equation.value,
            "params": self.params,
            "n": self.n,
            "x": None if self.x is None else render(self.x),
            "residual": render(self.residual) if self.exact else repr(float(self.residual)),
            "exact": self.exact,
            "pass": self.passed,
        }
        if self.l is not None:
            out["l"] = self.l
        if self.variant is not None:
            out["variant"] = self.variant
        return out


def render_params(**named) -> str:
    parts = []
    for key, value in named.items():
        if isinstance(value, enum.Enum):
            value = value.value
        parts.append(f"{key}={value if isinstance(value, str) else render(value)}")
    return "(" + ", ".join(parts) + ")"


def _exact_report(eq, params, n, x, residual, **extra) -> ResidualReport:
    residual = simplify(residual)
    return ResidualReport(eq, params, n, x, residual, True, residual == 0, **extra)


def _guarded(fn: Callable[[], Scalar]) -> Scalar:
    try:
        return fn()
    except (PrematurePole, InvalidParameters) as exc:
        raise ShiftedParamsInvalid(str(exc)) from exc


def _require_nonzero(value: Scalar, what: str) -> None:
    if value == 0:
        raise DenominatorZero(f"{what} vanishes")


# ---------------------------------------------------------------- Racah pair

def _racah_params_text(p: RacahParams) -> str:
    return render_params(alpha=p.alpha, beta=p.beta, gamma=p.gamma, delta=p.delta,
                         trunc=p.truncation.kind, m=Fraction(p.m))


def racah_pair_sides(alpha, beta, gamma, delta, n: int, x: Scalar):
    """Both sides of the Racah pair for a raw parameter tuple.

    The pair intertwines ``R_n`` at ``(alpha, beta, gamma, delta - 1)`` with
    ``R_n`` at ``(alpha + 1, beta - 1, gamma, delta)``. Returns
    ``((lhs1, rhs1), (lhs2, rhs2))``.
    """
    a, b, g, d = alpha, beta, gamma, delta
    den1 = 2 * x + g + d + 1
    den2 = 2 * x + g + d + 2
    _require_nonzero(den1, "2x+gamma+delta+1")
    _require_nonzero(den2, "2x+gamma+delta+2")
    _require_nonzero(a + 1, "alpha+1")

    def lowered(y):  # R_n(lambda(y); alpha, beta, gamma, delta - 1)
        return _guarded(lambda: racah_polynomial(n, y, a, b, g, d - 1))

    def raised(y):  # R_n(lambda(y); alpha + 1, beta - 1, gamma, delta)
        return _guarded(lambda: racah_polynomial(n, y, a + 1, b - 1, g, d))

    low_x, low_x1 = lowered(x), lowered(x + 1)
    up_x, up_x1 = raised(x), raised(x + 1)
    lhs1 = ((x + g + 1) * (x + b + d) * low_x1 - (x - b + g + 1) * (x + d) * low_x) / den1
    rhs1 = (n + a + 1) * (n + b) / (a + 1) * up_x
    lhs2 = ((x + a + 2) * (x + g + d + 1) * up_x1 - (x + 1) * (x - a + g + d) * up_x) / den2
    rhs2 = (a + 1) * low_x1
    return (lhs1, rhs1), (lhs2, rhs2)


def check_racah_pair(params: RacahParams, n: int, x: int):
    (l1, r1), (l2, r2) = racah_pair_sides(*params.as_tuple(), n, x)
    text = _racah_params_text(params)
    return (_exact_report(EquationId.RacahPair1, text, n, x, l1 - r1),
            _exact_report(EquationId.RacahPair2, text, n, x, l2 - r2))


def check_racah_composition(params: RacahParams, n: int, x: int) -> ResidualReport:
    """Second-order equation obtained by feeding the second relation into the first.

    With ``g = R_n(.; alpha+1, beta-1, gamma, delta)`` and ``B`` the operator of
    the second relation, the first relation's operator applied to
    ``y -> (B g)(y - 1)`` returns ``(n+alpha+1)(n+beta) g``.
    """
    a, b, g, d = params.as_tuple()

    def raised(y):
        return _guarded(lambda: racah_polynomial(n, y, a + 1, b - 1, g, d))

    def second(y):
        den = 2 * y + g + d + 2
        _require_nonzero(den, "2x+gamma+delta+2")
        return ((y + a + 2) * (y + g + d + 1) * raised(y + 1)
                - (y + 1) * (y - a + g + d) * raised(y)) / den

    den1 = 2 * x + g + d + 1
    _require_nonzero(den1, "2x+gamma+delta+1")
    lhs = ((x + g + 1) * (x + b + d) * second(x) - (x - b + g + 1) * (x + d) * second(x - 1)) / den1
    rhs = (n + a + 1) * (n + b) * raised(x)
    return _exact_report(EquationId.RacahComposition, _racah_params_text(params), n, x, lhs - rhs)


def check_proof_identity(beta, gamma, delta, k: int, x: int) -> ResidualReport:
    """The scalar identity that closes the proof of the first Racah relation."""
    b, g, d = beta, gamma, delta
    lhs = b * (k - x - 1) * (x + g + d) - k * (x + g + 1) * (x + b + d)
    rhs = (b + k) * (k - x - 1) * (x + g + d + k) - k * (g + k) * (b + d + k - 1)
    text = render_params(beta=b, gamma=g, delta=d, k=Fraction(k))
    return _exact_report(EquationId.ProofIdentity, text, k, x, Fraction(lhs - rhs))


def check_racah_orthogonality(params: RacahParams, as_printed: bool = False):
    """Residual matrix of ``sum_x w(x) R_l R_n - h_n delta_ln`` for ``0 <= l, n <= m``."""
    m = params.m
    weights = [racah_weight(params, x) for x in range(m + 1)]
    values = [[racah_eval(params, n, x) for x in range(m + 1)] for n in range(m + 1)]
    norms = [racah_norm(params, n, as_printed=as_printed) for n in range(m + 1)]
    text = _racah_params_text(params)
    variant = "as-printed" if as_printed else None
    table = []
    for l in range(m + 1):
        row = []
        for n in range(m + 1):
            total = sum((w * values[l][x] * values[n][x] for x, w in enumerate(weights)),
                        Fraction(0))
            if l == n:
                total -= norms[n]
            row.append(_exact_report(EquationId.RacahOrthogonality, text, n, None, total,
                                     l=l, variant=variant))
        table.append(row)
    return table


# ---------------------------------------------------------- Hahn / Krawtchouk

def check_hahn_shift_pair(params: HahnParams, n: int, x: int):
    """The pair linking ``Q_n(.; alpha, beta, m)`` with ``Q_n(.; alpha, beta, m-1)``."""
    m = params.m
    if m < 1 or not 0 <= n <= m - 1:
        raise InvalidParameters(f"need 0 <= n <= m-1 with m >= 1, got n={n}, m={m}")
    a, b = params.alpha, params.beta
    lower = _guarded(lambda: HahnParams(a, b, m - 1))

    def q_m(y):
        return _guarded(lambda: hahn_eval(params, n, y))

    def q_lower(y):
        return _guarded(lambda: hahn_eval(lower, n, y))

    e1 = (x + 1) * q_lower(x) - (x - m + 1) * q_lower(x + 1) - m * q_m(x + 1)
    e2 = (m * (x - b - m) * q_m(x) - m * (x + a + 1) * q_m(x + 1)
          - (n - m) * (n + a + b + m + 1) * q_lower(x))
    text = render_params(alpha=a, beta=b, m=Fraction(m))
    return (_exact_report(EquationId.HahnShiftPair1, text, n, x, e1),
            _exact_report(EquationId.HahnShiftPair2, text, n, x, e2))


def check_krawtchouk_pair(params: KrawtchoukParams, n: int, x: int, as_printed: bool = False):
    """Krawtchouk pair; the first equation uses ``(m-x-1)`` unless ``as_printed``.

    The variant with ``(m-x+1)`` leaves a residual of exactly 2 at n=0.
    """
    m, p = params.m, params.p
    if m < 1 or not 0 <= n <= m - 1:
        raise InvalidParameters(f"need 0 <= n <= m-1 with m >= 1, got n={n}, m={m}")
    lower = KrawtchoukParams(p, m - 1)

    def k_m(y):
        return krawtchouk_eval(params, n, y)

    def k_lower(y):
        return krawtchouk_eval(lower, n, y)

    coeff = (m - x + 1) if as_printed else (m - x - 1)
    e1 = (x + 1) * k_lower(x) + coeff * k_lower(x + 1) - m * k_m(x + 1)
    e2 = m * (1 - p) * k_m(x) + m * p * k_m(x + 1) - (m - n) * k_lower(x)
    text = render_params(p=p, m=Fraction(m))
    variant = "as-printed" if as_printed else None
    return (_exact_report(EquationId.KrawtchoukPair1, text, n, x, e1, variant=variant),
            _exact_report(EquationId.KrawtchoukPair2, text, n, x, e2))


# -------------------------------------------------------- Racah -> Hahn limits

class LimitCase(enum.Enum):
    GAMMA_INF = "gamma-inf"      # gamma + 1 = -m, delta = t
    DELTA_TIED = "delta-tied"    # delta = -beta - m - 1, gamma = t
    ALPHA_SHIFT = "alpha-shift"  # alpha + 1 = -m, beta -> beta + gamma + m + 1, delta = t


def limit_racah_params(case: LimitCase, base: HahnParams, t: Fraction) -> RacahParams:
    """Racah parameters whose ``t -> oo`` limit is ``Q_n(x; base)``.

    In the alpha-shift recipe the Racah ``gamma`` plays the Hahn ``alpha`` and the
    Racah ``beta`` is the Hahn ``beta`` shifted by ``gamma + m + 1``.
    """
    a, b, m = base.alpha, base.beta, base.m
    case = LimitCase(case)
    if case is LimitCase.GAMMA_INF:
        return RacahParams.truncated(Truncation.GAMMA, m, alpha=a, beta=b, delta=t)
    if case is LimitCase.DELTA_TIED:
        return RacahParams.truncated(Truncation.BETA_DELTA, m, alpha=a, beta=b, gamma=t)
    return RacahParams.truncated(Truncation.ALPHA, m, beta=b + a + m + 1, gamma=a, delta=t)


def check_racah_to_hahn_limit(case: LimitCase, base: HahnParams, n: int, x: int,
                              t: Fraction) -> ResidualReport:
    """``|R_n(limit params at t) - Q_n(x; base)|`` as a float.

    Both values are exact; only the final magnitude is rounded. ``passed`` is
    provisional (True); the verdict comes from :func:`limit_ladder`.
    """
    case = LimitCase(case)
    t = Fraction(t)
    racah = _guarded(lambda: limit_racah_params(case, base, t))
    value = _guarded(lambda: racah_eval(racah, n, x))
    target = _guarded(lambda: hahn_eval(base, n, x))
    residual = float(abs(Fraction(value - target)))
    text = render_params(case=case.value, alpha=base.alpha, beta=base.beta,
                         m=Fraction(base.m), t=t)
    return ResidualReport(EquationId.RacahToHahnLimit, text, n, x, residual, False, True)


RATIO_BAND = (1.8, 2.2)


def limit_ladder(case: LimitCase, base: HahnParams, n: int, x: int,
                 t0: Fraction = Fraction(64), doublings: int = 4,
                 band: tuple[float, float] = RATIO_BAND):
    """Residuals along ``t0, 2 t0, ..., 2^doublings t0`` and the decay verdict.

    The ladder passes when every successive ratio lies in ``band``, or when all
    residuals are exactly zero (n=0 or x=0, where both sides equal 1).
    Returns ``(reports, ratios, ok)`` with every report's ``passed`` set to ``ok``.
    """
    reports = [check_racah_to_hahn_limit(case, base, n, x, t0 * 2 ** j)
               for j in range(doublings + 1)]
    residuals = [r.residual for r in reports]
    if all(r == 0 for r in residuals):
        ratios, ok = [], True
    elif any(r == 0 for r in residuals):
        ratios, ok = [], False
    else:
        ratios = [residuals[j] / residuals[j + 1] for j in range(doublings)]
        ok = all(band[0] <= q <= band[1] for q in ratios)
    reports = [ResidualReport(r.equation, r.params, r.n, r.x, r.residual, False, ok)
               for r in reports]
    return reports, ratios, ok


# ------------------------------------------------------------------- Wilson

def _wilson_text(p: WilsonParams) -> str:
    return render_params(a=p.a, b=p.b, c=p.c, d=p.d)


def _wilson(params: WilsonParams, n: int, x: Scalar) -> Scalar:
    if n < 0:
        return Fraction(0)
    return _guarded(lambda: wilson_eval(params, n, x))


def check_wilson_recurrences(params: WilsonParams, n: int, x: Scalar):
    """Contiguous relations between ``W(.; a,b,c,d)`` and ``W(.; a,b,c,d+1)``."""
    a, b, c, d = params.a, params.b, params.c, params.d
    s = a + b + c + d
    _require_nonzero(2 * n + s - 1, "2n+a+b+c+d-1")
    _require_nonzero(2 * n + s, "2n+a+b+c+d")
    up = params.shifted(dd=1)
    w = _wilson(params, n, x)
    w_up = _wilson(up, n, x)
    rhs1 = ((n + s - 1) * w_up
            - n * (n + a + b - 1) * (n + a + c - 1) * (n + b + c - 1) * _wilson(up, n - 1, x)
            ) / (2 * n + s - 1)
    lhs2 = (x * x + d * d) * w_up
    rhs2 = ((n + a + d) * (n + b + d) * (n + c + d) * w - _wilson(params, n + 1, x)) / (2 * n + s)
    text = _wilson_text(params)
    return (_exact_report(EquationId.WilsonRec1, text, n, x, w - rhs1),
            _exact_report(EquationId.WilsonRec2, text, n, x, lhs2 - rhs2))


def wilson_operator(u: Scalar, v: Scalar, f: Callable[[Scalar], Scalar], x: Scalar) -> Scalar:
    """``[(u+ix)(v+ix) f(x - i/2) - (u-ix)(v-ix) f(x + i/2)] / (2ix)``."""
    if x == 0:
        raise ZeroArgument("the difference operator carries 1/(2ix)")
    ix = I * x
    return ((u + ix) * (v + ix) * f(x - HALF_I) - (u - ix) * (v - ix) * f(x + HALF_I)) / (2 * ix)


def check_wilson_difference_pair(params: WilsonParams, n: int, x: Scalar):
    """Shift pair between ``W(.; a+1/2, b+1/2, c, d)`` and ``W(.; a, b, c+1/2, d+1/2)``."""
    a, b, c, d = params.a, params.b, params.c, params.d
    ab = params.shifted(da=HALF, db=HALF)
    cd = params.shifted(dc=HALF, dd=HALF)
    e1 = (wilson_operator(a, b, lambda y: _wilson(ab, n, y), x)
          - (n + a + b) * _wilson(cd, n, x))
    e2 = (wilson_operator(c, d, lambda y: _wilson(cd, n, y), x)
          - (n + c + d) * _wilson(ab, n, x))
    text = _wilson_text(params)
    return (_exact_report(EquationId.WilsonDiff1, text, n, x, e1),
            _exact_report(EquationId.WilsonDiff2, text, n, x, e2))


def check_wilson_composition(params: WilsonParams, n: int, x: Scalar) -> ResidualReport:
    """Second operator after the first returns ``(n+a+b)(n+c+d)`` times the input."""
    a, b, c, d = params.a, params.b, params.c, params.d
    ab = params.shifted(da=HALF, db=HALF)

    def f(y):
        return _wilson(ab, n, y)

    def first(y):
        return wilson_operator(a, b, f, y)

    lhs = wilson_operator(c, d, first, x)
    rhs = (n + a + b) * (n + c + d) * f(x)
    return _exact_report(EquationId.WilsonComposition, _wilson_text(params), n, x, lhs - rhs)


def cdual_hahn_constant(a, b, n: int) -> Fraction:
    """Ratio ``W_n(x^2; a+1/2, b+1/2, a, b) / S_n(4x^2; 2a, 2b, 1/2)``.

    Both sides are degree-n polynomials in ``x^2``. The Wilson leading
    coefficient is ``(-1)^n (n+2a+2b)_n``; the dual Hahn one in ``y^2 = 4x^2``
    is ``(-1)^n``, hence ``(n+2a+2b)_n / 4^n``. It equals 1 at n=0 and
    ``(1+2a+2b)/4`` at n=1.
    """
    return pochhammer(n + 2 * a + 2 * b, n) / Fraction(4) ** n


def check_cdual_hahn_reduction(a, b, n: int, x: Scalar) -> ResidualReport:
    """At ``c=a, d=b`` both Wilson shift equations act on ``W_n(.; a, a+1/2, b, b+1/2)``,
    which is a fixed multiple of ``S_n(4x^2; 2a, 2b, 1/2)``."""
    a, b = Fraction(a), Fraction(b)
    wilson = _wilson(WilsonParams(a + HALF, b + HALF, a, b), n, x)
    dual = _guarded(lambda: cont_dual_hahn_eval(ContDualHahnParams(2 * a, 2 * b, HALF), n, 2 * x))
    residual = wilson - cdual_hahn_constant(a, b, n) * dual
    return _exact_report(EquationId.CDualHahnReduction, render_params(a=a, b=b), n, x, residual)


# --------------------------------------------------------- continuous Hahn

def cont_hahn_operator(u: Scalar, v: Scalar, f: Callable[[Scalar], Scalar], x: Scalar) -> Scalar:
    """``(ix + u) f(x - i/2) - (ix - v) f(x + i/2)``."""
    ix = I * x
    return (ix + u) * f(x - HALF_I) - (ix - v) * f(x + HALF_I)


def check_cont_hahn_pair(params: ContHahnParams, n: int, x: Scalar):
    a, b, c, d = params.a, params.b, params.c, params.d
    bd = params.shifted(db=HALF, dd=HALF)
    ac = params.shifted(da=HALF, dc=HALF)

    def p_bd(y):
        return _guarded(lambda: cont_hahn_eval(bd, n, y))

    def p_ac(y):
        return _guarded(lambda: cont_hahn_eval(ac, n, y))

    e1 = cont_hahn_operator(b, d, p_bd, x) - (n + b + d) * p_ac(x)
    e2 = cont_hahn_operator(a, c, p_ac, x) - (n + a + c) * p_bd(x)
    text = render_params(a=a, b=b, c=c, d=d)
    return (_exact_report(EquationId.ContHahnPair1, text, n, x, e1),
            _exact_report(EquationId.ContHahnPair2, text, n, x, e2))
