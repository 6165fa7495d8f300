"""Seeded sweeps over parameter space for every identity checker.

A campaign is a list of *units*: one parameter set plus the (n, x) points to
check at it. Units are drawn sequentially from ``random.Random(seed)``, so the
same seed always yields the same units regardless of how many workers run
them. Random rationals are ``p/q`` with ``|p| <= 20`` and ``1 <= q <= 8``;
draws that violate a family's validity rules are rejected and redrawn.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import identities as ids
from .errors import DenominatorZero, InvalidParameters, ShiftedParamsInvalid, ZeroArgument
from .families import (
    ContHahnParams,
    HahnParams,
    KrawtchoukParams,
    RacahParams,
    Truncation,
    WilsonParams,
    racah_norm,
    racah_weight,
)

THREADS_ENV = "ASKEY_LADDER_THREADS"

P_MAX = 20
Q_MAX = 8
M_MAX = 6
CONTINUOUS_DEGREE = 4
WILSON_XS = (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2))
CONTINUOUS_XS = (Fraction(0), Fraction(1, 2), Fraction(1))
LIMIT_T0 = Fraction(64)
LIMIT_DOUBLINGS = 4

SKIPPABLE = (ShiftedParamsInvalid, DenominatorZero, ZeroArgument)


def random_rational(rng: random.Random, p_max: int = P_MAX, q_max: int = Q_MAX) -> Fraction:
    return Fraction(rng.randint(-p_max, p_max), rng.randint(1, q_max))


def random_probability(rng: random.Random, q_max: int = Q_MAX) -> Fraction:
    q = rng.randint(2, q_max)
    return Fraction(rng.randint(1, q - 1), q)


def random_racah(rng: random.Random, kind: Truncation, m: int) -> RacahParams:
    while True:
        free = {name: random_rational(rng) for name in ("alpha", "beta", "gamma", "delta")}
        try:
            return RacahParams.truncated(kind, m, **free)
        except InvalidParameters:
            continue


@dataclass(frozen=True)
class Unit:
    equation: str
    params: Any
    points: tuple


@dataclass
class CampaignResult:
    reports: list = field(default_factory=list)
    skipped: int = 0

    @property
    def checked(self) -> int:
        return len(self.reports)

    @property
    def passed(self) -> int:
        return sum(1 for r in self.reports if r.passed)

    @property
    def failed(self) -> int:
        return self.checked - self.passed

    def extend(self, other: CampaignResult) -> None:
        self.reports.extend(other.reports)
        self.skipped += other.skipped

    def summary_line(self) -> str:
        return (f"checked={self.checked} passed={self.passed} "
                f"skipped={self.skipped} failed={self.failed}")


# ----------------------------------------------------------------- samplers

def _grid(m: int) -> tuple:
    return tuple((n, x) for n in range(m + 1) for x in range(m + 1))


def _sample_racah_pair(rng, index):
    kind = list(Truncation)[index % 3]
    m = rng.randint(1, M_MAX)
    return random_racah(rng, kind, m), _grid(m)


def _sample_racah_orthogonality(rng, index):
    kind = list(Truncation)[index % 3]
    while True:
        params = random_racah(rng, kind, rng.randint(0, 5))
        try:
            for x in range(params.m + 1):
                racah_weight(params, x)
            for n in range(params.m + 1):
                racah_norm(params, n)
        except ZeroDivisionError:
            continue
        return params, ((None, None),)


def _sample_proof_identity(rng, index):
    params = tuple(random_rational(rng) for _ in range(3))
    return params, ((rng.randint(0, 10), rng.randint(0, 10)),)


def _sample_hahn(rng, index):
    while True:
        m = rng.randint(1, M_MAX)
        try:
            params = HahnParams(random_rational(rng), random_rational(rng), m)
        except InvalidParameters:
            continue
        return params, _grid(m - 1)


def _sample_krawtchouk(rng, index):
    m = rng.randint(1, M_MAX)
    return KrawtchoukParams(random_probability(rng), m), _grid(m - 1)


def _sample_limit(rng, index):
    case = list(ids.LimitCase)[index % 3]
    while True:
        m = rng.randint(1, M_MAX)
        try:
            base = HahnParams(random_rational(rng), random_rational(rng), m)
        except InvalidParameters:
            continue
        n, x = rng.randint(1, m), rng.randint(1, m)
        return (case, base, LIMIT_T0), ((n, x),)


def _continuous_points(xs) -> tuple:
    return tuple((n, x) for n in range(CONTINUOUS_DEGREE + 1) for x in xs)


def _sample_wilson(rng, index):
    params = WilsonParams(*(random_rational(rng) for _ in range(4)))
    return params, _continuous_points(WILSON_XS)


def _sample_cdual(rng, index):
    return (random_rational(rng), random_rational(rng)), _continuous_points(CONTINUOUS_XS)


def _sample_cont_hahn(rng, index):
    params = ContHahnParams(*(random_rational(rng) for _ in range(4)))
    return params, _continuous_points(CONTINUOUS_XS)


# ------------------------------------------------------------------ runners

def _limit(params, n, x):
    case, base, t0 = params
    reports, _ratios, _ok = ids.limit_ladder(case, base, n, x, t0, LIMIT_DOUBLINGS)
    return reports


def _orthogonality(params, n, x, as_printed=False):
    return [r for row in ids.check_racah_orthogonality(params, as_printed) for r in row]


EQUATIONS = {
    # name: (sampler, checker(params, n, x, **options), equations per point)
    "racah-pair": (_sample_racah_pair, ids.check_racah_pair, 2),
    "racah-composition": (_sample_racah_pair, ids.check_racah_composition, 1),
    "racah-orthogonality": (_sample_racah_orthogonality, _orthogonality, 1),
    "proof-identity": (_sample_proof_identity,
                       lambda p, k, x: ids.check_proof_identity(*p, k, x), 1),
    "hahn-shift-pair": (_sample_hahn, ids.check_hahn_shift_pair, 2),
    "krawtchouk-pair": (_sample_krawtchouk, ids.check_krawtchouk_pair, 2),
    "racah-hahn-limit": (_sample_limit, _limit, LIMIT_DOUBLINGS + 1),
    "wilson-recurrences": (_sample_wilson, ids.check_wilson_recurrences, 2),
    "wilson-difference-pair": (_sample_wilson, ids.check_wilson_difference_pair, 2),
    "wilson-composition": (_sample_wilson, ids.check_wilson_composition, 1),
    "cdual-hahn-reduction": (_sample_cdual,
                             lambda p, n, x: ids.check_cdual_hahn_reduction(*p, n, x), 1),
    "cont-hahn-pair": (_sample_cont_hahn, ids.check_cont_hahn_pair, 2),
}

OPTIONS = {
    "krawtchouk-pair": ("as_printed",),
    "racah-orthogonality": ("as_printed",),
}


def default_points(equation: str, params) -> tuple:
    """The (n, x) sweep a campaign would use for ``params``."""
    if equation in ("racah-pair", "racah-composition"):
        return _grid(params.m)
    if equation in ("hahn-shift-pair", "krawtchouk-pair"):
        return _grid(params.m - 1)
    if equation == "racah-orthogonality":
        return ((None, None),)
    if equation == "racah-hahn-limit":
        m = params[1].m
        return tuple((n, x) for n in range(1, m + 1) for x in range(1, m + 1))
    if equation == "proof-identity":
        return tuple((k, x) for k in range(4) for x in range(4))
    if equation.startswith("wilson"):
        return _continuous_points(WILSON_XS)
    return _continuous_points(CONTINUOUS_XS)


def sample_units(equation: str, count: int, seed: int) -> list[Unit]:
    sampler = EQUATIONS[equation][0]
    rng = random.Random(seed)
    units = []
    for index in range(count):
        params, points = sampler(rng, index)
        units.append(Unit(equation, params, points))
    return units


def run_unit(unit: Unit, options: dict | None = None) -> CampaignResult:
    _sampler, checker, arity = EQUATIONS[unit.equation]
    options = {k: v for k, v in (options or {}).items()
               if k in OPTIONS.get(unit.equation, ())}
    result = CampaignResult()
    for n, x in unit.points:
        try:
            out = checker(unit.params, n, x, **options)
        except SKIPPABLE:
            result.skipped += arity
            continue
        if isinstance(out, ids.ResidualReport):
            result.reports.append(out)
        else:
            result.reports.extend(out)
    return result


def _run_unit_args(args):
    return run_unit(*args)


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw == "":
        return 1
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        raise InvalidParameters(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


def run_units(units: list[Unit], options: dict | None = None,
              workers: int | None = None) -> CampaignResult:
    """Run units (in parallel when ``workers > 1``) and merge in unit order."""
    workers = worker_count() if workers is None else workers
    total = CampaignResult()
    if workers <= 1 or len(units) <= 1:
        parts = [run_unit(u, options) for u in units]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_unit_args, [(u, options) for u in units],
                                  chunksize=max(1, len(units) // (4 * workers))))
    for part in parts:
        total.extend(part)
    return total


def run_campaign(equation: str, count: int, seed: int, options: dict | None = None,
                 workers: int | None = None) -> CampaignResult:
    if equation not in EQUATIONS:
        raise KeyError(f"unknown equation {equation!r}")
    if count < 1:
        raise ValueError("campaign size must be positive")
    return run_units(sample_units(equation, count, seed), options, workers)

