"""Exact evaluation and identity checking for Racah/Wilson-level orthogonal polynomials."""

from .exact import GaussianRational, Rational, factorial, parse, pochhammer, render
from .families import (
    ContDualHahnParams,
    ContHahnParams,
    HahnParams,
    KrawtchoukParams,
    MeixnerPollaczekParams,
    RacahParams,
    Truncation,
    TruncationCase,
    WilsonParams,
    cont_dual_hahn_eval,
    cont_hahn_eval,
    hahn_eval,
    krawtchouk_eval,
    meixner_pollaczek_eval,
    racah_eval,
    racah_norm,
    racah_weight,
    wilson_eval,
)
from .hypergeom import TerminatingSeriesSpec, eval_terminating

__version__ = "0.1.0"
