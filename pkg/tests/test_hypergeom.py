from __future__ import annotations

import random
from fractions import Fraction

import pytest
from conftest import rationals
from hypothesis import given
from hypothesis import strategies as st
from oracles import naive_series, to_sympy

from askey_ladder.errors import PrematurePole
from askey_ladder.exact import GaussianRational, simplify
from askey_ladder.hypergeom import TerminatingSeriesSpec, eval_terminating, hyper

H = Fraction(1, 2)


@pytest.mark.parametrize("num, den, n, expected", [
    ((0, 3, 5), (2, 7), 0, 1),
    ((-1, -1), (-2,), 1, H),
    ((-1, 5, -1, Fraction(-3, 2)), (2, Fraction(7, 2), -3), 1, Fraction(19, 14)),
])
def test_examples(num, den, n, expected):
    assert eval_terminating(TerminatingSeriesSpec(num, den, n)) == expected


def test_degree_must_match_a_numerator():
    with pytest.raises(ValueError):
        TerminatingSeriesSpec((1, 2), (3,), 2)
    with pytest.raises(ValueError):
        TerminatingSeriesSpec((0,), (3,), -1)


def test_premature_pole():
    # (-2)_k in the denominator vanishes at k=3 while -4 keeps the numerator alive
    with pytest.raises(PrematurePole) as info:
        hyper((-4, 1), (-2,), 4)
    assert info.value.k == 3


def test_integer_pair_cancels():
    # -x with x <= m terminates before -m can bite
    assert hyper((-3, 2, -1), (1, -2), 3) == naive_series((-3, 2, -1), (1, -2), 3)


def test_non_unit_argument():
    assert hyper((-2, -1), (-3,), 2, Fraction(2)) == 1 + Fraction(-2 * -1 * 2, -3)


def _pole(value) -> bool:
    value = simplify(value)
    return isinstance(value, Fraction) and value.denominator == 1 and value <= 0


params = st.lists(st.one_of(rationals(), st.builds(GaussianRational, rationals(), rationals())),
                  min_size=0, max_size=3)


@given(n=st.integers(0, 6), num=params, den=params, extra=rationals())
def test_permutation_and_padding_invariance(n, num, den, extra):
    den = [d for d in den if not _pole(d)]
    base = hyper([-n, *num], den, n)
    assert hyper([*reversed(num), -n], list(reversed(den)), n) == base
    if not _pole(extra):
        assert hyper([-n, *num, extra], [*den, extra], n) == base


def _random_spec(rng: random.Random) -> TerminatingSeriesSpec:
    def r():
        return Fraction(rng.randint(-20, 20), rng.randint(1, 8))

    n = rng.randint(0, 8)
    p = rng.randint(0, 3)
    num = [Fraction(-n)] + [r() for _ in range(p)]
    den = [r() for _ in range(rng.randint(0, 3))]
    rng.shuffle(num)
    z = Fraction(1) if rng.random() < 0.8 else r()
    return TerminatingSeriesSpec(tuple(num), tuple(den), n, z)


def test_agrees_with_naive_summation():
    rng = random.Random(2024)
    compared = poles = 0
    for _ in range(1000):
        spec = _random_spec(rng)
        try:
            expected = naive_series(spec.numerator, spec.denominator, spec.degree, spec.argument)
        except ZeroDivisionError:
            with pytest.raises(PrematurePole):
                eval_terminating(spec)
            poles += 1
            continue
        assert to_sympy(eval_terminating(spec)) == expected, spec
        compared += 1
    assert compared > 900
