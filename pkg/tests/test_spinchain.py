from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from oracles import jacobi_eigenvalues

from askey_ladder.errors import ConvergenceFailure, DenominatorZero, NegativeRadicand
from askey_ladder.spinchain import (
    ChainSpec,
    TridiagonalMatrix,
    chain_report,
    couplings,
    evolve,
    hamiltonian,
    radicand,
    spectrum,
    transfer_fidelity,
)

H = Fraction(1, 2)
T_STAR = math.pi / (2 * math.sqrt(2))


def random_chain(rng: random.Random, m: int) -> ChainSpec:
    while True:
        a, b, d = (Fraction(rng.randint(-20, 20), rng.randint(1, 8)) for _ in range(3))
        try:
            return ChainSpec(m, a, b, d)
        except (NegativeRadicand, DenominatorZero):
            continue


def random_chains(seed: int, count: int, m_max: int = 20):
    rng = random.Random(seed)
    return [random_chain(rng, rng.randint(1, m_max)) for _ in range(count)]


# ---------------------------------------------------------------- couplings

@pytest.mark.parametrize("delta", [3, Fraction(-5, 2), Fraction(7, 3), 0, 1])
def test_two_site_coupling(delta):
    # the zero factors at 2*delta in {0, 2} cancel symbolically
    assert couplings(ChainSpec(1, 0, 0, delta)) == pytest.approx([math.sqrt(2)], rel=1e-15)


def test_two_site_coupling_alpha_half():
    assert couplings(ChainSpec(1, H, 0, 3))[0] == pytest.approx(math.sqrt(3), rel=1e-15)


def test_pole_in_coupling():
    with pytest.raises(DenominatorZero):
        ChainSpec(2, H, 0, H)


def test_negative_radicand():
    with pytest.raises(NegativeRadicand) as info:
        ChainSpec(1, -2, 0, 3)
    assert info.value.k == 0


def test_m_must_be_positive():
    with pytest.raises(ValueError):
        ChainSpec(0, 0, 0, 3)


def _radicand_expanded(m, alpha, beta, delta, k):
    """Radicand from expanded polynomials in delta, reduced by sympy, then evaluated."""
    D = sp.Symbol("delta")
    a, b, mm = sp.Rational(alpha), sp.Rational(beta), sp.Integer(m)
    if k % 2:
        num = (k + 1) * (mm - k) * (k - 2 * a + 2 * D - mm) * (k + 2 * b + 2 * D - 1)
    else:
        num = (k + 2 * a + 2) * (mm - k + 2 * b) * (k - mm + 2 * D - 1) * (k + 2 * D)
    den = (2 * k + 2 * D - mm - 1) * (2 * k + 2 * D - mm + 1)
    ratio = sp.cancel(sp.expand(num) / sp.expand(den))
    return ratio.subs(D, sp.Rational(delta))


def test_radicand_two_ways():
    rng = random.Random(11)
    checked = 0
    while checked < 60:
        m = rng.randint(1, 8)
        a, b, d = (Fraction(rng.randint(-20, 20), rng.randint(1, 8)) for _ in range(3))
        for k in range(m):
            try:
                exact = radicand(m, a, b, d, k)
            except DenominatorZero:
                continue
            expected = _radicand_expanded(m, str(a), str(b), str(d), k)
            assert sp.Rational(exact.numerator, exact.denominator) == expected
            checked += 1


# --------------------------------------------------------------- eigenvalues

def test_hamiltonian_shape():
    h = hamiltonian(ChainSpec(1, 0, 0, 3))
    assert h.dimension == 2
    np.testing.assert_allclose(h.dense(), [[0, math.sqrt(2)], [math.sqrt(2), 0]], rtol=1e-15)
    for chain in random_chains(3, 10):
        dense = hamiltonian(chain).dense()
        assert dense.shape == (chain.m + 1,) * 2
        assert np.array_equal(dense, dense.T)


def test_two_site_spectrum():
    s = spectrum(hamiltonian(ChainSpec(1, 0, 0, 3)))
    np.testing.assert_allclose(s.eigenvalues, [-math.sqrt(2), math.sqrt(2)], atol=1e-12)


def test_zero_matrix_spectrum():
    s = spectrum(TridiagonalMatrix(np.zeros(4), np.zeros(3)))
    assert np.all(s.eigenvalues == 0)
    np.testing.assert_array_equal(s.eigenvectors, np.eye(4))


def test_matches_jacobi_and_is_symmetric():
    for chain in random_chains(5, 40):
        h = hamiltonian(chain)
        s = spectrum(h)
        ref = jacobi_eigenvalues(h.dense())
        scale = max(1.0, float(np.max(np.abs(ref))))
        assert np.max(np.abs(s.eigenvalues - ref)) <= 1e-10 * scale
        assert np.max(np.abs(s.eigenvalues + s.eigenvalues[::-1])) <= 1e-10 * scale


def test_eigenpairs_and_orthonormality():
    for chain in random_chains(6, 30):
        h = hamiltonian(chain)
        s = spectrum(h)
        v = s.eigenvectors
        residual = h.matvec(v) - v * s.eigenvalues
        assert np.max(np.abs(residual)) <= 1e-10 * h.inf_norm()
        np.testing.assert_allclose(v.T @ v, np.eye(h.dimension), atol=1e-10)


def test_general_tridiagonal_against_numpy():
    rng = np.random.default_rng(0)
    for n in (1, 2, 5, 17, 40):
        h = TridiagonalMatrix(rng.normal(size=n), rng.normal(size=n - 1))
        np.testing.assert_allclose(spectrum(h).eigenvalues, np.linalg.eigvalsh(h.dense()),
                                   atol=1e-12)


def test_convergence_cap():
    h = TridiagonalMatrix(np.array([1.0, 2.0, 3.0]), np.array([1.0, 1.0]))
    with pytest.raises(ConvergenceFailure) as info:
        spectrum(h, max_iterations=1)
    assert info.value.iterations == 1
    assert len(spectrum(h).eigenvalues) == 3


def test_matrix_validation():
    with pytest.raises(ValueError):
        TridiagonalMatrix(np.zeros(3), np.zeros(3))
    with pytest.raises(ValueError):
        TridiagonalMatrix(np.array([0.0, np.nan]), np.zeros(1))


# ----------------------------------------------------------------- dynamics

def test_evolve_at_zero_is_identity():
    h = hamiltonian(ChainSpec(3, 0, 0, 5))
    np.testing.assert_allclose(evolve(h, 0.0, 2), [0, 0, 1, 0], atol=1e-14)


def test_unitarity():
    rng = random.Random(8)
    for chain in random_chains(8, 30):
        h = hamiltonian(chain)
        s = spectrum(h)
        for _ in range(5):
            amp = evolve(h, rng.uniform(0, 100), rng.randrange(h.dimension), s)
            assert abs(np.sum(np.abs(amp) ** 2) - 1) <= 1e-10


def test_two_site_perfect_transfer():
    chain = ChainSpec(1, 0, 0, 3)
    assert transfer_fidelity(chain, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert transfer_fidelity(chain, T_STAR) >= 1 - 1e-10
    for t in np.linspace(0, 3, 13):
        assert transfer_fidelity(chain, t) == pytest.approx(abs(math.sin(math.sqrt(2) * t)),
                                                            abs=1e-12)


def test_fidelity_time_reversal():
    for chain in random_chains(9, 10):
        for t in (0.3, 1.7, 12.5):
            assert transfer_fidelity(chain, t) == pytest.approx(transfer_fidelity(chain, -t),
                                                                abs=1e-12)


def test_evolve_rejects_bad_source():
    with pytest.raises(IndexError):
        evolve(hamiltonian(ChainSpec(1, 0, 0, 3)), 1.0, 2)


def test_chain_report():
    out = chain_report(ChainSpec(1, 0, 0, 3), [0.0, T_STAR])
    assert out["m"] == 1 and out["delta"] == "3"
    assert out["couplings"] == pytest.approx([math.sqrt(2)])
    assert out["fidelity_samples"][0] == {"t": 0.0, "fidelity": pytest.approx(0.0, abs=1e-15)}
    assert out["fidelity_samples"][1]["fidelity"] >= 1 - 1e-10
