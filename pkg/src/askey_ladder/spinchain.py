"""Nearest-neighbour hopping chain with Racah-derived couplings.

The chain has ``m + 1`` sites and couplings ``J_0 .. J_{m-1}``. In the
single-excitation sector the Hamiltonian is the symmetric tridiagonal matrix
with zero diagonal and ``J_k`` on the off-diagonals. Radicands are exact
rationals; the square root is the only floating-point step before the
eigensolver.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ConvergenceFailure, DenominatorZero, NegativeRadicand
from .exact import render


def _cancel(numerator: list[Fraction], denominator: list[Fraction]) -> tuple[Fraction, Fraction]:
    """Multiply out a ratio of factor lists after removing equal factors pairwise.

    Every factor here has the form ``2*delta + const``, so two factors with
    equal values are the same linear function of delta and cancel exactly.
    """
    num, den = Counter(numerator), Counter(denominator)
    common = num & den
    num -= common
    den -= common
    top, bottom = Fraction(1), Fraction(1)
    for f, k in num.items():
        top *= f ** k
    for f, k in den.items():
        bottom *= f ** k
    return top, bottom


def radicand_factors(m: int, alpha, beta, delta, k: int) -> tuple[list[Fraction], list[Fraction]]:
    """Numerator and denominator factors of the ``J_k^2`` radicand."""
    a, b, d = Fraction(alpha), Fraction(beta), Fraction(delta)
    den = [2 * k + 2 * d - m - 1, 2 * k + 2 * d - m + 1]
    if k % 2:
        # (k+1)(m-k) f(alpha, beta, delta)
        num = [Fraction(k + 1), Fraction(m - k), k - 2 * a + 2 * d - m, k + 2 * b + 2 * d - 1]
    else:
        # (k+2alpha+2)(m-k+2beta) g(delta)
        num = [k + 2 * a + 2, m - k + 2 * b, k - m + 2 * d - 1, k + 2 * d]
    return [Fraction(f) for f in num], [Fraction(f) for f in den]


def radicand(m: int, alpha, beta, delta, k: int) -> Fraction:
    num, den = radicand_factors(m, alpha, beta, delta, k)
    top, bottom = _cancel(num, den)
    if bottom == 0:
        raise DenominatorZero(f"coupling {k}: 2k+2delta-m-+1 vanishes without cancellation")
    return top / bottom


@dataclass(frozen=True)
class ChainSpec:
    m: int
    alpha: Fraction
    beta: Fraction
    delta: Fraction
    radicands: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m!r}")
        for name in ("alpha", "beta", "delta"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        values = []
        for k in range(self.m):
            r = radicand(self.m, self.alpha, self.beta, self.delta, k)
            if r <= 0:
                raise NegativeRadicand(k, r)
            values.append(r)
        object.__setattr__(self, "radicands", tuple(values))


def couplings(spec: ChainSpec) -> np.ndarray:
    return np.array([math.sqrt(r) for r in spec.radicands], dtype=np.float64)


@dataclass(frozen=True)
class TridiagonalMatrix:
    diagonal: np.ndarray
    off_diagonal: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diagonal, dtype=np.float64)
        e = np.asarray(self.off_diagonal, dtype=np.float64)
        if d.ndim != 1 or e.shape != (max(len(d) - 1, 0),):
            raise ValueError("off-diagonal must have one entry fewer than the diagonal")
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
            raise ValueError("matrix entries must be finite")
        object.__setattr__(self, "diagonal", d)
        object.__setattr__(self, "off_diagonal", e)

    @property
    def dimension(self) -> int:
        return len(self.diagonal)

    def dense(self) -> np.ndarray:
        return np.diag(self.diagonal) + np.diag(self.off_diagonal, 1) + np.diag(self.off_diagonal, -1)

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = self.diagonal[:, None] * v if v.ndim == 2 else self.diagonal * v
        out = np.array(out, dtype=np.result_type(v, np.float64))
        e = self.off_diagonal
        out[:-1] += e[:, None] * v[1:] if v.ndim == 2 else e * v[1:]
        out[1:] += e[:, None] * v[:-1] if v.ndim == 2 else e * v[:-1]
        return out

    def inf_norm(self) -> float:
        a = np.abs(self.diagonal).copy()
        a[:-1] += np.abs(self.off_diagonal)
        a[1:] += np.abs(self.off_diagonal)
        return float(a.max()) if len(a) else 0.0


def hamiltonian(spec: ChainSpec) -> TridiagonalMatrix:
    return TridiagonalMatrix(np.zeros(spec.m + 1), couplings(spec))


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray   # ascending
    eigenvectors: np.ndarray  # column s pairs with eigenvalues[s]


def spectrum(h: TridiagonalMatrix, max_iterations: int | None = None) -> Spectrum:
    """Eigendecomposition by the implicit-shift QL method (tql2).

    Each eigenvalue gets at most ``max_iterations`` sweeps, ``30 * dimension``
    by default.
    """
    n = h.dimension
    d = [float(v) for v in h.diagonal]
    e = [float(v) for v in h.off_diagonal] + [0.0]
    z = np.eye(n)
    cap = 30 * n if max_iterations is None else max_iterations
    eps = np.finfo(np.float64).eps

    for l in range(n):
        iterations = 0
        while True:
            # Find a negligible off-diagonal element to split the matrix.
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            if iterations == cap:
                raise ConvergenceFailure(l, cap)
            iterations += 1

            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    # Underflow: deflate and restart this eigenvalue.
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                col = z[:, i + 1].copy()
                z[:, i + 1] = s * z[:, i] + c * col
                z[:, i] = c * z[:, i] - s * col
                i -= 1
            else:
                d[l] -= p
                e[l] = g
                e[m] = 0.0

    values = np.array(d)
    order = np.argsort(values, kind="stable")
    return Spectrum(values[order], z[:, order])


def evolve(h: TridiagonalMatrix, t: float, source: int, spec: Spectrum | None = None) -> np.ndarray:
    """Amplitudes ``<j| exp(-iHt) |source>`` by spectral synthesis."""
    if not 0 <= source < h.dimension:
        raise IndexError(f"source site {source} outside 0..{h.dimension - 1}")
    spec = spec or spectrum(h)
    v = spec.eigenvectors
    phases = np.exp(-1j * spec.eigenvalues * t)
    return v @ (phases * v[source, :])


def transfer_fidelity(chain: ChainSpec, t: float, spec: Spectrum | None = None) -> float:
    """``|<m| exp(-iHt) |0>|``, end-to-end transfer amplitude."""
    h = hamiltonian(chain)
    amplitude = evolve(h, t, 0, spec)[chain.m]
    return float(min(abs(amplitude), 1.0))


def chain_report(chain: ChainSpec, times) -> dict:
    """JSON-ready summary: couplings, eigenvalues and fidelity samples."""
    h = hamiltonian(chain)
    spec = spectrum(h)
    return {
        "m": chain.m,
        "alpha": render(chain.alpha),
        "beta": render(chain.beta),
        "delta": render(chain.delta),
        "couplings": [float(j) for j in h.off_diagonal],
        "eigenvalues": [float(v) for v in spec.eigenvalues],
        "fidelity_samples": [
            {"t": float(t), "fidelity": transfer_fidelity(chain, float(t), spec)} for t in times
        ],
    }
