"""Continuous-time quantum walks H(t) = exp(iAt) on graphs and derived graphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .derive import DerivedGraph
from .errors import NumericalFailure

EIGEN_GROUP_TOL = 1e-9
RETURN_TOL = 1e-6


def laplacian(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    return np.diag(a.sum(axis=1)) - a


@dataclass(frozen=True)
class WalkOperator:
    """Spectral decomposition ``A = sum_r θ_r E_r`` backing ``H(t)``."""

    spectrum: np.ndarray  # distinct eigenvalues θ_r
    projectors: tuple[np.ndarray, ...]  # E_r
    vectors: np.ndarray  # orthonormal eigenvectors, columns
    values: np.ndarray  # eigenvalue per column of ``vectors``

    @property
    def dimension(self) -> int:
        return self.vectors.shape[0]

    @classmethod
    def from_matrix(cls, a, hamiltonian: str = "adjacency") -> "WalkOperator":
        """Decompose a symmetric matrix.

        ``hamiltonian="laplacian"`` evolves under ``D - A`` instead; this is
        experimental and not used by any of the derived-graph analyses.
        """
        m = np.asarray(a, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("walk operator needs a square matrix")
        if not np.allclose(m, m.T, atol=0):
            raise ValueError("walk operator needs a symmetric matrix")
        if hamiltonian == "laplacian":
            m = laplacian(m)
        elif hamiltonian != "adjacency":
            raise ValueError(f"unknown hamiltonian {hamiltonian!r}")
        w, v = np.linalg.eigh(m)
        scale = max(1.0, float(np.abs(m).sum(axis=1).max(initial=0.0)))
        if np.abs(m @ v - v * w).max(initial=0.0) > 1e-8 * scale:
            raise NumericalFailure("eigendecomposition residual too large")
        # group numerically equal eigenvalues into eigenspaces
        groups, start = [], 0
        for i in range(1, len(w) + 1):
            if i == len(w) or w[i] - w[i - 1] > EIGEN_GROUP_TOL * scale:
                groups.append((start, i))
                start = i
        spectrum = np.array([w[s:e].mean() for s, e in groups])
        projectors = tuple(v[:, s:e] @ v[:, s:e].T for s, e in groups)
        values = np.concatenate([[spectrum[g]] * (e - s) for g, (s, e) in enumerate(groups)]) if groups else w
        return cls(spectrum, projectors, v, values)

    def at(self, t: float) -> np.ndarray:
        phase = np.exp(1j * self.values * t)
        return (self.vectors * phase) @ self.vectors.T

    def amplitude(self, u: int, v: int, t: float) -> complex:
        """``<v| H(t) |u>``."""
        phase = np.exp(1j * self.values * t)
        return complex(np.sum(self.vectors[v] * phase * self.vectors[u]))

    def _return_profile(self, times: np.ndarray) -> np.ndarray:
        """min_v |H(t)_{v,v}| for each time."""
        weights = self.vectors**2
        phases = np.exp(1j * np.outer(self.values, times))
        return np.abs(weights @ phases).min(axis=0)

    def _transfer_profile(self, u: int, v: int, times: np.ndarray) -> np.ndarray:
        coeff = self.vectors[u] * self.vectors[v]
        return np.abs(coeff @ np.exp(1j * np.outer(self.values, times)))


def transition_operator(a, t: float) -> np.ndarray:
    """``H(t) = exp(iAt)`` for a symmetric matrix ``a``."""
    return WalkOperator.from_matrix(a).at(t)


def amplitude(a, u: int, v: int, t: float) -> complex:
    """``H(t)_{v,u}``: amplitude at ``v`` after starting at ``u`` (0-based indices)."""
    return WalkOperator.from_matrix(a).amplitude(u, v, t)


@dataclass(frozen=True)
class ScanResult:
    time: Optional[float]
    fidelity: float

    @property
    def found(self) -> bool:
        return self.time is not None


def _scan(profile: Callable[[np.ndarray], np.ndarray], t_max: float, step: float, chunk: int = 4096) -> ScanResult:
    """Earliest refined peak of ``profile`` reaching ``1 - RETURN_TOL``.

    Grid local maxima above 0.9 are refined by bounded Brent search to 1e-9
    in time; a grid point may sit up to ``step/2`` from the true peak, so the
    grid value alone is not compared against the tolerance.
    """
    if step <= 0 or t_max <= 0:
        raise ValueError("step and t_max must be positive")
    best = 0.0
    # t = 0 is sampled so the trivial return there never counts as a peak
    grid = np.arange(0.0, t_max + step / 2, step)
    for lo in range(1, len(grid), chunk):
        ts = grid[lo - 1 : lo + chunk + 1]
        vals = profile(ts)
        best = max(best, float(vals[1:].max(initial=0.0)))
        padded = np.concatenate([[-np.inf], vals, [-np.inf]])
        peaks = np.nonzero((vals >= 0.9) & (vals >= padded[:-2]) & (vals >= padded[2:]))[0]
        for i in peaks[peaks > 0]:
            a, b = max(ts[i] - step, 1e-12), min(ts[i] + step, t_max)
            res = minimize_scalar(
                lambda t: -float(profile(np.array([t]))[0]),
                bounds=(a, b),
                method="bounded",
                options={"xatol": 1e-9},
            )
            peak = -float(res.fun)
            best = max(best, peak)
            if peak >= 1 - RETURN_TOL:
                return ScanResult(float(res.x), peak)
    return ScanResult(None, best)


def periodic_return_scan(a, t_max: float = 100.0, step: float = 0.01) -> ScanResult:
    """First time every vertex returns with |H(t)_{v,v}| >= 1 - 1e-6."""
    op = WalkOperator.from_matrix(a)
    return _scan(op._return_profile, t_max, step)


def pst_scan(a, u: int, v: int, t_max: float = 100.0, step: float = 0.01) -> ScanResult:
    """First time with |H(t)_{v,u}| >= 1 - 1e-6; otherwise the best fidelity seen."""
    if u == v:
        raise ValueError("perfect state transfer needs distinct vertices")
    op = WalkOperator.from_matrix(a)
    return _scan(lambda ts: op._transfer_profile(u, v, ts), t_max, step)


@dataclass(frozen=True)
class AmplitudeRow:
    index: int
    label: str
    tree: str
    amplitude: complex
    first_order: complex  # entry of I + iεA, the first-order approximation
    kind: str  # "diagonal" | "neighbor" | "non-neighbor"

    @property
    def magnitude(self) -> float:
        return abs(self.amplitude)


@dataclass(frozen=True)
class AmplitudeTable:
    epsilon: float
    initial: int
    initial_label: str
    rows: tuple[AmplitudeRow, ...]

    def of_kind(self, kind: str) -> list[AmplitudeRow]:
        return [r for r in self.rows if r.kind == kind]

    @property
    def norm(self) -> float:
        return float(sum(r.magnitude**2 for r in self.rows))


def infinitesimal_table(d: DerivedGraph, initial, epsilon: float = 1e-3) -> AmplitudeTable:
    """Exact ``H(ε)|initial>`` with each row classified by magnitude.

    Rows of magnitude at least ``ε/2`` off the diagonal are neighbours (the
    first-order term is ``iε`` there); smaller rows are non-neighbours, whose
    amplitude starts at second order.
    """
    if not 0 < epsilon <= 0.1:
        raise ValueError("epsilon must lie in (0, 0.1]")
    start = d.find(initial) if isinstance(initial, str) else int(initial)
    a = d.adjacency_matrix()
    column = WalkOperator.from_matrix(a).at(epsilon)[:, start]
    rows = []
    for i, amp in enumerate(column):
        if i == start:
            kind = "diagonal"
        elif abs(amp) >= epsilon / 2:
            kind = "neighbor"
        else:
            kind = "non-neighbor"
        approx = (1.0 if i == start else 0.0) + 1j * epsilon * a[i, start]
        rows.append(AmplitudeRow(i, d.label(i), d.vertices[i].tree.describe(d.base), complex(amp), approx, kind))
    return AmplitudeTable(epsilon, start, d.label(start), tuple(rows))
