"""Populations, fidelities, and trajectory summaries.

Populations are always reported against the nine logic states; full-space
states are projected through the embedding and whatever is left over counts
as leakage (only dissipation generates any).  Fidelity against a pure target
is |<target|psi>|^2 for pure states and <target|rho|target> for mixed ones.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix, StateVector
from .model import embed_state, logic_embedding, singlet_target
from .dynamics import Trajectory

# Indices (0-based) of the transiently populated logic states |2>,|4>,|5>,|6>,|8>,|9>.
INTERMEDIATE_INDICES = (1, 3, 4, 5, 7, 8)

_BASIS_RANK = {"eff4": 0, "logic9": 1, "full27": 2}


def _to_logic_or_full(state):
    if state.basis == "eff4":
        return embed_state(state, "logic9")
    if state.basis in ("logic9", "full27"):
        return state
    raise ValueError(f"populations need a logic9/full27/eff4 state, got basis {state.basis!r}")


def populations(state) -> np.ndarray:
    """P_1..P_9 over the logic states, using the embedding when needed."""
    state = _to_logic_or_full(state)
    if isinstance(state, StateVector):
        if state.basis == "logic9":
            return np.abs(state.amplitudes) ** 2
        coords = logic_embedding().project(state.amplitudes)
        return np.abs(coords) ** 2
    if isinstance(state, DensityMatrix):
        if state.basis == "logic9":
            return np.diag(state.entries).real.copy()
        p = logic_embedding().matrix
        return np.diag(p.conj().T @ state.entries @ p).real.copy()
    raise TypeError(f"expected StateVector or DensityMatrix, got {type(state).__name__}")


def leakage(state) -> float:
    """Population outside the logic sector; zero by construction off full27."""
    state = _to_logic_or_full(state)
    if state.basis != "full27":
        return 0.0
    if isinstance(state, StateVector):
        total = float(np.vdot(state.amplitudes, state.amplitudes).real)
    else:
        total = float(np.trace(state.entries).real)
    return max(0.0, total - float(np.sum(populations(state))))


def fidelity(state, target: StateVector) -> float:
    """Overlap with a pure target state, with automatic basis embedding."""
    if _BASIS_RANK.get(state.basis) is None or _BASIS_RANK.get(target.basis) is None:
        if state.basis != target.basis:
            raise ValueError(f"basis mismatch: {state.basis!r} vs {target.basis!r}")
    elif _BASIS_RANK[state.basis] < _BASIS_RANK[target.basis]:
        state = embed_state(state, target.basis)
    elif _BASIS_RANK[state.basis] > _BASIS_RANK[target.basis]:
        target = embed_state(target, state.basis)
    if isinstance(state, StateVector):
        return float(abs(np.vdot(target.amplitudes, state.amplitudes)) ** 2)
    if isinstance(state, DensityMatrix):
        return float(np.vdot(target.amplitudes, state.entries @ target.amplitudes).real)
    raise TypeError(f"expected StateVector or DensityMatrix, got {type(state).__name__}")


@dataclass(frozen=True)
class ObservableSeries:
    """Per-sample populations, fidelity, leakage, and norm/trace."""

    times: np.ndarray
    populations: np.ndarray  # shape (n_samples, 9)
    fidelity: np.ndarray
    leakage: np.ndarray
    norm_or_trace: np.ndarray

    @property
    def final_fidelity(self) -> float:
        return float(self.fidelity[-1])


def observable_series(traj: Trajectory, target: StateVector | None = None) -> ObservableSeries:
    if target is None:
        target = singlet_target("logic9")
    pops = np.array([populations(s) for s in traj.states])
    fids = np.array([fidelity(s, target) for s in traj.states])
    leaks = np.array([leakage(s) for s in traj.states])
    return ObservableSeries(
        times=traj.times,
        populations=pops,
        fidelity=fids,
        leakage=leaks,
        norm_or_trace=traj.norms,
    )


@dataclass(frozen=True)
class TrajectorySummary:
    final_fidelity: float
    final_populations: np.ndarray
    peak_intermediate_population: float  # max over time of P2+P4+P5+P6+P8+P9
    max_leakage: float
    norm_drift: float


def trajectory_summary(traj: Trajectory, target: StateVector | None = None) -> TrajectorySummary:
    if len(traj.states) == 0:
        raise ValueError("empty trajectory")
    series = observable_series(traj, target)
    intermediate = series.populations[:, INTERMEDIATE_INDICES].sum(axis=1)
    return TrajectorySummary(
        final_fidelity=series.final_fidelity,
        final_populations=series.populations[-1].copy(),
        peak_intermediate_population=float(np.max(intermediate)),
        max_leakage=float(np.max(series.leakage)),
        norm_drift=traj.norm_drift,
    )
