"""Self-checks: every structural invariant of the model in one report.

Each check returns a CheckResult with the measured defect so the report is
useful even when green.  The check functions accept injectable pieces
(alternative Hamiltonian terms, jump rates) so tests can verify that broken
physics is actually caught.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .dynamics import integrate_lindblad, integrate_schrodinger
from .linalg import ALGEBRAIC_TOL, StateVector
from .model import (
    collapse_operators,
    dark_state,
    effective_hamiltonian_matrix,
    hamiltonian_terms,
    initial_state,
    logic_embedding,
    singlet_state,
    singlet_target,
    swap23_matrix,
)
from .observables import fidelity
from .params import SimulationParams
from .pulses import PulseSchedule

RNG_SEED = 20240917


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    defect: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.name}: defect {self.defect:.3e} vs tol {self.tolerance:.0e}{extra}"


def _result(name, defect, tol, detail="") -> CheckResult:
    return CheckResult(name, bool(defect <= tol), float(defect), float(tol), detail)


def check_hermiticity(params: SimulationParams | None = None, n_times: int = 10) -> CheckResult:
    params = params or SimulationParams()
    rng = np.random.default_rng(RNG_SEED)
    times = rng.uniform(params.t_start_over_T, params.t_end_over_T, n_times)
    worst = 0.0
    for model in ("full27", "logic9", "eff4"):
        terms = hamiltonian_terms(params, model)
        for t in times:
            h = terms.at(float(t))
            worst = max(worst, float(np.max(np.abs(h - h.conj().T))))
    return _result("hamiltonian_hermiticity", worst, ALGEBRAIC_TOL)


def check_sector_restriction(params: SimulationParams | None = None,
                             logic_terms=None, n_times: int = 10) -> CheckResult:
    """P+ H_full(t) P must equal the 9x9 logic Hamiltonian entrywise."""
    params = params or SimulationParams()
    logic = logic_terms if logic_terms is not None else hamiltonian_terms(params, "logic9")
    full = hamiltonian_terms(params, "full27")
    p = logic_embedding().matrix
    rng = np.random.default_rng(RNG_SEED + 1)
    worst = 0.0
    for t in rng.uniform(params.t_start_over_T, params.t_end_over_T, n_times):
        restricted = p.conj().T @ full.at(float(t)) @ p
        worst = max(worst, float(np.max(np.abs(restricted - logic.at(float(t))))))
    return _result("sector_restriction", worst, ALGEBRAIC_TOL)


def check_exchange_symmetry(params: SimulationParams | None = None) -> CheckResult:
    params = params or SimulationParams()
    swap = swap23_matrix()
    terms = hamiltonian_terms(params, "full27")
    worst = 0.0
    for t in (-2.0, -0.5, 0.0, 0.7, 3.0):
        h = terms.at(t)
        worst = max(worst, float(np.max(np.abs(h @ swap - swap @ h))))
    return _result("exchange_symmetry_commutator", worst, ALGEBRAIC_TOL)


def check_logic_basis() -> CheckResult:
    basis = logic_embedding()
    gram = basis.matrix.conj().T @ basis.matrix
    defect = float(np.max(np.abs(gram - np.eye(9))))
    swap = swap23_matrix()
    for v in basis.states:
        defect = max(defect, float(np.max(np.abs(swap @ v.amplitudes + v.amplitudes))))
    return _result("logic_basis_orthonormal_antisymmetric", defect, ALGEBRAIC_TOL)


def check_dark_state(n_draws: int = 20) -> CheckResult:
    rng = np.random.default_rng(RNG_SEED + 2)
    worst = 0.0
    for _ in range(n_draws):
        w1, w2 = rng.uniform(0.01, 2.0, size=2)
        h = effective_hamiltonian_matrix(float(w1), float(w2), delta=1.0)
        d = dark_state(float(w1), float(w2))
        worst = max(worst, float(np.max(np.abs(h @ d.amplitudes))))
    return _result("dark_state_annihilation", worst, ALGEBRAIC_TOL)


def check_boundary_limits(params: SimulationParams | None = None) -> CheckResult:
    """Pump/Stokes ratio ~0 at the window start and ~1 at the end."""
    params = params or SimulationParams()
    schedule = PulseSchedule.from_params(params)
    start = schedule.pump01(params.t_start_over_T) / schedule.stokes02(params.t_start_over_T)
    end = schedule.pump01(params.t_end_over_T) / schedule.stokes02(params.t_end_over_T)
    defect = max(float(start), float(abs(end - 1.0)))
    return _result("pulse_boundary_limits", defect, 1e-3)


def check_rabi_oracle() -> CheckResult:
    """Two-level resonant drive: P_e(t) = sin^2(Omega t)."""
    omega = 0.775
    h = np.array([[0.0, omega], [omega, 0.0]], dtype=np.complex128)
    t_end = 0.25 * math.pi / omega  # Omega*t = pi/4
    params = SimulationParams(omega0_T=1.0, t_start_over_T=0.0, t_end_over_T=t_end,
                              dt_over_T=1e-4)
    psi0 = StateVector("d2", np.array([1.0, 0.0], dtype=np.complex128))
    traj = integrate_schrodinger(lambda t: h, psi0, params)
    p_e = abs(traj.final_state.amplitudes[1]) ** 2
    defect = abs(p_e - math.sin(omega * t_end) ** 2)
    return _result("rabi_oracle", defect, 1e-8)


def check_decay_oracle() -> CheckResult:
    """Isolated atom in |e>, H = 0: rho_ee(t) = exp(-gamma_e t)."""
    from .linalg import DensityMatrix, OperatorMatrix
    from .model import JumpOperator

    gamma_e = 0.37
    t_end = 2.0
    params = SimulationParams(omega0_T=1.0, t_start_over_T=0.0, t_end_over_T=t_end,
                              dt_over_T=1e-3)
    lower_g0 = np.zeros((3, 3), dtype=np.complex128)
    lower_g0[0, 2] = 1.0
    lower_g1 = np.zeros((3, 3), dtype=np.complex128)
    lower_g1[1, 2] = 1.0
    jumps = (
        JumpOperator("S_g0", OperatorMatrix("d3", lower_g0), gamma_e / 2.0),
        JumpOperator("S_g1", OperatorMatrix("d3", lower_g1), gamma_e / 2.0),
    )
    rho0 = DensityMatrix("d3", np.diag([0.0, 0.0, 1.0]).astype(np.complex128))
    zero = np.zeros((3, 3), dtype=np.complex128)
    traj = integrate_lindblad(lambda t: zero, jumps, rho0, params)
    rho_ee = traj.final_state.entries[2, 2].real
    defect = abs(rho_ee - math.exp(-gamma_e * t_end))
    return _result("decay_oracle", defect, 1e-8)


def check_singlet_embedding() -> CheckResult:
    s3 = singlet_state(3)
    target = singlet_target("full27")
    defect = float(np.max(np.abs(s3.amplitudes - target.amplitudes)))
    return _result("singlet_matches_dark_state_limit", defect, ALGEBRAIC_TOL)


def check_norm_conservation(params: SimulationParams | None = None) -> CheckResult:
    params = params or SimulationParams()
    traj = integrate_schrodinger(hamiltonian_terms(params, "logic9"),
                                 initial_state(params.with_(model="logic9")), params)
    return _result("unitary_norm_conservation", traj.norm_drift, 1e-6)


def check_lindblad_trace(params: SimulationParams | None = None, jumps=None) -> CheckResult:
    """Trace preservation on a short dissipative run; jumps injectable."""
    params = params or SimulationParams(
        U_over_omega0=5.0, t_start_over_T=-1.0, t_end_over_T=1.0,
        model="full27", dissipation="lindblad", gamma_e_over_omega0=0.01,
    )
    jumps = jumps if jumps is not None else collapse_operators(params)
    rho0 = initial_state(params).to_density_matrix()
    traj = integrate_lindblad(hamiltonian_terms(params, "full27"), jumps, rho0, params)
    return _result("lindblad_trace_conservation", traj.norm_drift, 1e-6,
                   detail=f"min eigenvalue {traj.min_eigenvalue:.2e}")


def check_fidelity_bounds(params: SimulationParams | None = None) -> CheckResult:
    params = params or SimulationParams()
    traj = integrate_schrodinger(hamiltonian_terms(params, "logic9"),
                                 initial_state(params.with_(model="logic9")), params)
    target = singlet_target("logic9")
    values = [fidelity(s, target) for s in traj.states]
    worst = max(max(0.0 - min(values), 0.0), max(max(values) - 1.0, 0.0))
    return _result("fidelity_in_unit_interval", worst, 1e-9)


ALL_CHECKS = (
    check_hermiticity,
    check_sector_restriction,
    check_exchange_symmetry,
    check_logic_basis,
    check_dark_state,
    check_boundary_limits,
    check_rabi_oracle,
    check_decay_oracle,
    check_singlet_embedding,
    check_norm_conservation,
    check_lindblad_trace,
    check_fidelity_bounds,
)


@dataclass(frozen=True)
class ValidationReport:
    results: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> str:
        payload = {
            "passed": self.passed,
            "checks": [
                {
                    "name": r.name,
                    "passed": r.passed,
                    "defect": r.defect,
                    "tolerance": r.tolerance,
                    "detail": r.detail,
                }
                for r in self.results
            ],
        }
        return json.dumps(payload, indent=2)


def validate_suite() -> ValidationReport:
    return ValidationReport(tuple(check() for check in ALL_CHECKS))
