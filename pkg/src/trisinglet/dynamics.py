"""Time evolution: Schrodinger and Lindblad integrators plus diagnostics.

Both production integrators are classical fixed-step RK4; determinism matters
more than adaptive cleverness at these dimensions (<= 27).  Time is measured
in units of T and Hamiltonians are supplied in units of Omega_0, so the
generator carries an overall factor omega0_T.  States are never renormalized:
norm or trace drift is recorded and excessive drift aborts the run with a
step-size hint.

``reference_integrate`` is an independent cross-check built from exact matrix
exponentials of the midpoint Hamiltonian at half the production step; it is
used to bound the RK4 error and is deliberately kept out of the main code
paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .linalg import DensityMatrix, StateVector
from .model import PulsedHamiltonian, hamiltonian_terms, initial_state
from .params import SimulationParams

DEFAULT_SAMPLES = 200
ABORT_DRIFT = 1e-4


class IntegrationError(RuntimeError):
    """Raised when conservation checks fail mid-run."""


@dataclass(frozen=True)
class Trajectory:
    """Sampled evolution: states aligned with times (units of T)."""

    times: np.ndarray
    states: tuple
    params: SimulationParams
    kind: str  # "pure" or "density"
    norms: np.ndarray  # norm (pure) or trace (density) at each sample
    norm_drift: float
    dt_eff: float
    n_steps: int
    hermiticity_drift: float = 0.0
    min_eigenvalue: float = 0.0

    @property
    def final_state(self):
        return self.states[-1]


def _time_grid(params: SimulationParams):
    span = params.t_end_over_T - params.t_start_over_T
    n_steps = max(1, round(span / params.dt_over_T))
    return n_steps, span / n_steps


def _sample_stride(n_steps: int, full_resolution: bool) -> int:
    if full_resolution:
        return 1
    return max(1, n_steps // DEFAULT_SAMPLES)


def _resolve_builder(h, basis_hint: str | None = None):
    if isinstance(h, PulsedHamiltonian):
        return h.at, h.basis
    if callable(h):
        return h, basis_hint
    raise TypeError(f"expected a Hamiltonian builder, got {type(h).__name__}")


def integrate_schrodinger(h, psi0: StateVector, params: SimulationParams,
                          full_resolution: bool = False) -> Trajectory:
    """RK4 integration of i dpsi/dt = omega0_T * H(t) psi.

    ``h`` is a PulsedHamiltonian or a callable t -> ndarray in units of
    Omega_0 with t in units of T.
    """
    h_at, basis = _resolve_builder(h, psi0.basis)
    if basis is not None and basis != psi0.basis:
        raise ValueError(f"Hamiltonian basis {basis!r} does not match state basis {psi0.basis!r}")
    if not psi0.is_normalized():
        raise ValueError(f"initial state norm {psi0.norm():.12f} != 1")

    n_steps, dt = _time_grid(params)
    stride = _sample_stride(n_steps, full_resolution)
    scale = -1j * params.omega0_T
    t0 = params.t_start_over_T

    psi = psi0.amplitudes.astype(np.complex128, copy=True)
    sample_times = [t0]
    sample_states = [psi.copy()]
    sample_norms = [float(np.linalg.norm(psi))]
    h_left = h_at(t0)

    def check_norm(t):
        value = float(np.linalg.norm(psi))
        if not math.isfinite(value) or abs(value - 1.0) > ABORT_DRIFT:
            raise IntegrationError(
                f"norm drift {abs(value - 1.0):.3e} exceeds {ABORT_DRIFT} at t = {t:.3f}; "
                f"reduce dt_over_T (currently {dt:.3g})"
            )
        return value

    # overflow in a diverging run is reported through the norm check, not numpy warnings
    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(n_steps):
            t = t0 + step * dt
            h_mid = h_at(t + 0.5 * dt)
            h_right = h_at(t + dt)
            k1 = scale * (h_left @ psi)
            k2 = scale * (h_mid @ (psi + 0.5 * dt * k1))
            k3 = scale * (h_mid @ (psi + 0.5 * dt * k2))
            k4 = scale * (h_right @ (psi + dt * k3))
            psi = psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            h_left = h_right
            if (step + 1) % stride == 0 or step + 1 == n_steps:
                sample_times.append(t0 + (step + 1) * dt)
                sample_norms.append(check_norm(t + dt))
                sample_states.append(psi.copy())

    norms = np.array(sample_norms)
    states = tuple(StateVector(psi0.basis, s) for s in sample_states)
    return Trajectory(
        times=np.array(sample_times),
        states=states,
        params=params,
        kind="pure",
        norms=norms,
        norm_drift=float(np.max(np.abs(norms - 1.0))),
        dt_eff=dt,
        n_steps=n_steps,
    )


def integrate_lindblad(h, jumps, rho0: DensityMatrix, params: SimulationParams,
                       full_resolution: bool = False) -> Trajectory:
    """RK4 integration of the master equation

        drho/dt = -i[H, rho] + sum_j gamma_j (S rho S+ - (S+S rho + rho S+S)/2)

    with all rates in units of Omega_0 and time in units of T.
    """
    h_at, basis = _resolve_builder(h, rho0.basis)
    if basis is not None and basis != rho0.basis:
        raise ValueError(f"Hamiltonian basis {basis!r} does not match state basis {rho0.basis!r}")
    rho0.validate()

    jump_list = [j for j in jumps if j.rate_over_omega0 > 0.0]
    for j in jump_list:
        if j.op.basis != rho0.basis:
            raise ValueError(f"jump operator basis {j.op.basis!r} does not match {rho0.basis!r}")
    dissipative = bool(jump_list)
    if dissipative:
        ls = np.stack([j.op.entries for j in jump_list])
        ls_dag = ls.conj().transpose(0, 2, 1)
        rates = np.array([j.rate_over_omega0 for j in jump_list]).reshape(-1, 1, 1)
        # sum_j gamma_j S+ S, for the anticommutator part
        damp = np.tensordot(rates.ravel(), ls_dag @ ls, axes=1)

    n_steps, dt = _time_grid(params)
    stride = _sample_stride(n_steps, full_resolution)
    s = params.omega0_T
    t0 = params.t_start_over_T

    def rhs(h_matrix, rho):
        out = -1j * s * (h_matrix @ rho - rho @ h_matrix)
        if dissipative:
            out = out + s * (
                (rates * (ls @ rho @ ls_dag)).sum(axis=0)
                - 0.5 * (damp @ rho + rho @ damp)
            )
        return out

    rho = rho0.entries.astype(np.complex128, copy=True)
    sample_times = [t0]
    sample_states = [rho.copy()]
    sample_traces = [float(np.trace(rho).real)]
    herm_drift = float(np.max(np.abs(rho - rho.conj().T)))
    min_eig = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])
    h_left = h_at(t0)

    def check_state(t):
        nonlocal herm_drift, min_eig
        trace = float(np.trace(rho).real)
        if not math.isfinite(trace) or abs(trace - 1.0) > ABORT_DRIFT:
            raise IntegrationError(
                f"trace drift {abs(trace - 1.0):.3e} exceeds {ABORT_DRIFT} at t = {t:.3f}; "
                f"reduce dt_over_T (currently {dt:.3g})"
            )
        herm_drift = max(herm_drift, float(np.max(np.abs(rho - rho.conj().T))))
        low = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])
        min_eig = min(min_eig, low)
        if low < -ABORT_DRIFT:
            raise IntegrationError(
                f"density matrix eigenvalue {low:.3e} below -{ABORT_DRIFT} at t = {t:.3f}; "
                f"reduce dt_over_T (currently {dt:.3g})"
            )
        return trace

    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(n_steps):
            t = t0 + step * dt
            h_mid = h_at(t + 0.5 * dt)
            h_right = h_at(t + dt)
            k1 = rhs(h_left, rho)
            k2 = rhs(h_mid, rho + 0.5 * dt * k1)
            k3 = rhs(h_mid, rho + 0.5 * dt * k2)
            k4 = rhs(h_right, rho + dt * k3)
            rho = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            h_left = h_right
            if (step + 1) % stride == 0 or step + 1 == n_steps:
                sample_times.append(t0 + (step + 1) * dt)
                sample_traces.append(check_state(t + dt))
                sample_states.append(rho.copy())

    traces = np.array(sample_traces)
    states = tuple(DensityMatrix(rho0.basis, r) for r in sample_states)
    return Trajectory(
        times=np.array(sample_times),
        states=states,
        params=params,
        kind="density",
        norms=traces,
        norm_drift=float(np.max(np.abs(traces - 1.0))),
        dt_eff=dt,
        n_steps=n_steps,
        hermiticity_drift=herm_drift,
        min_eigenvalue=min_eig,
    )


def reference_integrate(h, state0: StateVector, params: SimulationParams,
                        full_resolution: bool = False) -> Trajectory:
    """Oracle propagator: exact exponential of the midpoint Hamiltonian.

    Steps at half the production step, so its error is set by the
    piecewise-constant approximation alone.  Pure states only; meant for
    tests, not production runs.
    """
    if not isinstance(state0, StateVector):
        raise TypeError("reference_integrate propagates pure states only")
    h_at, basis = _resolve_builder(h, state0.basis)
    if basis is not None and basis != state0.basis:
        raise ValueError(f"Hamiltonian basis {basis!r} does not match state basis {state0.basis!r}")
    if not state0.is_normalized():
        raise ValueError(f"initial state norm {state0.norm():.12f} != 1")

    n_main, dt_main = _time_grid(params)
    n_steps = 2 * n_main
    dt = 0.5 * dt_main
    stride = _sample_stride(n_steps, full_resolution)
    t0 = params.t_start_over_T

    psi = state0.amplitudes.astype(np.complex128, copy=True)
    sample_times = [t0]
    sample_states = [psi.copy()]
    for step in range(n_steps):
        t = t0 + step * dt
        u = expm(-1j * params.omega0_T * dt * h_at(t + 0.5 * dt))
        psi = u @ psi
        if (step + 1) % stride == 0 or step + 1 == n_steps:
            sample_times.append(t0 + (step + 1) * dt)
            sample_states.append(psi.copy())

    norms = np.array([np.linalg.norm(s) for s in sample_states])
    states = tuple(StateVector(state0.basis, s) for s in sample_states)
    return Trajectory(
        times=np.array(sample_times),
        states=states,
        params=params,
        kind="pure",
        norms=norms,
        norm_drift=float(np.max(np.abs(norms - 1.0))),
        dt_eff=dt,
        n_steps=n_steps,
    )


def run_model(params: SimulationParams, full_resolution: bool = False) -> Trajectory:
    """Integrate the configured model from the protocol initial state."""
    terms = hamiltonian_terms(params)
    if params.dissipation == "lindblad":
        from .model import collapse_operators

        rho0 = initial_state(params).to_density_matrix()
        return integrate_lindblad(terms, collapse_operators(params), rho0, params,
                                  full_resolution=full_resolution)
    return integrate_schrodinger(terms, initial_state(params), params,
                                 full_resolution=full_resolution)


# ---------------------------------------------------------------------------
# Adiabaticity diagnostics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdiabaticityProfile:
    """Mixing angle theta(t) = atan(sqrt2 * pump/stokes) and its safety margin.

    theta_dot is the closed-form derivative (units 1/T), gap is
    sqrt(2*pump^2 + stokes^2) (units Omega_0); margin is the dimensionless
    ratio |theta_dot| / (omega0_T * gap), small when passage is adiabatic.
    """

    times: np.ndarray
    theta: np.ndarray
    theta_dot: np.ndarray
    gap: np.ndarray
    margin: np.ndarray

    @property
    def max_margin(self) -> float:
        return float(np.max(self.margin))


def adiabaticity_profile(params: SimulationParams) -> AdiabaticityProfile:
    n_steps, dt = _time_grid(params)
    times = params.t_start_over_T + dt * np.arange(n_steps + 1)
    tau = params.tau_over_T
    a = np.exp(-((times - tau) ** 2))
    c = np.exp(-((times + tau) ** 2))
    b = a + c
    theta = np.arctan2(math.sqrt(2.0) * a, b)
    # d/dt atan(sqrt2 a/b) with b = a + c reduces to 4*sqrt2*tau*a*c/(b^2+2a^2)
    theta_dot = 4.0 * math.sqrt(2.0) * tau * a * c / (b * b + 2.0 * a * a)
    gap = np.sqrt(2.0 * a * a + b * b)
    margin = np.abs(theta_dot) / (params.omega0_T * gap)
    return AdiabaticityProfile(times=times, theta=theta, theta_dot=theta_dot,
                               gap=gap, margin=margin)
