"""Gaussian laser pulses for the counterintuitive (Stokes-first) sequence.

The pump drives g0 <-> e on atom 1 and the Stokes pair drives both
transitions on atoms 2 and 3; the remaining Rabi frequencies are locked to
these two shapes (Omega_11 = Omega_01, Omega_12 = Omega_02 = Omega_03 =
Omega_13), which is the symmetric-drive protocol this package simulates.

Shapes, in units of Omega_0 with time in units of T:

    pump01(t)   = exp(-(t - tau)^2 / T^2)
    stokes02(t) = exp(-(t - tau)^2 / T^2) + exp(-(t + tau)^2 / T^2)

For tau > 0 the Stokes field dominates early and the pump/Stokes ratio sweeps
from ~0 to ~1 across the window, which is what drags the dark state from the
bare initial state onto the singlet.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import SimulationParams

PULSE_KINDS = ("pump01", "stokes02")


@dataclass(frozen=True)
class PulseSchedule:
    """Evaluable pulse pair; accepts scalars or arrays of t/T."""

    tau_over_T: float

    def pump01(self, t):
        return np.exp(-((t - self.tau_over_T) ** 2))

    def stokes02(self, t):
        return np.exp(-((t - self.tau_over_T) ** 2)) + np.exp(-((t + self.tau_over_T) ** 2))

    # Symmetric-drive identifications.
    omega01 = pump01
    omega02 = stokes02
    omega11 = pump01
    omega12 = stokes02

    @classmethod
    def from_params(cls, params: SimulationParams) -> "PulseSchedule":
        return cls(tau_over_T=params.tau_over_T)

    def max_amplitude(self, t_start: float, t_end: float, samples: int = 8192) -> float:
        """Largest instantaneous Rabi frequency on the window (units Omega_0).

        stokes02 >= pump01 pointwise, so the maximum of the Stokes sum is the
        answer; found by dense sampling plus a local refinement.
        """
        grid = np.linspace(t_start, t_end, samples)
        values = self.stokes02(grid)
        k = int(np.argmax(values))
        lo = grid[max(k - 1, 0)]
        hi = grid[min(k + 1, samples - 1)]
        fine = np.linspace(lo, hi, 512)
        return float(np.max(self.stokes02(fine)))


def gaussian_pulse(t: float, params: SimulationParams, which: str) -> float:
    """Rabi frequency of one pulse at time t/T, in units of Omega_0."""
    schedule = PulseSchedule.from_params(params)
    if which == "pump01":
        return float(schedule.pump01(t))
    if which == "stokes02":
        return float(schedule.stokes02(t))
    raise ValueError(f"which must be one of {PULSE_KINDS}, got {which!r}")
