"""Dimensionless protocol parameters.

Internal units are hbar = 1, Omega_0 = 1 (frequency unit) and T = 1 (time
unit): every knob is one of the ratios below.  ``omega0_T`` is the pulse area
parameter Omega_0*T that couples the frequency and time units during
integration.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

MODELS = ("logic9", "full27", "eff4")
DISSIPATION = ("none", "lindblad")

# Ideal-run operating point; these double as the config-file defaults.
DEFAULTS = dict(
    omega0_T=10.0,
    tau_over_T=0.7,
    U_over_omega0=10.0,
    delta_over_omega0=1.0,
    gamma_e_over_omega0=0.0,
    t_start_over_T=-4.0,
    t_end_over_T=4.0,
    dt_over_T=0.001,
    model="logic9",
    dissipation="none",
)


@dataclass(frozen=True)
class SimulationParams:
    omega0_T: float = DEFAULTS["omega0_T"]
    tau_over_T: float = DEFAULTS["tau_over_T"]
    U_over_omega0: float = DEFAULTS["U_over_omega0"]
    delta_over_omega0: float = DEFAULTS["delta_over_omega0"]
    gamma_e_over_omega0: float = DEFAULTS["gamma_e_over_omega0"]
    t_start_over_T: float = DEFAULTS["t_start_over_T"]
    t_end_over_T: float = DEFAULTS["t_end_over_T"]
    dt_over_T: float = DEFAULTS["dt_over_T"]
    model: str = DEFAULTS["model"]
    dissipation: str = DEFAULTS["dissipation"]

    def __post_init__(self):
        if self.omega0_T <= 0:
            raise ValueError(f"omega0_T must be > 0, got {self.omega0_T}")
        if self.U_over_omega0 < 0:
            raise ValueError(f"U_over_omega0 must be >= 0, got {self.U_over_omega0}")
        if self.gamma_e_over_omega0 < 0:
            raise ValueError(f"gamma_e_over_omega0 must be >= 0, got {self.gamma_e_over_omega0}")
        if not self.t_start_over_T < self.t_end_over_T:
            raise ValueError(
                f"need t_start < t_end, got [{self.t_start_over_T}, {self.t_end_over_T}]"
            )
        if self.dt_over_T <= 0:
            raise ValueError(f"dt_over_T must be > 0, got {self.dt_over_T}")
        if self.dt_over_T > self.t_end_over_T - self.t_start_over_T:
            raise ValueError("dt_over_T exceeds the integration window")
        if self.model not in MODELS:
            raise ValueError(f"model must be one of {MODELS}, got {self.model!r}")
        if self.dissipation not in DISSIPATION:
            raise ValueError(f"dissipation must be one of {DISSIPATION}, got {self.dissipation!r}")
        if self.dissipation == "lindblad" and self.model != "full27":
            # Decay leaks out of the antisymmetric logic sector, so dissipative
            # runs are only closed in the full three-atom space.
            raise ValueError("dissipation = lindblad requires model = full27")

    def with_(self, **changes) -> "SimulationParams":
        return replace(self, **changes)

    @property
    def window_over_T(self) -> float:
        return self.t_end_over_T - self.t_start_over_T
