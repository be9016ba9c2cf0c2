"""Three-atom singlet preparation via Rydberg blockade and adiabatic passage."""

from .linalg import (
    ALGEBRAIC_TOL,
    INTEGRATION_TOL,
    POSITIVITY_TOL,
    BasisError,
    DensityMatrix,
    OperatorMatrix,
    StateVector,
    as_basis,
    basis_dim,
    basis_state,
    dagger,
    expectation_value,
    generic_basis,
    identity,
    inner_product,
    tensor_product,
)
from .params import DEFAULTS, SimulationParams
from .pulses import PulseSchedule, gaussian_pulse
from .model import (
    BlockadeReport,
    EffectiveModel,
    JumpOperator,
    LogicBasis,
    blockade_regime_report,
    build_effective_hamiltonian,
    build_full_hamiltonian,
    build_logic_hamiltonian,
    collapse_operators,
    dark_state,
    effective_hamiltonian_matrix,
    effective_model,
    embed_state,
    eta_basis_change,
    hamiltonian_terms,
    initial_state,
    logic_embedding,
    singlet_state,
    singlet_target,
    swap23_matrix,
)
from .dynamics import (
    AdiabaticityProfile,
    IntegrationError,
    Trajectory,
    adiabaticity_profile,
    integrate_lindblad,
    integrate_schrodinger,
    reference_integrate,
    run_model,
)
from .observables import (
    ObservableSeries,
    TrajectorySummary,
    fidelity,
    leakage,
    observable_series,
    populations,
    trajectory_summary,
)

__version__ = "0.1.0"
