"""States, bases, Hamiltonians, and jump operators for three driven atoms.

Each atom is a Lambda system with two ground levels g0, g1 and one Rydberg
level e, ordered (g0, g1, e) = (0, 1, 2).  The three-atom product space
``full27`` indexes atom 1 as the most significant trit:
index(a1, a2, a3) = 9*a1 + 3*a2 + a3.

The drive couples g0 <-> e with detuning -delta and g1 <-> e with detuning
+delta; doubly excited pairs are shifted by the blockade energy U (one U per
unordered pair, identical for all pairs).  With symmetric driving of atoms 2
and 3 the nine states below span an exchange-antisymmetric sector
(``logic9``) that the unitary dynamics never leaves:

    |1> = |g0>(|e g1> - |g1 e>)/sqrt2      |6> = |g1>(|e g1> - |g1 e>)/sqrt2
    |2> = |g0>(|g0 g1> - |g1 g0>)/sqrt2    |7> = |g1>(|g0 e> - |e g0>)/sqrt2
    |3> = |e>(|g0 g1> - |g1 g0>)/sqrt2     |8> = |e>(|g0 e> - |e g0>)/sqrt2
    |4> = |g0>(|g0 e> - |e g0>)/sqrt2      |9> = |e>(|g1 e> - |e g1>)/sqrt2
    |5> = |g1>(|g0 g1> - |g1 g0>)/sqrt2

On {|1>,|3>,|7>} plus the bright combination eta+ of {|2>,|5>} the large-U,
large-delta dynamics reduces to a 4-state model (``eff4``) whose dark state
sweeps from |3> to the three-level singlet (|3> - |1> - |7>)/sqrt3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

import numpy as np

from .linalg import OperatorMatrix, StateVector, generic_basis
from .params import SimulationParams
from .pulses import PulseSchedule

G0, G1, E = 0, 1, 2
LEVELS = ("g0", "g1", "e")

EFF4_ORDER = ("|1>", "|3>", "|7>", "|eta+>")


def _product_index(a1: int, a2: int, a3: int) -> int:
    return 9 * a1 + 3 * a2 + a3

# (atom-1 level, antisymmetric-pair levels (x, y)) for each logic state;
# the pair contributes (|x y> - |y x>)/sqrt2 on atoms 2 and 3.
_LOGIC_TABLE = (
    (G0, (E, G1)),
    (G0, (G0, G1)),
    (E, (G0, G1)),
    (G0, (G0, E)),
    (G1, (G0, G1)),
    (G1, (E, G1)),
    (G1, (G0, E)),
    (E, (G0, E)),
    (E, (G1, E)),
)


@dataclass(frozen=True)
class LogicBasis:
    """The nine logic states embedded in full27, plus the stacked 27x9 matrix."""

    states: tuple[StateVector, ...]
    matrix: np.ndarray  # column k = amplitudes of |k+1>

    def embed(self, logic_amplitudes: np.ndarray) -> np.ndarray:
        return self.matrix @ logic_amplitudes

    def project(self, full_amplitudes: np.ndarray) -> np.ndarray:
        return self.matrix.conj().T @ full_amplitudes


@lru_cache(maxsize=1)
def logic_embedding() -> LogicBasis:
    cols = []
    for atom1, (x, y) in _LOGIC_TABLE:
        amps = np.zeros(27, dtype=np.complex128)
        amps[_product_index(atom1, x, y)] = 1.0 / math.sqrt(2.0)
        amps[_product_index(atom1, y, x)] = -1.0 / math.sqrt(2.0)
        cols.append(amps)
    matrix = np.column_stack(cols)
    matrix.setflags(write=False)
    states = tuple(StateVector("full27", c) for c in cols)
    return LogicBasis(states=states, matrix=matrix)


@lru_cache(maxsize=1)
def swap23_matrix() -> np.ndarray:
    """Permutation operator exchanging atoms 2 and 3 in full27."""
    swap = np.zeros((27, 27), dtype=np.complex128)
    for a1 in range(3):
        for a2 in range(3):
            for a3 in range(3):
                swap[_product_index(a1, a3, a2), _product_index(a1, a2, a3)] = 1.0
    swap.setflags(write=False)
    return swap


# ---------------------------------------------------------------------------
# Hamiltonians
# ---------------------------------------------------------------------------

def _atom_ops():
    p_g0 = np.diag([1.0, 0.0, 0.0]).astype(np.complex128)
    p_g1 = np.diag([0.0, 1.0, 0.0]).astype(np.complex128)
    p_e = np.diag([0.0, 0.0, 1.0]).astype(np.complex128)
    lower_g0 = np.zeros((3, 3), dtype=np.complex128)
    lower_g0[G0, E] = 1.0
    lower_g1 = np.zeros((3, 3), dtype=np.complex128)
    lower_g1[G1, E] = 1.0
    return p_g0, p_g1, p_e, lower_g0, lower_g1


def _kron3(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    return np.kron(a, np.kron(b, c))


@dataclass(frozen=True)
class PulsedHamiltonian:
    """H(t) = const + pump(t)*pump_term + stokes(t)*stokes_term (units Omega_0).

    ``vanish_with_pump`` implements the degenerate eff4 convention: when the
    pump amplitude is exactly zero the bright state is undefined and the whole
    matrix is taken to vanish.
    """

    basis: str
    const: np.ndarray
    pump_term: np.ndarray
    stokes_term: np.ndarray
    schedule: PulseSchedule
    vanish_with_pump: bool = False

    @property
    def dim(self) -> int:
        return self.const.shape[0]

    def at(self, t: float) -> np.ndarray:
        a = self.schedule.pump01(t)
        if self.vanish_with_pump and a == 0.0:
            return np.zeros_like(self.const)
        b = self.schedule.stokes02(t)
        return self.const + a * self.pump_term + b * self.stokes_term


def _frozen(m: np.ndarray) -> np.ndarray:
    m = np.ascontiguousarray(m, dtype=np.complex128)
    m.setflags(write=False)
    return m


@lru_cache(maxsize=None)
def _full_structure(u: float, delta: float):
    p_g0, p_g1, p_e, lower_g0, lower_g1 = _atom_ops()
    eye = np.eye(3, dtype=np.complex128)
    blockade = (
        _kron3(p_e, p_e, eye) + _kron3(p_e, eye, p_e) + _kron3(eye, p_e, p_e)
    )
    zeeman = p_g0 - p_g1
    const = u * blockade + delta * (
        _kron3(zeeman, eye, eye) + _kron3(eye, zeeman, eye) + _kron3(eye, eye, zeeman)
    )
    drive = lower_g0 + lower_g1
    drive = drive + drive.conj().T
    pump = _kron3(drive, eye, eye)
    stokes = _kron3(eye, drive, eye) + _kron3(eye, eye, drive)
    return _frozen(const), _frozen(pump), _frozen(stokes)


@lru_cache(maxsize=None)
def _logic_structure(u: float, delta: float):
    const = np.diag(
        np.array([0, delta, 0, 2 * delta, -delta, -2 * delta, 0, u + delta, u - delta],
                 dtype=np.complex128)
    )
    pump = np.zeros((9, 9), dtype=np.complex128)
    # couplings carrying the pump amplitude (Omega_01 = Omega_11)
    for i, j, sign in ((1, 2, 1), (2, 4, 1), (0, 8, -1), (3, 7, 1), (5, 8, -1), (6, 7, 1)):
        pump[i, j] = sign
        pump[j, i] = sign
    stokes = np.zeros((9, 9), dtype=np.complex128)
    # couplings carrying the Stokes amplitude (Omega_02 = Omega_12)
    for i, j, sign in ((0, 1, 1), (1, 3, 1), (4, 5, 1), (4, 6, 1), (2, 7, 1), (2, 8, -1)):
        stokes[i, j] = sign
        stokes[j, i] = sign
    return _frozen(const), _frozen(pump), _frozen(stokes)


@lru_cache(maxsize=None)
def _eff_structure():
    pump = np.zeros((4, 4), dtype=np.complex128)
    pump[1, 3] = pump[3, 1] = math.sqrt(2.0)  # N = sqrt2 * Omega_01
    stokes = np.zeros((4, 4), dtype=np.complex128)
    stokes[0, 3] = stokes[3, 0] = 1.0 / math.sqrt(2.0)
    stokes[2, 3] = stokes[3, 2] = 1.0 / math.sqrt(2.0)
    return _frozen(np.zeros((4, 4), dtype=np.complex128)), _frozen(pump), _frozen(stokes)


def hamiltonian_terms(params: SimulationParams, model: str | None = None) -> PulsedHamiltonian:
    """Cached-structure Hamiltonian builder for the requested model space."""
    model = model or params.model
    schedule = PulseSchedule.from_params(params)
    u = float(params.U_over_omega0)
    delta = float(params.delta_over_omega0)
    if model == "full27":
        const, pump, stokes = _full_structure(u, delta)
        return PulsedHamiltonian("full27", const, pump, stokes, schedule)
    if model == "logic9":
        const, pump, stokes = _logic_structure(u, delta)
        return PulsedHamiltonian("logic9", const, pump, stokes, schedule)
    if model == "eff4":
        const, pump, stokes = _eff_structure()
        return PulsedHamiltonian("eff4", const, pump, stokes, schedule, vanish_with_pump=True)
    raise ValueError(f"unknown model {model!r}")


def build_full_hamiltonian(params: SimulationParams, t: float) -> OperatorMatrix:
    """Three-atom rotating-frame Hamiltonian at time t/T, units Omega_0."""
    return OperatorMatrix("full27", hamiltonian_terms(params, "full27").at(t))


def build_logic_hamiltonian(params: SimulationParams, t: float) -> OperatorMatrix:
    """The 9x9 Hamiltonian on the antisymmetric logic sector at time t/T."""
    return OperatorMatrix("logic9", hamiltonian_terms(params, "logic9").at(t))


def effective_hamiltonian_matrix(
    omega01: float,
    omega02: float,
    delta: float = 0.0,
    omega11: float | None = None,
    omega12: float | None = None,
) -> np.ndarray:
    """4x4 adiabatic Hamiltonian on {|1>, |3>, |7>, |eta+>}.

    Only the symmetric-drive protocol (omega11 = omega01, omega12 = omega02)
    is supported; explicit unequal overrides are rejected.  At omega01 = 0 the
    bright direction degenerates and the matrix is zero by convention.
    """
    if omega11 is not None and omega11 != omega01:
        raise ValueError("effective model requires omega11 = omega01")
    if omega12 is not None and omega12 != omega02:
        raise ValueError("effective model requires omega12 = omega02")
    h = np.zeros((4, 4), dtype=np.complex128)
    norm_sq = 2.0 * omega01 * omega01
    if norm_sq == 0.0:
        return h
    norm = math.sqrt(norm_sq)
    h[3, 3] = delta * (omega01**2 - omega01**2) / norm_sq  # zero under symmetric drive
    h[0, 3] = h[3, 0] = omega02 * omega01 / norm
    h[1, 3] = h[3, 1] = norm
    h[2, 3] = h[3, 2] = omega01 * omega02 / norm
    return h


def build_effective_hamiltonian(params: SimulationParams, t: float) -> OperatorMatrix:
    schedule = PulseSchedule.from_params(params)
    h = effective_hamiltonian_matrix(
        float(schedule.pump01(t)), float(schedule.stokes02(t)), params.delta_over_omega0
    )
    return OperatorMatrix("eff4", h)


@dataclass(frozen=True)
class EffectiveModel:
    """The 4-state reduction: ordered basis, normalizer, and bright/dark pair."""

    basis_labels: tuple[str, str, str, str]
    normalizer: float
    eta_plus: StateVector  # logic9 coordinates
    eta_minus: StateVector


def effective_model(omega01: float, omega11: float) -> EffectiveModel:
    norm = math.hypot(omega01, omega11)
    if norm == 0.0:
        raise ValueError("bright/dark pair undefined at omega01 = omega11 = 0")
    plus = np.zeros(9, dtype=np.complex128)
    plus[1] = omega01 / norm
    plus[4] = omega11 / norm
    minus = np.zeros(9, dtype=np.complex128)
    minus[1] = omega11 / norm
    minus[4] = -omega01 / norm
    return EffectiveModel(
        basis_labels=EFF4_ORDER,
        normalizer=norm,
        eta_plus=StateVector("logic9", plus),
        eta_minus=StateVector("logic9", minus),
    )


def eta_basis_change(omega01: float, omega11: float) -> OperatorMatrix:
    """logic9 unitary replacing {|2>, |5>} with the bright/dark pair.

    Column layout keeps every other logic state fixed; column |2> becomes
    eta+ = (omega01*|2> + omega11*|5>)/N and column |5> becomes
    eta- = (omega11*|2> - omega01*|5>)/N.
    """
    norm = math.hypot(omega01, omega11)
    if norm == 0.0:
        raise ValueError("eta basis undefined at omega01 = omega11 = 0")
    u = np.eye(9, dtype=np.complex128)
    u[1, 1] = omega01 / norm
    u[4, 1] = omega11 / norm
    u[1, 4] = omega11 / norm
    u[4, 4] = -omega01 / norm
    return OperatorMatrix("logic9", u)


# ---------------------------------------------------------------------------
# Target states
# ---------------------------------------------------------------------------

def dark_state(omega01: float, omega02: float) -> StateVector:
    """Instantaneous dark state cos(theta)|3> - sin(theta)(|1>+|7>)/sqrt2.

    tan(theta) = sqrt2 * omega01 / omega02, taken on the continuous branch
    theta in [0, pi/2]; omega02 = 0 gives the theta = pi/2 limit.
    """
    if omega01 == 0.0 and omega02 == 0.0:
        raise ValueError("dark state undefined at omega01 = omega02 = 0")
    theta = math.atan2(math.sqrt(2.0) * omega01, omega02)
    amps = np.zeros(4, dtype=np.complex128)
    amps[1] = math.cos(theta)
    amps[0] = amps[2] = -math.sin(theta) / math.sqrt(2.0)
    return StateVector("eff4", amps)


def singlet_state(n: int) -> StateVector:
    """Total-spin-zero singlet of n particles with n levels each.

    (1/sqrt(n!)) * sum over permutations p of (0..n-1) of sign(p) |p_0 ... p_{n-1}>,
    in the n^n-dimensional product space with slow-first indexing.
    """
    if not 2 <= n <= 6:
        raise ValueError(f"singlet_state supports 2 <= n <= 6, got {n}")
    dim = n**n
    amps = np.zeros(dim, dtype=np.complex128)
    weight = 1.0 / math.sqrt(math.factorial(n))
    powers = [n ** (n - 1 - i) for i in range(n)]
    for perm in permutations(range(n)):
        index = sum(p * w for p, w in zip(perm, powers))
        amps[index] = weight if _parity(perm) == 0 else -weight
    return StateVector(generic_basis(dim), amps)


def _parity(perm) -> int:
    inversions = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inversions += 1
    return inversions % 2


_SINGLET_LOGIC9 = None


def singlet_target(basis: str = "logic9") -> StateVector:
    """The three-atom singlet (|3> - |1> - |7>)/sqrt3 in the requested basis."""
    global _SINGLET_LOGIC9
    if _SINGLET_LOGIC9 is None:
        amps = np.zeros(9, dtype=np.complex128)
        amps[2] = 1.0 / math.sqrt(3.0)
        amps[0] = amps[6] = -1.0 / math.sqrt(3.0)
        _SINGLET_LOGIC9 = StateVector("logic9", amps)
    if basis == "logic9":
        return _SINGLET_LOGIC9
    return embed_state(_SINGLET_LOGIC9, basis)


@lru_cache(maxsize=1)
def eff4_embedding_matrix() -> np.ndarray:
    """9x4 isometry eff4 -> logic9; eta+ = (|2> + |5>)/sqrt2 under symmetric drive."""
    e = np.zeros((9, 4), dtype=np.complex128)
    e[0, 0] = 1.0
    e[2, 1] = 1.0
    e[6, 2] = 1.0
    e[1, 3] = e[4, 3] = 1.0 / math.sqrt(2.0)
    e.setflags(write=False)
    return e


def embed_state(state, to_basis: str):
    """Embed a state (vector or density matrix) upward: eff4 -> logic9 -> full27."""
    from .linalg import DensityMatrix  # local to avoid cycles in type checks

    chain = {"eff4": ("logic9", eff4_embedding_matrix), "logic9": ("full27", lambda: logic_embedding().matrix)}
    current = state
    while current.basis != to_basis:
        if current.basis not in chain:
            raise ValueError(f"no embedding from {current.basis!r} to {to_basis!r}")
        next_basis, matrix_fn = chain[current.basis]
        m = matrix_fn()
        if isinstance(current, StateVector):
            current = StateVector(next_basis, m @ current.amplitudes)
        elif isinstance(current, DensityMatrix):
            current = DensityMatrix(next_basis, m @ current.entries @ m.conj().T)
        else:
            raise TypeError(f"cannot embed {type(current).__name__}")
    return current


def initial_state(params: SimulationParams) -> StateVector:
    """Protocol initial state |3> = |e>(|g0 g1> - |g1 g0>)/sqrt2 in the model basis."""
    if params.model == "eff4":
        amps = np.zeros(4, dtype=np.complex128)
        amps[1] = 1.0
        return StateVector("eff4", amps)
    amps = np.zeros(9, dtype=np.complex128)
    amps[2] = 1.0
    logic = StateVector("logic9", amps)
    if params.model == "logic9":
        return logic
    return embed_state(logic, "full27")


# ---------------------------------------------------------------------------
# Dissipation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JumpOperator:
    """Spontaneous-emission channel |p><e| on one atom, with its rate."""

    label: str
    op: OperatorMatrix
    rate_over_omega0: float


def collapse_operators(params: SimulationParams) -> tuple[JumpOperator, ...]:
    """Six lowering channels S_pq = |p>_q <e|, each at rate gamma_e/2."""
    _, _, _, lower_g0, lower_g1 = _atom_ops()
    eye = np.eye(3, dtype=np.complex128)
    rate = params.gamma_e_over_omega0 / 2.0
    jumps = []
    for p_index, lower in ((G0, lower_g0), (G1, lower_g1)):
        for atom in range(3):
            factors = [eye, eye, eye]
            factors[atom] = lower
            op = OperatorMatrix("full27", _kron3(*factors))
            jumps.append(JumpOperator(f"S_{LEVELS[p_index]},{atom + 1}", op, rate))
    return tuple(jumps)


# ---------------------------------------------------------------------------
# Regime diagnostics
# ---------------------------------------------------------------------------

BLOCKADE_RATIO_FLOOR = 5.0
DETUNING_RATIO_FLOOR = 0.5


@dataclass(frozen=True)
class BlockadeReport:
    u_over_delta: float
    u_over_max_omega: float
    delta_over_max_omega: float
    max_omega: float
    blockade_flag: bool
    detuning_flag: bool
    messages: tuple[str, ...]


def blockade_regime_report(params: SimulationParams) -> BlockadeReport:
    """Check the strong-blockade and detuning hierarchy; warns, never blocks."""
    schedule = PulseSchedule.from_params(params)
    max_omega = schedule.max_amplitude(params.t_start_over_T, params.t_end_over_T)
    u = params.U_over_omega0
    delta = params.delta_over_omega0
    u_over_delta = u / delta if delta != 0.0 else math.inf
    u_ratio = u / max_omega
    delta_ratio = delta / max_omega
    blockade_flag = u_ratio < BLOCKADE_RATIO_FLOOR
    detuning_flag = abs(delta_ratio) < DETUNING_RATIO_FLOOR
    messages = []
    if blockade_flag:
        messages.append(
            f"weak blockade: U/max(Omega) = {u_ratio:.3g} < {BLOCKADE_RATIO_FLOOR}"
        )
    if detuning_flag:
        messages.append(
            f"weak detuning: delta/max(Omega) = {delta_ratio:.3g}, |ratio| < {DETUNING_RATIO_FLOOR}"
        )
    return BlockadeReport(
        u_over_delta=u_over_delta,
        u_over_max_omega=u_ratio,
        delta_over_max_omega=delta_ratio,
        max_omega=max_omega,
        blockade_flag=blockade_flag,
        detuning_flag=detuning_flag,
        messages=tuple(messages),
    )


def hermiticity_defect(op: OperatorMatrix) -> float:
    return float(np.max(np.abs(op.entries - op.entries.conj().T)))


def sector_restriction_defect(params: SimulationParams, t: float) -> float:
    """Entrywise gap between P^dag H_full(t) P and the 9x9 logic Hamiltonian."""
    p = logic_embedding().matrix
    full = build_full_hamiltonian(params, t).entries
    logic = build_logic_hamiltonian(params, t).entries
    return float(np.max(np.abs(p.conj().T @ full @ p - logic)))


