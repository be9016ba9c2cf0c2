import math

import numpy as np
import pytest

from trisinglet.model import (
    blockade_regime_report,
    build_effective_hamiltonian,
    build_full_hamiltonian,
    build_logic_hamiltonian,
    collapse_operators,
    dark_state,
    effective_hamiltonian_matrix,
    embed_state,
    eta_basis_change,
    hamiltonian_terms,
    initial_state,
    logic_embedding,
    singlet_state,
    singlet_target,
    swap23_matrix,
)
from trisinglet.params import SimulationParams
from trisinglet.pulses import PulseSchedule

G0, G1, E = 0, 1, 2


def product_index(a1, a2, a3):
    return 9 * a1 + 3 * a2 + a3


# ---------------------------------------------------------------------------
# full-space Hamiltonian
# ---------------------------------------------------------------------------

def test_full_hamiltonian_ground_diagonal():
    p = SimulationParams(delta_over_omega0=0.8)
    h = build_full_hamiltonian(p, 0.0).entries
    k = product_index(G0, G0, G0)
    assert h[k, k] == pytest.approx(3 * 0.8, abs=1e-15)


def test_full_hamiltonian_drive_element():
    p = SimulationParams()
    schedule = PulseSchedule.from_params(p)
    for t in (-1.0, 0.3, 2.0):
        h = build_full_hamiltonian(p, t).entries
        elem = h[product_index(E, G1, G0), product_index(G0, G1, G0)]
        assert elem == pytest.approx(schedule.pump01(t), abs=1e-15)


def test_full_hamiltonian_blockade_diagonal():
    p = SimulationParams(U_over_omega0=7.0, delta_over_omega0=0.6)
    h = build_full_hamiltonian(p, 0.0).entries
    k = product_index(E, E, G1)
    assert h[k, k] == pytest.approx(7.0 - 0.6, abs=1e-14)


def test_full_hamiltonian_hermitian_at_random_times():
    p = SimulationParams()
    rng = np.random.default_rng(21)
    for t in rng.uniform(-4, 4, 10):
        h = build_full_hamiltonian(p, float(t)).entries
        assert np.max(np.abs(h - h.conj().T)) <= 1e-12


def test_exchange_symmetry_sector_invariance():
    # symmetric drive of atoms 2 and 3 commutes with their exchange
    p = SimulationParams()
    swap = swap23_matrix()
    for t in (-2.1, 0.0, 1.7):
        h = build_full_hamiltonian(p, t).entries
        assert np.max(np.abs(h @ swap - swap @ h)) <= 1e-12


# ---------------------------------------------------------------------------
# logic basis and 9x9 Hamiltonian
# ---------------------------------------------------------------------------

def test_logic_state_2_amplitudes():
    v = logic_embedding().states[1].amplitudes
    inv_sqrt2 = 1 / math.sqrt(2)
    assert v[product_index(G0, G0, G1)] == pytest.approx(inv_sqrt2)
    assert v[product_index(G0, G1, G0)] == pytest.approx(-inv_sqrt2)
    assert np.count_nonzero(v) == 2


def test_logic_state_3_amplitudes():
    v = logic_embedding().states[2].amplitudes
    assert v[product_index(E, G0, G1)] == pytest.approx(1 / math.sqrt(2))
    assert v[product_index(E, G1, G0)] == pytest.approx(-1 / math.sqrt(2))


def test_logic_basis_orthonormal():
    m = logic_embedding().matrix
    assert np.max(np.abs(m.conj().T @ m - np.eye(9))) <= 1e-12


def test_logic_basis_antisymmetric_under_exchange():
    swap = swap23_matrix()
    for v in logic_embedding().states:
        np.testing.assert_allclose(swap @ v.amplitudes, -v.amplitudes, atol=1e-15)


def test_logic_hamiltonian_diagonal():
    p = SimulationParams(U_over_omega0=4.0, delta_over_omega0=0.9)
    h = build_logic_hamiltonian(p, 0.0).entries
    d = 0.9
    expected = [0, d, 0, 2 * d, -d, -2 * d, 0, 4.0 + d, 4.0 - d]
    np.testing.assert_allclose(np.diag(h).real, expected, atol=1e-14)


def test_logic_hamiltonian_pump_sign_pattern():
    p = SimulationParams()
    schedule = PulseSchedule.from_params(p)
    t = 0.4
    h = build_logic_hamiltonian(p, t).entries
    a = schedule.pump01(t)
    b = schedule.stokes02(t)
    assert h[0, 8] == pytest.approx(-a, abs=1e-15)  # the lone negative pump coupling
    assert h[3, 7] == pytest.approx(a, abs=1e-15)
    assert h[2, 8] == pytest.approx(-b, abs=1e-15)
    assert h[2, 7] == pytest.approx(b, abs=1e-15)


def test_sector_restriction_is_exact():
    """The 9x9 matrix must equal the full Hamiltonian restricted by the embedding."""
    p = SimulationParams(U_over_omega0=6.5, delta_over_omega0=1.3)
    m = logic_embedding().matrix
    rng = np.random.default_rng(22)
    for t in rng.uniform(-4, 4, 10):
        full = build_full_hamiltonian(p, float(t)).entries
        logic = build_logic_hamiltonian(p, float(t)).entries
        assert np.max(np.abs(m.conj().T @ full @ m - logic)) <= 1e-12


# ---------------------------------------------------------------------------
# bright/dark basis change and effective model
# ---------------------------------------------------------------------------

def test_eta_basis_change_unitary():
    u = eta_basis_change(0.4, 1.1).entries
    assert np.max(np.abs(u.conj().T @ u - np.eye(9))) <= 1e-12


def test_eta_basis_degenerate_rotations():
    u = eta_basis_change(1.0, 0.0).entries
    np.testing.assert_allclose(u[:, 1], np.eye(9)[:, 1], atol=1e-15)  # eta+ = |2>
    np.testing.assert_allclose(u[:, 4], -np.eye(9)[:, 4], atol=1e-15)  # eta- = -|5>
    u_sym = eta_basis_change(1.0, 1.0).entries
    expected = np.zeros(9)
    expected[1] = expected[4] = 1 / math.sqrt(2)
    np.testing.assert_allclose(u_sym[:, 1].real, expected, atol=1e-15)


def test_eta_basis_rejects_zero():
    with pytest.raises(ValueError):
        eta_basis_change(0.0, 0.0)


def test_effective_model_pair_orthonormal():
    from trisinglet.model import effective_model
    from trisinglet.linalg import inner_product

    rng = np.random.default_rng(25)
    for _ in range(10):
        w1, w2 = rng.uniform(-2.0, 2.0, size=2)
        if w1 == 0.0 and w2 == 0.0:
            continue
        pair = effective_model(float(w1), float(w2))
        assert pair.eta_plus.norm() == pytest.approx(1.0, abs=1e-12)
        assert pair.eta_minus.norm() == pytest.approx(1.0, abs=1e-12)
        assert abs(inner_product(pair.eta_plus, pair.eta_minus)) <= 1e-12
        assert pair.normalizer == pytest.approx(math.hypot(w1, w2))
    with pytest.raises(ValueError):
        effective_model(0.0, 0.0)


def test_eta_conjugation_reproduces_bright_dark_couplings():
    """Rotating the 9x9 Hamiltonian into the eta basis must give the expected
    bright/dark coupling pattern on the 7-state block."""
    p = SimulationParams(delta_over_omega0=1.0)
    schedule = PulseSchedule.from_params(p)
    rng = np.random.default_rng(23)
    for t in rng.uniform(-2, 2, 8):
        a = float(schedule.pump01(t))
        b = float(schedule.stokes02(t))
        n = math.hypot(a, a)
        h = build_logic_hamiltonian(p, float(t)).entries
        u = eta_basis_change(a, a).entries
        rotated = u.conj().T @ h @ u
        # column 1 is eta+, column 4 is eta-
        assert rotated[0, 1] == pytest.approx(b * a / n, abs=1e-12)
        assert rotated[2, 1] == pytest.approx(n, abs=1e-12)
        assert rotated[2, 4] == pytest.approx(0.0, abs=1e-12)
        assert rotated[6, 1] == pytest.approx(a * b / n, abs=1e-12)
        assert rotated[1, 1] == pytest.approx(0.0, abs=1e-12)
        # the detuning moves into the eta+/eta- cross coupling
        assert rotated[1, 4] == pytest.approx(p.delta_over_omega0, abs=1e-12)


def test_effective_hamiltonian_couplings():
    h = effective_hamiltonian_matrix(0.6, 1.1)
    assert h[1, 3] == pytest.approx(math.sqrt(2) * 0.6, abs=1e-15)
    assert h[0, 3] == pytest.approx(1.1 / math.sqrt(2), abs=1e-15)
    assert h[2, 3] == pytest.approx(1.1 / math.sqrt(2), abs=1e-15)
    assert np.max(np.abs(h - h.conj().T)) == 0.0


def test_effective_hamiltonian_vanishes_without_pump():
    assert np.all(effective_hamiltonian_matrix(0.0, 1.0) == 0.0)


def test_effective_hamiltonian_rejects_asymmetric_drive():
    with pytest.raises(ValueError):
        effective_hamiltonian_matrix(0.5, 1.0, omega11=0.6)
    with pytest.raises(ValueError):
        effective_hamiltonian_matrix(0.5, 1.0, omega12=0.9)


def test_build_effective_hamiltonian_from_params():
    p = SimulationParams()
    h = build_effective_hamiltonian(p, 0.7)
    assert h.basis == "eff4"
    assert h.entries[1, 3] == pytest.approx(math.sqrt(2), abs=1e-12)  # pump peak


def test_dark_state_annihilated():
    rng = np.random.default_rng(24)
    for _ in range(20):
        w1, w2 = rng.uniform(0.01, 2.0, size=2)
        h = effective_hamiltonian_matrix(float(w1), float(w2), delta=0.7)
        d = dark_state(float(w1), float(w2)).amplitudes
        assert np.max(np.abs(h @ d)) <= 1e-12
        assert abs(np.vdot(d, h @ d)) <= 1e-12


def test_dark_state_limits():
    np.testing.assert_allclose(dark_state(0.0, 1.0).amplitudes, [0, 1, 0, 0], atol=1e-15)
    equal = dark_state(1.0, 1.0).amplitudes
    s = 1 / math.sqrt(3)
    np.testing.assert_allclose(equal.real, [-s, s, -s, 0], atol=1e-12)
    pump_only = dark_state(1.0, 0.0).amplitudes
    np.testing.assert_allclose(pump_only.real, [-1 / math.sqrt(2), 0, -1 / math.sqrt(2), 0],
                               atol=1e-15)
    with pytest.raises(ValueError):
        dark_state(0.0, 0.0)


# ---------------------------------------------------------------------------
# singlet states
# ---------------------------------------------------------------------------

def test_singlet_two_particles():
    s = singlet_state(2)
    inv_sqrt2 = 1 / math.sqrt(2)
    np.testing.assert_allclose(s.amplitudes.real, [0, inv_sqrt2, -inv_sqrt2, 0], atol=1e-15)


def test_singlet_three_matches_dark_state_endpoint():
    s3 = singlet_state(3)
    target = embed_state(singlet_target("logic9"), "full27")
    assert np.max(np.abs(s3.amplitudes - target.amplitudes)) <= 1e-12


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_singlet_normalized(n):
    assert singlet_state(n).norm() == pytest.approx(1.0, abs=1e-12)


def test_singlet_range_checked():
    for bad in (1, 7, 0):
        with pytest.raises(ValueError):
            singlet_state(bad)


def _pair_swap_matrix(j, k):
    """Permutation on three qutrits exchanging atoms j and k (1-based)."""
    swap = np.zeros((27, 27))
    for a in range(3):
        for b in range(3):
            for c in range(3):
                atoms = [a, b, c]
                atoms[j - 1], atoms[k - 1] = atoms[k - 1], atoms[j - 1]
                swap[9 * atoms[0] + 3 * atoms[1] + atoms[2], 9 * a + 3 * b + c] = 1.0
    return swap


@pytest.mark.parametrize("pair", [(1, 2), (1, 3), (2, 3)])
def test_singlet_antisymmetric_under_any_pair_swap(pair):
    s3 = singlet_state(3).amplitudes
    swap = _pair_swap_matrix(*pair)
    np.testing.assert_allclose(swap @ s3, -s3, atol=1e-15)


# ---------------------------------------------------------------------------
# collapse operators
# ---------------------------------------------------------------------------

def test_collapse_channel_count_and_rates():
    p = SimulationParams(model="full27", dissipation="lindblad", gamma_e_over_omega0=0.02)
    jumps = collapse_operators(p)
    assert len(jumps) == 6
    for j in jumps:
        assert j.rate_over_omega0 == pytest.approx(0.01)
        assert j.op.basis == "full27"


def test_collapse_maps_state3_to_state2():
    p = SimulationParams(model="full27", dissipation="lindblad", gamma_e_over_omega0=1.0)
    s_g0_1 = collapse_operators(p)[0]
    assert s_g0_1.label == "S_g0,1"
    basis = logic_embedding()
    out = s_g0_1.op.entries @ basis.states[2].amplitudes
    np.testing.assert_allclose(out, basis.states[1].amplitudes, atol=1e-15)


def test_collapse_operators_square_to_zero():
    p = SimulationParams(model="full27", dissipation="lindblad", gamma_e_over_omega0=1.0)
    for j in collapse_operators(p):
        assert np.max(np.abs(j.op.entries @ j.op.entries)) == 0.0


def test_collapse_completeness_per_atom():
    # rate-weighted sum over the two channels of one atom empties |e> of that
    # atom at the full rate gamma_e: sum_p gamma * S+S = gamma_e * P_e
    gamma_e = 0.8
    p = SimulationParams(model="full27", dissipation="lindblad", gamma_e_over_omega0=gamma_e)
    jumps = collapse_operators(p)
    eye3 = np.eye(3)
    p_e = np.diag([0.0, 0.0, 1.0])
    for atom, projector in enumerate((np.kron(p_e, np.kron(eye3, eye3)),
                                      np.kron(eye3, np.kron(p_e, eye3)),
                                      np.kron(eye3, np.kron(eye3, p_e)))):
        total = sum(j.rate_over_omega0 * j.op.entries.conj().T @ j.op.entries
                    for j in jumps if j.label.endswith(str(atom + 1)))
        np.testing.assert_allclose(total, gamma_e * projector, atol=1e-15)


# ---------------------------------------------------------------------------
# regime report and embeddings
# ---------------------------------------------------------------------------

def test_blockade_report_ideal_point():
    report = blockade_regime_report(SimulationParams())
    assert not report.blockade_flag
    assert not report.detuning_flag
    # max drive is the Stokes peak 2*exp(-0.49)
    assert report.max_omega == pytest.approx(2 * math.exp(-0.49), abs=1e-9)
    assert report.u_over_max_omega == pytest.approx(10 / (2 * math.exp(-0.49)), rel=1e-8)
    assert report.u_over_delta == pytest.approx(10.0)


def test_blockade_report_flags():
    weak_u = blockade_regime_report(SimulationParams(U_over_omega0=0.0))
    assert weak_u.blockade_flag and weak_u.messages
    weak_delta = blockade_regime_report(SimulationParams(delta_over_omega0=0.0))
    assert weak_delta.detuning_flag
    assert weak_delta.u_over_delta == math.inf


def test_initial_state_per_model():
    for model, dim in (("logic9", 9), ("full27", 27), ("eff4", 4)):
        psi = initial_state(SimulationParams(model=model))
        assert psi.dim == dim
        assert psi.norm() == pytest.approx(1.0)
    full = initial_state(SimulationParams(model="full27"))
    np.testing.assert_allclose(full.amplitudes, logic_embedding().states[2].amplitudes)


def test_embed_state_chain():
    d = dark_state(1.0, 1.0)
    in_logic = embed_state(d, "logic9")
    in_full = embed_state(d, "full27")
    assert in_logic.norm() == pytest.approx(1.0, abs=1e-12)
    assert in_full.norm() == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(in_full.amplitudes, singlet_state(3).amplitudes, atol=1e-12)


def test_hamiltonian_terms_match_spec_surface():
    p = SimulationParams()
    terms = hamiltonian_terms(p, "full27")
    np.testing.assert_array_equal(terms.at(0.9), build_full_hamiltonian(p, 0.9).entries)
