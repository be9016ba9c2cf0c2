import pytest

from trisinglet import SimulationParams, integrate_schrodinger, initial_state
from trisinglet.model import hamiltonian_terms


@pytest.fixture(scope="session")
def ideal_params():
    """The ideal operating point: Omega0*T=10, tau=0.7T, U=10, delta=1, window +-4T."""
    return SimulationParams()


@pytest.fixture(scope="session")
def ideal_traj_logic9(ideal_params):
    return integrate_schrodinger(
        hamiltonian_terms(ideal_params, "logic9"), initial_state(ideal_params), ideal_params
    )


@pytest.fixture(scope="session")
def ideal_traj_full27(ideal_params):
    p = ideal_params.with_(model="full27")
    return integrate_schrodinger(hamiltonian_terms(p, "full27"), initial_state(p), p)
