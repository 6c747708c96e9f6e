"""Shared fixtures: the two states most of the suite keeps coming back to.

The "standard" state is the simplest bound configuration (unit well,
no dipole, no flux, ground state).  The "dipole" state switches
everything on at once — deep well, dipole coupling, flux, excited
state with angular momentum — so it exercises the Mathieu leg of the
angular eigenvalue chain.
"""

import pytest

from kratzer2d import StateSpec, make_params, solve_state


@pytest.fixture(scope="session")
def std_params():
    return make_params(De=1.0, re=1.0)


@pytest.fixture(scope="session")
def std_state(std_params):
    return solve_state(std_params, StateSpec(0, 0))


@pytest.fixture(scope="session")
def dipole_params():
    return make_params(De=3.0, re=1.0, Dm=0.1, delta=0.2)


@pytest.fixture(scope="session")
def dipole_state(dipole_params):
    return solve_state(dipole_params, StateSpec(2, 2))
