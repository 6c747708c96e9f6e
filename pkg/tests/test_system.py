"""Eigenvalue chain and densities: closed forms against frozen references.

The frozen numbers were produced once by the independent routes in the
oracle module (finite-difference spectrum, quadrature normalization)
and are pinned here at full precision so any drift in the chain
E_theta -> lambda -> beta -> E -> N is caught immediately.
"""

import math

import numpy as np
import pytest

from kratzer2d import (
    AngularMode,
    StateSpec,
    UnboundAngularError,
    angular_eigenvalue,
    angular_function,
    density,
    energy,
    energy_total,
    make_params,
    normalization,
    solve_state,
)
from kratzer2d.system import mathieu_coupling


# ------------------------------------------------------------------- params


def test_make_params_validation():
    bad = [
        dict(De=0.0, re=1.0),
        dict(De=-1.0, re=1.0),
        dict(De=1.0, re=0.0),
        dict(De=1.0, re=1.0, Dm=-0.1),
        dict(De=1.0, re=1.0, delta=-0.2),
        dict(De=1.0, re=1.0, mu=0.0),
    ]
    for kwargs in bad:
        with pytest.raises(ValueError):
            make_params(**kwargs)


def test_expanded_well_coefficients():
    p = make_params(De=1.0, re=1.0)
    assert (p.A, p.B, p.C) == (-2.0, 1.0, 1.0)
    p = make_params(De=3.0, re=1.0, Dm=0.4, delta=0.2)
    assert (p.A, p.B, p.C) == (-6.0, 3.0, 3.0)
    p = make_params(De=0.5, re=2.0)
    assert (p.A, p.B, p.C) == (-2.0, 2.0, 0.5)


def test_mathieu_coupling_value(dipole_params):
    assert mathieu_coupling(dipole_params) == pytest.approx(0.4, rel=1e-15)


# -------------------------------------------------------- angular eigenvalue


def test_angular_eigenvalue_no_dipole_exact():
    # With b = 0 both routes reduce to delta^2 - (m + delta)^2 exactly.
    for delta in (0.0, 0.2, 0.5):
        p = make_params(De=1.0, re=1.0, delta=delta)
        for m in (0, 1, 2):
            expected = delta**2 - (m + delta) ** 2
            for method in ("series", "matrix"):
                assert angular_eigenvalue(p, m, method) == pytest.approx(
                    expected, abs=1e-12
                )
    p = make_params(De=1.0, re=1.0)
    assert angular_eigenvalue(p, 1) == pytest.approx(-1.0, abs=1e-15)


def test_angular_eigenvalue_dipole_frozen(dipole_params):
    # delta^2 - a_{2(m+delta)}(b)/4 at m = 2, b = 0.4; matrix value
    # pinned by the tridiagonal eigensolver, series agrees to ~1e-10.
    for method in ("series", "matrix"):
        assert angular_eigenvalue(dipole_params, 2, method) == pytest.approx(
            -4.8010895431, abs=2e-9
        )


def test_angular_eigenvalue_rejects_bad_input(std_params):
    with pytest.raises(ValueError):
        angular_eigenvalue(std_params, -1)
    with pytest.raises(ValueError):
        angular_eigenvalue(std_params, 1, method="magic")


# ------------------------------------------------------------ solved states


def test_standard_state_chain(std_params, std_state):
    # Ground state of the unit well: lambda = 1/2 + sqrt(2), then the
    # rest of the chain by hand; energy pinned by the finite-difference
    # eigensolver to 3e-9 relative.
    assert std_state.b == 0.0
    assert std_state.e_theta == pytest.approx(0.0, abs=1e-15)
    assert std_state.lam == pytest.approx(0.5 + math.sqrt(2.0), rel=1e-14)
    assert std_state.beta == pytest.approx(2.0 / (0.5 + math.sqrt(2.0)), rel=1e-14)
    assert std_state.beta == pytest.approx(1.0448154999, rel=1e-9)
    assert std_state.energy == pytest.approx(-0.5458197144, rel=1e-9)
    assert std_state.energy_total == pytest.approx(0.4541802856, rel=1e-9)
    assert std_state.norm == pytest.approx(0.2733917286, rel=1e-9)
    assert std_state.mode is AngularMode.PAPER_COSINE


def test_dipole_state_chain(dipole_params, dipole_state):
    # Full chain with dipole + flux (n = 2, m = 2).  The lambda here
    # includes the +delta^2 of the radial radicand; the whole chain is
    # pinned independently by the finite-difference spectrum (see
    # test_oracle.test_fd_pins_dipole_chain).
    assert dipole_state.b == pytest.approx(0.4, rel=1e-15)
    assert dipole_state.e_theta == pytest.approx(-4.8010895431, rel=1e-9)
    assert dipole_state.lam == pytest.approx(3.7925809850, rel=1e-9)
    assert dipole_state.beta == pytest.approx(1.0358077022, rel=1e-9)
    assert dipole_state.energy == pytest.approx(-0.5364487980, rel=1e-9)
    assert dipole_state.energy_total == pytest.approx(2.4635512020, rel=1e-9)


def test_lambda_general_no_dipole():
    # lambda = 1/2 + sqrt((m + delta)^2 + 2 mu B) when b = 0.
    for De, delta, m, mu in [(1.0, 0.0, 0, 1.0), (3.0, 0.2, 2, 1.0), (2.0, 0.5, 1, 2.0)]:
        p = make_params(De=De, re=1.0, delta=delta, mu=mu)
        state = solve_state(p, StateSpec(0, m))
        expected = 0.5 + math.sqrt((m + delta) ** 2 + 2.0 * mu * p.B)
        assert state.lam == pytest.approx(expected, rel=1e-13)


def test_energy_scaling_with_quantum_number(std_params):
    # E = -mu A^2 / (2 (n + lambda)^2): strictly increasing toward zero.
    energies = [solve_state(std_params, StateSpec(n, 0)).energy for n in range(6)]
    assert all(e < 0.0 for e in energies)
    assert all(b > a for a, b in zip(energies, energies[1:]))


def test_accessor_functions_match_fields(std_params, std_state):
    assert energy(std_params, std_state) == pytest.approx(std_state.energy, rel=1e-15)
    assert energy_total(std_params, std_state) == pytest.approx(
        std_state.energy_total, rel=1e-15
    )
    assert normalization(std_state) == std_state.norm


def test_norm_identities():
    # n = 0: N^2 = 2 beta^2 / (Gamma(2 lam) lam pi).
    p = make_params(De=1.0, re=1.0)
    s = solve_state(p, StateSpec(0, 0))
    expected = 2.0 * s.beta**2 / (math.gamma(2.0 * s.lam) * s.lam * math.pi)
    assert math.exp(s.log_norm_sq) == pytest.approx(expected, rel=1e-13)
    # lambda = 1 (Gamma ratio collapses): N^2 = 2 beta^2 / ((n+1)^2 pi).
    p1 = make_params(De=0.125, re=1.0)  # 2 mu B = 1/4 -> lambda = 1
    for n in range(4):
        s = solve_state(p1, StateSpec(n, 0))
        assert s.lam == pytest.approx(1.0, abs=1e-14)
        expected = 2.0 * s.beta**2 / ((n + 1.0) ** 2 * math.pi)
        assert math.exp(s.log_norm_sq) == pytest.approx(expected, rel=1e-13)


def test_series_and_matrix_methods_agree_without_dipole(std_params):
    a = solve_state(std_params, StateSpec(1, 1), method="series")
    b = solve_state(std_params, StateSpec(1, 1), method="matrix")
    assert a.energy == pytest.approx(b.energy, rel=1e-12)
    assert a.lam == pytest.approx(b.lam, rel=1e-12)


def test_unbound_angular_error():
    # A strong dipole against a shallow well: the m = 0 characteristic
    # number goes negative enough that the radial radicand flips sign.
    p = make_params(De=0.01, re=1.0, Dm=1.0)
    with pytest.raises(UnboundAngularError):
        solve_state(p, StateSpec(0, 0), method="matrix")


# ------------------------------------------------------------ angular modes


def test_cosine_profile_values(std_params):
    # m = 0 is the flat normalized branch, m >= 1 the plain cosine.
    for theta in (0.0, 0.9, 2.4):
        assert angular_function(std_params, 0, AngularMode.PAPER_COSINE, theta) == (
            pytest.approx(1.0 / math.sqrt(2.0), rel=1e-15)
        )
    assert angular_function(std_params, 2, AngularMode.PAPER_COSINE, 0.0) == 1.0
    theta = np.linspace(0.0, 2.0 * math.pi, 7)
    vals = angular_function(std_params, 2, AngularMode.PAPER_COSINE, theta)
    assert np.allclose(vals, np.cos(2.0 * theta), atol=1e-15)


def test_mathieu_profile_zero_coupling_is_shifted_cosine():
    # At b = 0 the even solution is a pure cos((m + delta) theta), up
    # to the normalization that fixes the squared integral at pi.
    p = make_params(De=1.0, re=1.0, delta=0.2)
    theta = np.array([0.1, 0.7, 1.9, 3.0])
    vals = angular_function(p, 1, AngularMode.MATHIEU_NUMERIC, theta)
    ratios = vals / np.cos(1.2 * theta)
    assert np.ptp(ratios) <= 1e-12
    assert ratios[0] == pytest.approx(0.98101038, rel=1e-6)


# ----------------------------------------------------------------- density


def test_density_scalar_and_shapes(dipole_params, dipole_state):
    out = density(dipole_params, dipole_state, 1.0, 0.0)
    assert isinstance(out, float) and out > 0.0
    r = np.linspace(0.1, 5.0, 11)
    vals = density(dipole_params, dipole_state, r, 0.3)
    assert vals.shape == (11,) and np.all(vals >= 0.0)


def test_density_angular_node(dipole_params, dipole_state):
    # m = 2 cosine profile vanishes at theta = pi/4.
    assert density(dipole_params, dipole_state, 1.0, math.pi / 4.0) < 1e-12


def test_density_vanishes_at_origin_limit(std_params, std_state):
    # rho ~ r^(2 lam - 1) with lam > 1/2, so the density falls to zero
    # as r -> 0 and decays exponentially at large r.
    small = density(std_params, std_state, 1e-12, 0.0)
    large = density(std_params, std_state, 60.0, 0.0)
    peak = density(std_params, std_state, 1.0, 0.0)
    assert small < 1e-15 and large < 1e-15 and peak > 1e-3
