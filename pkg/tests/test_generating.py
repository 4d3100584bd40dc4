"""
Tests for the closed-form generating functions and their poles.
"""

import math

import numpy as np
import pytest

from qwdefect.coins import CoinMatrix, hadamard
from qwdefect.errors import DeterminantMismatchError
from qwdefect.theory import (
    find_poles,
    lambda0,
    passage_asymptotics,
    taylor_coefficients,
    time_avg_limit,
    xi0_generating,
    xi_x_generating,
)
from qwdefect.walk import CoinState, SpinorField, WalkConfig, evolve, passage_table, step


def _engine_series(config, x, n_max):
    tables = [passage_table(n, config) for n in range(n_max + 1)]
    return np.array([t[x].weight if x in t else np.zeros((2, 2)) for t in tables])


# ============= Series coefficients =============


def test_taylor_coefficients_of_geometric_series():
    coeffs = taylor_coefficients(lambda z: 1.0 / (1.0 - z / 2.0), 10)
    np.testing.assert_allclose(coeffs, 0.5 ** np.arange(11), atol=1e-13)


@pytest.mark.parametrize("omega", [math.pi / 2, math.pi])
def test_origin_generating_function_matches_engine(omega):
    config = WalkConfig.phase_defect(omega)
    coeffs = taylor_coefficients(lambda z: xi0_generating(config, z), 12, radius=0.8)
    np.testing.assert_allclose(coeffs, _engine_series(config, 0, 12), atol=1e-10)


@pytest.mark.parametrize("x", [-3, -1, 1, 2])
def test_off_origin_generating_function_matches_engine(x):
    config = WalkConfig.phase_defect(2 * math.pi / 3)
    coeffs = taylor_coefficients(lambda z: xi_x_generating(config, x, z), 12, radius=0.8)
    np.testing.assert_allclose(coeffs, _engine_series(config, x, 12), atol=1e-10)


def test_origin_needs_its_own_formula(pi_defect):
    with pytest.raises(ValueError):
        xi_x_generating(pi_defect, 0, 0.3)


def test_xi0_is_identity_at_zero(pi_defect):
    np.testing.assert_allclose(xi0_generating(pi_defect, 0.0), np.eye(2))


# ============= Poles =============


def test_poles_for_pi_defect(pi_defect):
    poles = find_poles(pi_defect)
    assert poles.localized
    assert poles.m == pytest.approx(-0.5)
    assert poles.gamma == pytest.approx(math.pi / 4)
    assert poles.points[0] == pytest.approx((3 + 1j) / math.sqrt(10))
    assert poles.points[1] == pytest.approx((3 - 1j) / math.sqrt(10))
    assert poles.points[2] == pytest.approx(-poles.points[0])
    for w in poles.points:
        assert abs(w) == pytest.approx(1.0)


@pytest.mark.parametrize("omega", [math.pi / 2, 2.0, math.pi])
def test_lambda0_vanishes_at_poles(omega):
    config = WalkConfig.phase_defect(omega)
    for z in find_poles(config).z_points:
        assert abs(lambda0(config, z, radial=True)) < 1e-8


def test_no_poles_without_defect():
    poles = find_poles(WalkConfig.phase_defect(0.0))
    assert not poles.localized
    assert poles.gamma is None


def test_poles_need_matching_determinants():
    tilted = CoinMatrix.from_matrix(hadamard().matrix * np.exp(0.3j))
    with pytest.raises(DeterminantMismatchError):
        find_poles(WalkConfig(defect=tilted, bulk=hadamard()))


# ============= Asymptotics =============


@pytest.mark.parametrize("omega", [math.pi / 2, 2.0, math.pi])
@pytest.mark.parametrize("x", [-2, -1, 0, 1, 3])
def test_pole_residues_carry_time_averaged_mass(omega, x, symmetric_state):
    config = WalkConfig.phase_defect(omega)
    asym = passage_asymptotics(config, x)
    assert len(asym.residues) == 4
    assert asym.averaged_mass(symmetric_state) == pytest.approx(
        time_avg_limit(config, symmetric_state, x), rel=1e-6, abs=1e-12
    )


def test_pole_residues_for_other_states(pi_defect):
    for psi0 in (CoinState.left(), CoinState.right(), CoinState.normalized(0.3, 0.2 - 0.5j)):
        for x in (-1, 0, 2):
            asym = passage_asymptotics(pi_defect, x)
            assert asym.averaged_mass(psi0) == pytest.approx(time_avg_limit(pi_defect, psi0, x), rel=1e-6)


def test_asymptotics_track_the_engine(pi_defect, symmetric_state):
    state = evolve(SpinorField.at_origin(symmetric_state), pi_defect, 400)
    tracks = {x: passage_asymptotics(pi_defect, x) for x in (-1, 0, 1)}
    misses = []
    for n in range(400, 420):
        for x, asym in tracks.items():
            misses.append(np.linalg.norm(state.at(x) - asym.weight(n) @ symmetric_state.vector) ** 2)
        state = step(state, pi_defect)
    assert np.mean(misses) < 0.01


def test_no_asymptotics_without_defect(symmetric_state):
    asym = passage_asymptotics(WalkConfig.phase_defect(0.0), 0)
    assert asym.residues == []
    np.testing.assert_array_equal(asym.weight(10), np.zeros((2, 2)))
    assert asym.averaged_mass(symmetric_state) == 0.0
