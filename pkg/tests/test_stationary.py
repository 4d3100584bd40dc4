"""
Tests for eigenvectors and stationary measures of the phase-defect walk.
"""

import dataclasses
import math

import numpy as np
import pytest

from qwdefect.errors import PreconditionError
from qwdefect.theory import (
    EigenData,
    build_eigenvector,
    chirality_time_avg_at_origin,
    eigen_residual,
    eigenvalues,
    mass_points_check,
    match_time_average,
    orthogonal_initial_state,
    stationarity_defect,
    stationary_measure,
    uniform_hadamard_measure,
)
from qwdefect.theory.stationary import BRANCHES
from qwdefect.walk import WalkConfig, time_average

WINDOW = 100


# ============= Eigenvalues =============


@pytest.mark.parametrize("omega", [math.pi / 3, math.pi / 2, math.pi])
def test_eigenvalues_on_unit_circle(omega):
    etas = eigenvalues(omega)
    assert len(etas) == 4
    np.testing.assert_allclose(np.abs(etas), 1.0, atol=1e-14)
    assert len({complex(round(e.real, 10), round(e.imag, 10)) for e in etas}) == 4


def test_pi_eigenvalues():
    expected = (1 + 3j) / math.sqrt(10)
    assert eigenvalues(math.pi)[0] == pytest.approx(expected)


def test_trivial_defect_has_no_eigenvectors():
    with pytest.raises(PreconditionError):
        EigenData.from_branch(0.0, 1, 1)


@pytest.mark.parametrize("sigma,tau", BRANCHES)
def test_decay_ratio(sigma, tau):
    data = EigenData.from_branch(math.pi, sigma, tau)
    assert abs(data.gamma_root) == pytest.approx(1 / math.sqrt(5))


def test_boundary_condition_enforced():
    data = EigenData.from_branch(math.pi / 2, 1, -1)
    with pytest.raises(PreconditionError):
        dataclasses.replace(data, phi_R0=data.phi_R0 + 0.1)


# ============= Eigenvectors =============


@pytest.mark.parametrize("omega", [math.pi / 2, 2.0, math.pi])
@pytest.mark.parametrize("sigma,tau", BRANCHES)
def test_eigen_equation_holds(omega, sigma, tau):
    data = EigenData.from_branch(omega, sigma, tau)
    assert eigen_residual(data, WINDOW) <= 1e-12


@pytest.mark.parametrize("sigma,tau", BRANCHES)
def test_measure_is_stationary(sigma, tau):
    data = EigenData.from_branch(2 * math.pi / 3, sigma, tau)
    assert stationarity_defect(data, WINDOW, n=30) <= 1e-10


def test_eigenvector_measure_matches_closed_form():
    data = EigenData.from_branch(math.pi / 2, -1, 1)
    psi = build_eigenvector(data, WINDOW)
    mu = np.sum(np.abs(psi.amplitudes) ** 2, axis=1)
    closed = stationary_measure(math.pi / 2, data.phi_L0, data.phi_R0, extent=WINDOW)
    np.testing.assert_allclose(mu, closed.masses, atol=1e-12)


# ============= Stationary measures =============


@pytest.mark.parametrize("omega", [math.pi / 2, 2.0, math.pi])
def test_stationary_measure_equals_time_average(omega):
    match = match_time_average(omega, extent=30)
    assert match.max_deviation <= 1e-12
    assert match.max_deviation_general <= 1e-12


def test_origin_chirality_split_at_pi():
    left, right = chirality_time_avg_at_origin(math.pi)
    assert left == pytest.approx(0.16)
    assert right == pytest.approx(0.16)


def test_uniform_measure():
    np.testing.assert_allclose(uniform_hadamard_measure(0.7, range(-5, 6)), 0.7, atol=1e-15)


# ============= Mass points =============


@pytest.mark.parametrize("omega", [math.pi / 4, math.pi / 2, math.pi, 5.0])
def test_rotated_poles_are_eigenvalues(omega):
    report = mass_points_check(omega)
    assert not report.skipped
    assert report.matched(1e-10)


def test_mass_points_skipped_without_defect():
    report = mass_points_check(0.0)
    assert report.skipped
    assert report.matched()


# ============= Orthogonal states =============


def test_orthogonal_state_is_orthogonal():
    omega = math.pi
    state = orthogonal_initial_state(omega, WINDOW)
    assert state.norm2 == pytest.approx(1.0)
    for sigma, tau in BRANCHES:
        v = build_eigenvector(EigenData.from_branch(omega, sigma, tau), WINDOW)
        assert abs(np.vdot(v.amplitudes.reshape(-1), state.amplitudes.reshape(-1))) < 1e-10


def test_orthogonal_state_delocalizes():
    omega = math.pi
    config = WalkConfig.phase_defect(omega)
    avg = time_average(orthogonal_initial_state(omega, WINDOW), config, 2000)
    assert avg[0] <= 0.01
