"""
Tests for the time-averaged and weak limit measures.
"""

import math

import numpy as np
import pytest

from qwdefect.coins import CoinMatrix, hadamard, random_coin, with_determinant
from qwdefect.errors import DeterminantMismatchError
from qwdefect.theory import (
    DerivedParams,
    f_K,
    homogeneous_density,
    localized_mass,
    localized_mass_by_sum,
    phase_defect_atom,
    phase_defect_weight,
    phase_defect_time_avg,
    time_avg_limit,
    time_avg_table,
    weak_cdf,
    weak_density,
)
from qwdefect.walk import CoinState, SpinorField, WalkConfig, rescaled_empirical_cdf, time_average


def _random_state(rng):
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return CoinState.normalized(v[0], v[1])


def _random_pair(rng):
    bulk = random_coin(rng)
    while not 0.3 < abs(bulk.a) < 0.9:
        bulk = random_coin(rng)
    return WalkConfig(defect=with_determinant(random_coin(rng), bulk.det), bulk=bulk)


def _cdf_gap(config, psi0, ys, n=2000):
    rho = weak_density(config, psi0)
    empirical = rescaled_empirical_cdf(SpinorField.at_origin(psi0), config, n, ys)
    return np.max(np.abs(empirical - [rho.cdf(float(y)) for y in ys]))


# ============= Time-averaged limit =============


def test_pi_defect_values(pi_defect, symmetric_state):
    assert time_avg_limit(pi_defect, symmetric_state, 0) == pytest.approx(0.32)
    assert time_avg_limit(pi_defect, symmetric_state, 1) == pytest.approx(0.192)
    assert time_avg_limit(pi_defect, symmetric_state, -1) == pytest.approx(0.192)
    assert time_avg_limit(pi_defect, symmetric_state, 2) == pytest.approx(0.192 * 0.2)


@pytest.mark.parametrize("omega", [math.pi / 4, math.pi / 2, 2.0, math.pi, 5.0])
def test_general_formula_matches_phase_family(omega, symmetric_state):
    config = WalkConfig.phase_defect(omega)
    xs = range(-6, 7)
    expected = [phase_defect_time_avg(omega, x) for x in xs]
    np.testing.assert_allclose(time_avg_table(config, symmetric_state, xs), expected, atol=1e-13)


def test_phase_family_asymmetry_at_half_pi():
    assert phase_defect_time_avg(math.pi / 2, 0) == pytest.approx(2 / 9)
    assert phase_defect_time_avg(math.pi / 2, 1) == pytest.approx(2 / 9)
    assert phase_defect_time_avg(math.pi / 2, -1) == pytest.approx(2 / 27)


def test_no_localization_without_defect(symmetric_state):
    config = WalkConfig.phase_defect(0.0)
    params = DerivedParams.from_config(config)
    assert not params.localizes
    assert time_avg_limit(config, symmetric_state, 0) == 0.0
    assert localized_mass(config, symmetric_state) == 0.0


def test_mismatched_determinants_rejected(symmetric_state):
    tilted = CoinMatrix.from_matrix(hadamard().matrix * 1j)
    with pytest.raises(DeterminantMismatchError):
        time_avg_limit(WalkConfig(defect=tilted, bulk=hadamard()), symmetric_state, 0)


def test_engine_time_average_approaches_limit(pi_defect, symmetric_state):
    avg = time_average(SpinorField.at_origin(symmetric_state), pi_defect, 5000)
    assert avg[0] == pytest.approx(0.32, abs=0.02)
    assert avg[1] == pytest.approx(0.192, abs=0.02)
    assert avg[-1] == pytest.approx(0.192, abs=0.02)


def test_engine_time_average_vanishes_without_defect(symmetric_state):
    avg = time_average(SpinorField.at_origin(symmetric_state), WalkConfig.phase_defect(0.0), 5000)
    assert avg[0] <= 0.02


# ============= Localized mass =============


@pytest.mark.parametrize("k", range(1, 16, 3))
def test_geometric_sum_matches_direct_sum(k, rng):
    config = WalkConfig.phase_defect(k * math.pi / 8)
    psi0 = _random_state(rng)
    assert localized_mass(config, psi0) == pytest.approx(localized_mass_by_sum(config, psi0), abs=1e-10)


@pytest.mark.parametrize("omega", [math.pi / 3, math.pi / 2, math.pi])
def test_phase_family_mass_independent_of_state(omega, rng):
    config = WalkConfig.phase_defect(omega)
    for _ in range(5):
        assert localized_mass(config, _random_state(rng)) == pytest.approx(phase_defect_atom(omega), abs=1e-12)


def test_pi_defect_atom():
    assert phase_defect_atom(math.pi) == pytest.approx(0.8)
    assert phase_defect_atom(math.pi / 2) == pytest.approx(2 / 3)


# ============= Weak limit =============


def test_f_k_shape():
    r = 1 / math.sqrt(2)
    assert f_K(0.0, r) == pytest.approx(1 / math.pi)
    assert f_K(0.8, r) == 0.0
    assert math.isinf(f_K(r, r))
    np.testing.assert_allclose(f_K(np.array([-0.3, 0.3]), r), [f_K(0.3, r)] * 2)
    with pytest.raises(ValueError):
        f_K(0.1, 1.0)


def test_pi_defect_density_mass(pi_defect, symmetric_state):
    rho = weak_density(pi_defect, symmetric_state)
    assert rho.atom_mass == pytest.approx(0.8)
    assert rho.mass() == pytest.approx(1.0, abs=1e-10)
    assert rho.weight(0.0) == 0.0
    assert rho.weight(0.5) == pytest.approx(0.75 / 4.25)


def test_pi_defect_cdf(pi_defect, symmetric_state):
    rho = weak_density(pi_defect, symmetric_state)
    assert weak_cdf(rho, -1.0) == 0.0
    assert weak_cdf(rho, 1.0) == pytest.approx(1.0, abs=1e-10)
    assert weak_cdf(rho, 0.0) - weak_cdf(rho, 0.0, left=True) == pytest.approx(0.8)
    for y in (0.1, 0.3, 0.6):
        assert weak_cdf(rho, y) + weak_cdf(rho, -y, left=True) == pytest.approx(1.0, abs=1e-10)


def test_cdf_argument_range(pi_defect, symmetric_state):
    rho = weak_density(pi_defect, symmetric_state)
    with pytest.raises(ValueError):
        weak_cdf(rho, 1.5)


def test_no_defect_density_is_homogeneous(rng):
    config = WalkConfig.phase_defect(0.0)
    psi0 = _random_state(rng)
    rho = weak_density(config, psi0)
    xs = np.linspace(-0.6, 0.6, 12)
    np.testing.assert_allclose(rho.continuous(xs), homogeneous_density(config.bulk, psi0, xs), atol=1e-12)
    assert rho.atom_mass == 0.0
    assert rho.mass() == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("k", [1, 3, 6, 8, 11, 15])
def test_atom_plus_continuous_mass_is_one(k, rng):
    config = WalkConfig.phase_defect(k * math.pi / 8)
    for _ in range(3):
        rho = weak_density(config, _random_state(rng))
        assert rho.mass() == pytest.approx(1.0, abs=1e-8)


def test_phase_defect_weight_values():
    assert phase_defect_weight(0.5, math.pi) == pytest.approx(0.17647, abs=1e-5)
    assert phase_defect_weight(0.0, math.pi / 2) == 0.0
    np.testing.assert_allclose(phase_defect_weight(np.array([-0.3, 0.3]), 0.0), [1.0, 1.0])
    # odd part sin w (sgn(x) + x) x^2 / (1 + 2 x^2) at w = pi / 2
    x = 0.4
    odd = phase_defect_weight(x, math.pi / 2) - phase_defect_weight(-x, math.pi / 2)
    assert odd == pytest.approx(2 * (1 + x) * x**2 / (1 + 2 * x**2))


@pytest.mark.parametrize("k", range(16))
def test_phase_family_weight_closed_form(k, symmetric_state):
    omega = k * math.pi / 8
    rho = weak_density(WalkConfig.phase_defect(omega), symmetric_state)
    xs = np.linspace(-0.7, 0.7, 15)
    np.testing.assert_allclose(rho.weight(xs), phase_defect_weight(xs, omega), atol=1e-12)


def test_slope_uses_defect_coin(rng):
    config = WalkConfig.phase_defect(2.0)
    psi0 = _random_state(rng)
    rho = weak_density(config, psi0)
    a0, b0 = config.coin_at(0).a, config.coin_at(0).b
    expected = abs(a0) ** 2 * (abs(psi0.alpha) ** 2 - abs(psi0.beta) ** 2) + 2 * (
        a0 * psi0.alpha * np.conj(b0 * psi0.beta)
    ).real
    assert rho.slope == pytest.approx(expected)


CDF_POINTS = np.array([-0.6, -0.5, -0.4, -0.3, -0.2, -0.1, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6])


@pytest.mark.parametrize("k", range(16))
def test_weak_cdf_matches_engine(k, symmetric_state):
    config = WalkConfig.phase_defect(k * math.pi / 8)
    assert _cdf_gap(config, symmetric_state, CDF_POINTS) <= 0.03


@pytest.mark.parametrize("k", [2, 5, 9, 13])
def test_weak_cdf_matches_engine_for_random_states(k, rng):
    config = WalkConfig.phase_defect(k * math.pi / 8)
    assert _cdf_gap(config, _random_state(rng), CDF_POINTS) <= 0.03


def test_weak_cdf_matches_engine_for_random_coins(rng):
    for _ in range(2):
        config = _random_pair(rng)
        ys = abs(config.bulk.a) * np.array([-0.9, -0.7, -0.5, -0.3, -0.15, 0.15, 0.3, 0.5, 0.7, 0.9])
        assert _cdf_gap(config, _random_state(rng), ys) <= 0.03
