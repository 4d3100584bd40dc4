"""
Tests for amplitude evolution, measures and time averages.
"""

import math

import numpy as np
import pytest

from qwdefect.errors import PreconditionError
from qwdefect.types import Chirality
from qwdefect.walk import (
    CoinState,
    Measure,
    SpinorField,
    WalkConfig,
    chirality_measure,
    chirality_time_average,
    evolve,
    matrix_element_series,
    measure,
    rescaled_empirical_cdf,
    step,
    time_average,
)


# ============= Single steps =============


def test_one_step_from_origin():
    config = WalkConfig.phase_defect(math.pi / 3)
    psi0 = CoinState(0.6, 0.8j)
    stepped = step(SpinorField.at_origin(psi0), config)
    u0 = config.defect

    assert stepped.window == (-1, 1)
    assert stepped.time_index == 1
    np.testing.assert_allclose(stepped.at(-1), [u0.a * 0.6 + u0.b * 0.8j, 0])
    np.testing.assert_allclose(stepped.at(1), [0, u0.c * 0.6 + u0.d * 0.8j])
    np.testing.assert_allclose(stepped.at(0), [0, 0])


def test_bulk_coin_used_away_from_defect(pi_defect):
    state = SpinorField.localized(3, [1.0, 0.0])
    stepped = step(state, pi_defect)
    assert stepped.at(2)[0] == pytest.approx(pi_defect.bulk.a)
    assert stepped.at(4)[1] == pytest.approx(pi_defect.bulk.c)


# ============= Evolution =============


def test_norm_preserved(rng):
    config = WalkConfig.phase_defect(1.3)
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    final = evolve(SpinorField.at_origin(CoinState.normalized(*v)), config, 150)
    assert final.norm2 == pytest.approx(1.0, abs=1e-12)
    assert measure(final).total() == pytest.approx(1.0, abs=1e-12)


def test_parity_of_support(pi_defect, symmetric_state):
    mu = measure(evolve(SpinorField.at_origin(symmetric_state), pi_defect, 20))
    odd = [mu[x] for x in range(-19, 20, 2)]
    assert max(odd) == 0.0


def test_chirality_measures_add_up(pi_defect, symmetric_state):
    state = evolve(SpinorField.at_origin(symmetric_state), pi_defect, 7)
    left = chirality_measure(state, Chirality.L)
    right = chirality_measure(state, Chirality.R)
    np.testing.assert_allclose((left + right).masses, measure(state).masses, atol=1e-15)


def test_symmetric_state_gives_symmetric_hadamard_walk(hadamard_walk, symmetric_state):
    mu = measure(evolve(SpinorField.at_origin(symmetric_state), hadamard_walk, 60))
    xs = np.arange(1, 61)
    np.testing.assert_allclose(mu.values(xs), mu.values(-xs), atol=1e-13)


def test_negative_steps_rejected(pi_defect, symmetric_state):
    with pytest.raises(ValueError):
        evolve(SpinorField.at_origin(symmetric_state), pi_defect, -1)


def test_unnormalized_state_rejected():
    with pytest.raises(PreconditionError):
        CoinState(1.0, 1.0)


# ============= Time averages =============


def test_time_average_of_one_step_is_initial_measure(pi_defect, symmetric_state):
    avg = time_average(SpinorField.at_origin(symmetric_state), pi_defect, 1)
    assert avg[0] == pytest.approx(1.0)
    assert avg.total() == pytest.approx(1.0)


def test_time_average_is_mean_of_measures(pi_defect, symmetric_state):
    initial = SpinorField.at_origin(symmetric_state)
    avg = time_average(initial, pi_defect, 4)
    expected = sum((measure(evolve(initial, pi_defect, n)) for n in range(4)), Measure(0, np.zeros(1)))
    xs = range(-3, 4)
    np.testing.assert_allclose(avg.values(xs), expected.values(xs) / 4, atol=1e-15)


def test_chirality_averages_add_up(pi_defect, symmetric_state):
    initial = SpinorField.at_origin(symmetric_state)
    total = time_average(initial, pi_defect, 50)
    left = chirality_time_average(initial, pi_defect, 50, Chirality.L)
    right = chirality_time_average(initial, pi_defect, 50, Chirality.R)
    np.testing.assert_allclose((left + right).masses, total.masses, atol=1e-15)


# ============= Empirical CDF =============


def test_empirical_cdf_is_monotone_and_complete(pi_defect, symmetric_state):
    ys = np.linspace(-1.0, 1.0, 41)
    cdf = rescaled_empirical_cdf(SpinorField.at_origin(symmetric_state), pi_defect, 40, ys)
    assert np.all(np.diff(cdf) >= -1e-15)
    assert cdf[-1] == pytest.approx(1.0)


@pytest.mark.parametrize("points", [[0.2, 0.1], [-1.5, 0.0], [0.0, 0.0]])
def test_empirical_cdf_rejects_bad_points(points, pi_defect, symmetric_state):
    with pytest.raises(ValueError):
        rescaled_empirical_cdf(SpinorField.at_origin(symmetric_state), pi_defect, 10, points)


# ============= Matrix elements =============


def test_matrix_element_series_first_terms(pi_defect):
    sources = [(0, Chirality.L), (0, Chirality.R)]
    targets = [(0, Chirality.L), (-1, Chirality.L), (1, Chirality.R)]
    series = matrix_element_series(pi_defect, sources, targets, 3)
    u0 = pi_defect.defect

    assert series.shape == (4, 3, 2)
    np.testing.assert_allclose(series[0], [[1, 0], [0, 0], [0, 0]])
    np.testing.assert_allclose(series[1, 1], [u0.a, u0.b])
    np.testing.assert_allclose(series[1, 2], [u0.c, u0.d])
    np.testing.assert_allclose(series[1, 0], [0, 0])
