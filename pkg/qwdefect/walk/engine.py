"""
Exact amplitude evolution of the one-defect walk.

The lattice is a contiguous complex array that grows by one site on each side
per step. One step sends the amplitude at site y to

    L at y-1:  a_y psi_L(y) + b_y psi_R(y)
    R at y+1:  c_y psi_L(y) + d_y psi_R(y)

which is Psi_{n+1}(x) = P_{x+1} Psi_n(x+1) + Q_{x-1} Psi_n(x-1).
"""

import logging
from typing import Sequence, Tuple

import numpy as np

from qwdefect.types import Chirality
from qwdefect.walk.models import Measure, SpinorField, WalkConfig

logger = logging.getLogger(__name__)

__all__ = [
    "step",
    "evolve",
    "evolve_block",
    "measure",
    "chirality_measure",
    "time_average",
    "chirality_time_average",
    "rescaled_empirical_cdf",
    "matrix_element_series",
]


def _coin_entries(config: WalkConfig, lo: int, size: int) -> Tuple[np.ndarray, ...]:
    """Per-site a, b, c, d over [lo, lo + size - 1]."""
    bulk, defect = config.bulk, config.defect
    entries = [np.full(size, getattr(bulk, name), dtype=np.complex128) for name in "abcd"]
    k = config.defect_site - lo
    if 0 <= k < size:
        for arr, name in zip(entries, "abcd"):
            arr[k] = getattr(defect, name)
    return tuple(entries)


def _advance(lo: int, amps: np.ndarray, config: WalkConfig) -> Tuple[int, np.ndarray]:
    """One step on an (N, 2, ...) block; returns the new lower bound and block."""
    size = amps.shape[0]
    a, b, c, d = _coin_entries(config, lo, size)
    extra = (1,) * (amps.ndim - 2)
    a, b, c, d = (v.reshape((size,) + extra) for v in (a, b, c, d))
    left, right = amps[:, 0], amps[:, 1]

    new = np.zeros((size + 2,) + amps.shape[1:], dtype=np.complex128)
    new[0:size, 0] = a * left + b * right
    new[2 : size + 2, 1] = c * left + d * right
    return lo - 1, new


def evolve_block(lo: int, block: np.ndarray, config: WalkConfig, n: int) -> Tuple[int, np.ndarray]:
    """Evolve several fields at once, stacked on the trailing axes of an (N, 2, ...) block."""
    for _ in range(n):
        lo, block = _advance(lo, block, config)
    return lo, block


def step(state: SpinorField, config: WalkConfig) -> SpinorField:
    lo, amps = _advance(state.lo, state.amplitudes, config)
    return SpinorField(lo=lo, amplitudes=amps, time_index=state.time_index + 1)


def evolve(initial: SpinorField, config: WalkConfig, n: int) -> SpinorField:
    if n < 0:
        raise ValueError(f"Number of steps must be nonnegative, got {n}.")
    lo, amps = initial.lo, initial.amplitudes
    for _ in range(n):
        lo, amps = _advance(lo, amps, config)
    return SpinorField(lo=lo, amplitudes=amps, time_index=initial.time_index + n)


def measure(state: SpinorField) -> Measure:
    return Measure(state.lo, np.sum(np.abs(state.amplitudes) ** 2, axis=1))


def chirality_measure(state: SpinorField, side: Chirality) -> Measure:
    return Measure(state.lo, np.abs(state.amplitudes[:, Chirality(side).value]) ** 2)


def _running_average(initial: SpinorField, config: WalkConfig, T: int, weights: np.ndarray) -> Measure:
    # Accumulates |amps|^2 . weights over n = 0..T-1 on the final window.
    if T < 1:
        raise ValueError(f"Averaging horizon T must be at least 1, got {T}.")
    size0 = initial.amplitudes.shape[0]
    total = np.zeros(size0 + 2 * (T - 1))
    lo, amps = initial.lo, initial.amplitudes
    for n in range(T):
        offset = (T - 1) - n
        total[offset : offset + amps.shape[0]] += (np.abs(amps) ** 2) @ weights
        if n < T - 1:
            lo, amps = _advance(lo, amps, config)
    logger.debug("Averaged %d steps over window [%d, %d]", T, lo, lo + total.shape[0] - 1)
    return Measure(initial.lo - (T - 1), total / T)


def time_average(initial: SpinorField, config: WalkConfig, T: int) -> Measure:
    """Cesaro mean (1/T) sum_{n<T} mu_n."""
    return _running_average(initial, config, T, np.ones(2))


def chirality_time_average(initial: SpinorField, config: WalkConfig, T: int, side: Chirality) -> Measure:
    weights = np.zeros(2)
    weights[Chirality(side).value] = 1.0
    return _running_average(initial, config, T, weights)


def rescaled_empirical_cdf(
    initial: SpinorField, config: WalkConfig, n: int, points: Sequence[float]
) -> np.ndarray:
    """
    P(X_n / n <= y) for each query point, from the exact measure at time n.

    The mass at site x is placed at x / n.
    """
    if n < 1:
        raise ValueError(f"Number of steps must be at least 1, got {n}.")
    ys = np.asarray(points, dtype=np.float64)
    if ys.ndim != 1 or np.any(np.diff(ys) <= 0):
        raise ValueError("Query points must be strictly increasing.")
    if np.any(ys < -1.0) or np.any(ys > 1.0):
        raise ValueError("Query points must lie in [-1, 1].")

    mu = measure(evolve(initial, config, n))
    cumulative = np.cumsum(mu.masses)
    scaled = mu.positions / n
    idx = np.searchsorted(scaled, ys, side="right")
    out = np.where(idx > 0, cumulative[np.maximum(idx - 1, 0)], 0.0)
    return out


def matrix_element_series(
    config: WalkConfig,
    sources: Sequence[Tuple[int, Chirality]],
    targets: Sequence[Tuple[int, Chirality]],
    n_max: int,
) -> np.ndarray:
    """
    Matrix elements <target| U^j |source> for j = 0..n_max.

    Returns an array of shape (n_max + 1, len(targets), len(sources)). All
    sources are evolved together as columns of one block.
    """
    xs = [x for x, _ in sources]
    lo = min(xs)
    amps = np.zeros((max(xs) - lo + 1, 2, len(sources)), dtype=np.complex128)
    for k, (x, side) in enumerate(sources):
        amps[x - lo, Chirality(side).value, k] = 1.0

    series = np.zeros((n_max + 1, len(targets), len(sources)), dtype=np.complex128)
    for j in range(n_max + 1):
        for i, (x, side) in enumerate(targets):
            pos = x - lo
            if 0 <= pos < amps.shape[0]:
                series[j, i] = amps[pos, Chirality(side).value]
        if j < n_max:
            lo, amps = _advance(lo, amps, config)
    return series
