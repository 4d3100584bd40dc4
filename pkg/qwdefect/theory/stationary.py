"""
Eigenvectors and stationary measures for the Hadamard bulk with the
U0(0, omega) phase defect.

The four eigenvalues are

    eta = (sigma sqrt(2 - cos^2 w) + tau i (2 - cos w)) / (sqrt2 sqrt(3 - 2 cos w)),

sigma, tau in {+1, -1}. Each eigenvector decays geometrically with ratio
gamma, the root of h(z) = z^2 + sqrt2 (eta - 1/eta) z - 1 inside the disk.
"""

import logging
import math
from dataclasses import dataclass
from itertools import product
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from qwdefect.config import settings
from qwdefect.errors import PreconditionError
from qwdefect.theory.generating import find_poles
from qwdefect.theory.limits import phase_defect_time_avg, time_avg_limit
from qwdefect.walk.engine import evolve, measure, step
from qwdefect.walk.models import CoinState, Measure, SpinorField, WalkConfig

logger = logging.getLogger(__name__)

__all__ = [
    "EigenData",
    "StationaryMatch",
    "MassPointReport",
    "eigenvalues",
    "build_eigenvector",
    "stationary_measure",
    "chirality_time_avg_at_origin",
    "match_time_average",
    "mass_points_check",
    "orthogonal_initial_state",
    "eigen_residual",
    "stationarity_defect",
    "uniform_hadamard_measure",
]

BRANCHES: List[Tuple[int, int]] = list(product((1, -1), repeat=2))


def _eta(omega: float, sigma: int, tau: int) -> complex:
    c = math.cos(omega)
    return complex(sigma * math.sqrt(2.0 - c * c), tau * (2.0 - c)) / (math.sqrt(2.0) * math.sqrt(3.0 - 2.0 * c))


def _is_trivial(omega: float) -> bool:
    return math.isclose(math.cos(omega), 1.0, abs_tol=1e-15)


def eigenvalues(omega: float) -> List[complex]:
    """Eigenvalues ordered by (sigma, tau) = (+,+), (+,-), (-,+), (-,-)."""
    values = [_eta(omega, s, t) for s, t in BRANCHES]
    gaps = [abs(a - b) for i, a in enumerate(values) for b in values[i + 1 :]]
    if min(gaps) < 1e-12:
        logger.warning("Eigenvalues collide at omega=%.15g (min gap %.3e)", omega, min(gaps))
    return values


@dataclass(frozen=True)
class EigenData:
    omega: float
    sigma: int
    tau: int
    eta: complex
    gamma_root: complex
    phi_L0: complex
    phi_R0: complex

    def __post_init__(self) -> None:
        if self.sigma not in (1, -1) or self.tau not in (1, -1):
            raise ValueError("sigma and tau must be +1 or -1.")
        if abs(abs(self.eta) - 1.0) > 1e-12:
            raise ValueError(f"Eigenvalue must have modulus 1, got {abs(self.eta):.15g}.")
        g = self.gamma_root
        h = g * g + math.sqrt(2.0) * (self.eta - 1.0 / self.eta) * g - 1.0
        if abs(h) > 1e-12 or abs(g) >= 1.0:
            raise ValueError(f"gamma = {g} is not the root of h inside the unit disk.")
        expected = (np.exp(-1j * self.omega) - 1.0 + self.coupling) * self.phi_L0
        if abs(self.phi_R0 - expected) > 1e-10 * max(1.0, abs(self.phi_L0)):
            raise PreconditionError("phi_R0 does not satisfy the defect boundary condition.", field="phi_R0")

    @classmethod
    def from_branch(cls, omega: float, sigma: int, tau: int, phi_L0: complex = 1.0) -> "EigenData":
        """Eigenvector data for one (sigma, tau) branch; phi_R0 follows from phi_L0."""
        if _is_trivial(omega):
            raise PreconditionError("No defect at omega in 2*pi*Z; the eigenvalue set degenerates.", field="omega")
        eta = _eta(omega, sigma, tau)
        roots = np.roots([1.0, math.sqrt(2.0) * (eta - 1.0 / eta), -1.0])
        gamma = complex(roots[np.argmin(np.abs(roots))])
        c = math.cos(omega)
        coupling = (1.0 - c) - sigma * tau * 1j * math.sqrt(2.0 - c * c)
        phi_L0 = complex(phi_L0)
        phi_R0 = (np.exp(-1j * omega) - 1.0 + coupling) * phi_L0
        return cls(omega, sigma, tau, eta, gamma, phi_L0, complex(phi_R0))

    @property
    def coupling(self) -> complex:
        """R/L amplitude ratio on the right arm, -1 / (sqrt2 eta gamma - 1)."""
        return -1.0 / (math.sqrt(2.0) * self.eta * self.gamma_root - 1.0)

    # Arm coefficients; the other four vanish.
    @property
    def c1_L_plus(self) -> complex:
        return self.phi_L0

    @property
    def c1_R_plus(self) -> complex:
        return self.coupling * self.phi_L0

    @property
    def c2_L_minus(self) -> complex:
        return -self.coupling * self.phi_R0

    @property
    def c2_R_minus(self) -> complex:
        return self.phi_R0


def build_eigenvector(data: EigenData, window: Optional[int] = None) -> SpinorField:
    """The eigenvector truncated to [-W, W]."""
    window = settings.QWDEFECT_EIGEN_WINDOW if window is None else window
    if window < 1:
        raise ValueError(f"Window must be at least 1, got {window}.")
    j = np.arange(1, window + 1)
    right = (-data.gamma_root) ** j
    left = data.gamma_root ** j

    amps = np.zeros((2 * window + 1, 2), dtype=np.complex128)
    amps[window] = (data.phi_L0, data.phi_R0)
    amps[window + 1 :, 0] = data.c1_L_plus * right
    amps[window + 1 :, 1] = data.c1_R_plus * right
    amps[window - 1 :: -1, 0] = data.c2_L_minus * left
    amps[window - 1 :: -1, 1] = data.c2_R_minus * left
    return SpinorField(lo=-window, amplitudes=amps)


def stationary_measure(omega: float, phi_L0: complex, phi_R0: complex, extent: Optional[int] = None) -> Measure:
    """
    mu(x) = (3 - 2 cos w)^(-|x|) times 2(2 - cos w)|phi_L|^2 for x >= 1,
    |phi_L|^2 + |phi_R|^2 at 0 and 2(2 - cos w)|phi_R|^2 for x <= -1.
    """
    extent = settings.QWDEFECT_EIGEN_WINDOW if extent is None else extent
    c = math.cos(omega)
    xs = np.arange(-extent, extent + 1)
    decay = (1.0 / (3.0 - 2.0 * c)) ** np.abs(xs)
    arm = np.where(xs > 0, abs(phi_L0) ** 2, abs(phi_R0) ** 2) * 2.0 * (2.0 - c)
    masses = decay * np.where(xs == 0, abs(phi_L0) ** 2 + abs(phi_R0) ** 2, arm)
    return Measure(-extent, masses)


def uniform_hadamard_measure(c: float, xs) -> np.ndarray:
    """Uniform stationary measure of the Hadamard walk, mu(x) = c."""
    half = math.sqrt(c / 2.0)
    return stationary_measure(0.0, half, half, extent=max(abs(int(x)) for x in xs)).values(xs)


def chirality_time_avg_at_origin(omega: float) -> Tuple[float, float]:
    """L and R time-averaged masses at the origin for the state [1/sqrt2, i/sqrt2]."""
    c, s = math.cos(omega), math.sin(omega)
    base = ((1.0 - c) / (3.0 - 2.0 * c)) ** 2
    tilt = s / (1.0 + s * s)
    return base * (1.0 + tilt), base * (1.0 - tilt)


@dataclass(frozen=True)
class StationaryMatch:
    omega: float
    extent: int
    max_deviation: float
    max_deviation_general: float


def match_time_average(omega: float, extent: int = 50) -> StationaryMatch:
    """
    Compare the stationary measure with |phi_L|^2, |phi_R|^2 set to the origin
    chirality averages against the time-averaged limit on |x| <= extent.
    """
    left, right = chirality_time_avg_at_origin(omega)
    mu = stationary_measure(omega, math.sqrt(left), math.sqrt(right), extent=extent)
    xs = range(-extent, extent + 1)
    closed = np.array([phase_defect_time_avg(omega, x) for x in xs])
    config = WalkConfig.phase_defect(omega)
    general = np.array([time_avg_limit(config, CoinState.symmetric(), x) for x in xs])
    values = mu.values(xs)
    return StationaryMatch(
        omega=omega,
        extent=extent,
        max_deviation=float(np.max(np.abs(values - closed))),
        max_deviation_general=float(np.max(np.abs(values - general))),
    )


@dataclass(frozen=True)
class MassPointReport:
    omega: float
    eigenvalues: List[complex]
    rotated_poles: List[complex]
    max_mismatch: float
    skipped: bool = False

    def matched(self, atol: float = 1e-10) -> bool:
        return self.skipped or self.max_mismatch <= atol


def mass_points_check(omega: float) -> MassPointReport:
    """Match {i w : w a pole of Xi~_0} against the eigenvalues, bijectively."""
    etas = eigenvalues(omega)
    poles = find_poles(WalkConfig.phase_defect(omega))
    if not poles.localized:
        return MassPointReport(omega, etas, [], 0.0, skipped=True)
    rotated = [1j * w for w in poles.points]
    cost = np.abs(np.subtract.outer(np.array(rotated), np.array(etas)))
    rows, cols = linear_sum_assignment(cost)
    return MassPointReport(omega, etas, rotated, float(cost[rows, cols].max()))


def _eigen_block(omega: float, window: int) -> np.ndarray:
    vectors = [build_eigenvector(EigenData.from_branch(omega, s, t), window) for s, t in BRANCHES]
    return np.column_stack([v.amplitudes.reshape(-1) for v in vectors])


def orthogonal_initial_state(omega: float, window: Optional[int] = None) -> SpinorField:
    """
    Unit state on [-W, W] orthogonal to the four truncated eigenvectors,
    obtained by projecting the origin state [1/sqrt2, i/sqrt2] off their span.
    """
    window = settings.QWDEFECT_EIGEN_WINDOW if window is None else window
    basis, _ = np.linalg.qr(_eigen_block(omega, window))
    start = np.zeros((2 * window + 1, 2), dtype=np.complex128)
    start[window] = CoinState.symmetric().vector
    v = start.reshape(-1)
    v = v - basis @ (basis.conj().T @ v)
    v = v / np.linalg.norm(v)
    return SpinorField(lo=-window, amplitudes=v.reshape(-1, 2))


def eigen_residual(data: EigenData, window: Optional[int] = None) -> float:
    """max |(U Psi)(x) - eta Psi(x)| over |x| <= W - 1."""
    psi = build_eigenvector(data, window)
    w = -psi.lo
    stepped = step(psi, WalkConfig.phase_defect(data.omega))
    lhs = stepped.restricted(-(w - 1), w - 1)
    rhs = data.eta * psi.restricted(-(w - 1), w - 1)
    return float(np.max(np.abs(lhs - rhs)))


def stationarity_defect(data: EigenData, window: Optional[int] = None, n: int = 50) -> float:
    """max |mu_n(x) - mu_0(x)| on the causal interior |x| <= W - n."""
    psi = build_eigenvector(data, window)
    w = -psi.lo
    if n >= w:
        raise ValueError(f"Need n < W for a nonempty causal interior, got n={n}, W={w}.")
    evolved = evolve(psi, WalkConfig.phase_defect(data.omega), n)
    xs = range(-(w - n), w - n + 1)
    return float(np.max(np.abs(measure(evolved).values(xs) - measure(psi).values(xs))))
