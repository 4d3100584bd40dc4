"""
Closed-form limit measures of the one-defect walk with det(U0) = det(U).

Time-averaged limit
-------------------
With m = Re(conj(c) c0) and D = 1 - 2m + |c|^2,

    mu(0) = 1{|c|^2 > m} * (1/2) * (2 (|c|^2 - m) / D)^2
    mu(x) = mu(0) * P * q^(|x|-1) * B(+/-),   |x| >= 1,

where P = |c|^2 (1 - m) / ((|c|^2 - m^2) D), q = |a|^2 / D and B(+/-) depends
on the side and on the initial coin state.

Weak limit
----------
X_n / n converges to C delta_0 + w(x) f_K(x; |a|) dx with C the total
time-averaged mass and

    w(x) = |c|^2 x^2 / ((|c|^2 - m)^2 + (|c|^2 - m^2) x^2) * (gamma(x) - s x),
    s = |a0|^2 (|alpha|^2 - |beta|^2) + 2 Re(a0 alpha conj(b0 beta)).

gamma(x) takes one value on each side of the origin. The slope s only sees
the defect coin; with U0 = U it is the usual drift of the homogeneous walk.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple, Union

import numpy as np
from scipy.special import roots_legendre

from qwdefect.coins.models import CoinMatrix
from qwdefect.config import settings
from qwdefect.walk.models import CoinState, WalkConfig

logger = logging.getLogger(__name__)

__all__ = [
    "DerivedParams",
    "WeakLimitDensity",
    "f_K",
    "time_avg_limit",
    "time_avg_table",
    "localized_mass",
    "localized_mass_by_sum",
    "phase_defect_time_avg",
    "phase_defect_atom",
    "phase_defect_weight",
    "weak_density",
    "weak_cdf",
    "homogeneous_density",
]

ArrayLike = Union[float, np.ndarray]

NO_DEFECT_ATOL = 1e-15


@dataclass(frozen=True)
class DerivedParams:
    m: float
    locC2: float
    locA2: float
    denom: float
    delta: complex
    delta0: complex

    @classmethod
    def from_config(cls, config: WalkConfig) -> "DerivedParams":
        config.require_same_determinant()
        bulk, defect = config.bulk, config.coin_at(0)
        m = float((np.conj(bulk.c) * defect.c).real)
        c2 = abs(bulk.c) ** 2
        return cls(
            m=m,
            locC2=c2,
            locA2=abs(bulk.a) ** 2,
            denom=1.0 - 2.0 * m + c2,
            delta=complex(bulk.det),
            delta0=complex(defect.det),
        )

    @property
    def localizes(self) -> bool:
        return self.locC2 > self.m


# ============= BALLISTIC DENSITY =============


def f_K(x: ArrayLike, r: float) -> ArrayLike:
    """
    sqrt(1 - r^2) / (pi (1 - x^2) sqrt(r^2 - x^2)) on (-r, r), zero outside.

    The endpoints |x| = r return +inf.
    """
    if not 0.0 < r < 1.0:
        raise ValueError(f"Radius must lie in (0, 1), got {r}.")
    xs = np.atleast_1d(np.asarray(x, dtype=np.float64))
    out = np.zeros_like(xs)
    inside = np.abs(xs) < r
    xi = xs[inside]
    out[inside] = math.sqrt(1.0 - r * r) / (math.pi * (1.0 - xi**2) * np.sqrt(r * r - xi**2))
    out[np.abs(xs) == r] = np.inf
    return float(out[0]) if np.ndim(x) == 0 else out.reshape(np.shape(x))


def _gauss_legendre(fn, lo: float, hi: float, panels: int, order: int) -> float:
    if hi <= lo:
        return 0.0
    nodes, weights = roots_legendre(order)
    edges = np.linspace(lo, hi, panels + 1)
    total = 0.0
    for left, right in zip(edges[:-1], edges[1:]):
        half, mid = 0.5 * (right - left), 0.5 * (right + left)
        total += half * float(np.dot(weights, fn(mid + half * nodes)))
    return total


# ============= TIME-AVERAGED LIMIT =============


def _side_brackets(config: WalkConfig, params: DerivedParams, psi0: CoinState) -> Tuple[float, float]:
    defect, bulk = config.coin_at(0), config.bulk
    alpha, beta = psi0.alpha, psi0.beta
    lead = 1.0 + abs(defect.c) ** 2 - 2.0 * params.m**2 / params.locC2
    a0_2 = abs(defect.a) ** 2
    cross = 2.0 * (alpha * np.conj(beta) * np.conj(defect.d) * (defect.c - params.m / np.conj(bulk.c))).real
    right = lead * abs(alpha) ** 2 + a0_2 * abs(beta) ** 2 + cross
    left = lead * abs(beta) ** 2 + a0_2 * abs(alpha) ** 2 - cross
    return float(right), float(left)


def _origin_mass(params: DerivedParams) -> float:
    if not params.localizes:
        return 0.0
    return 0.5 * (2.0 * (params.locC2 - params.m) / params.denom) ** 2


def _multiplier(params: DerivedParams) -> float:
    return params.locC2 * (1.0 - params.m) / ((params.locC2 - params.m**2) * params.denom)


def time_avg_limit(config: WalkConfig, psi0: CoinState, x: int) -> float:
    """
    Time-averaged limit mass at site x.

    Raises
    ------
    DeterminantMismatchError
        If det(U0) != det(U).
    """
    params = DerivedParams.from_config(config)
    mu0 = _origin_mass(params)
    if mu0 == 0.0 or x == 0:
        return mu0
    right, left = _side_brackets(config, params, psi0)
    q = params.locA2 / params.denom
    return mu0 * _multiplier(params) * q ** (abs(x) - 1) * (right if x > 0 else left)


def time_avg_table(config: WalkConfig, psi0: CoinState, xs: Iterable[int]) -> np.ndarray:
    return np.array([time_avg_limit(config, psi0, int(x)) for x in xs])


def localized_mass(config: WalkConfig, psi0: CoinState) -> float:
    """C, the sum of the time-averaged limit over all sites, by the geometric series."""
    params = DerivedParams.from_config(config)
    mu0 = _origin_mass(params)
    if mu0 == 0.0:
        return 0.0
    right, left = _side_brackets(config, params, psi0)
    q = params.locA2 / params.denom
    return mu0 * (1.0 + _multiplier(params) * (right + left) / (1.0 - q))


def localized_mass_by_sum(config: WalkConfig, psi0: CoinState, extent: int = 200) -> float:
    return float(np.sum(time_avg_table(config, psi0, range(-extent, extent + 1))))


def phase_defect_time_avg(omega: float, x: int) -> float:
    """Hadamard bulk, U0(0, omega) defect, coin state [1/sqrt2, i/sqrt2]."""
    k, s = math.cos(omega), math.sin(omega)
    if math.isclose(k, 1.0, abs_tol=1e-15):
        return 0.0
    mu0 = 2.0 * ((1.0 - k) / (3.0 - 2.0 * k)) ** 2
    if x == 0:
        return mu0
    side = 1.0 + s / (1.0 + s * s) if x > 0 else 1.0 - s / (1.0 + s * s)
    return mu0 * (2.0 - k) / (3.0 - 2.0 * k) ** abs(x) * side


def phase_defect_atom(omega: float) -> float:
    """Total localized mass 2 (1 - cos w) / (3 - 2 cos w) of the same family, any coin state."""
    k = math.cos(omega)
    return 2.0 * (1.0 - k) / (3.0 - 2.0 * k)


def phase_defect_weight(x: ArrayLike, omega: float) -> ArrayLike:
    """
    w(x) of the same family for the coin state [1/sqrt2, i/sqrt2]:

        (2 - cos w + sgn(x) sin w + x sin w) x^2 / ((1 - cos w)^2 + (2 - cos^2 w) x^2).
    """
    k, s = math.cos(omega), math.sin(omega)
    xs = np.asarray(x, dtype=np.float64)
    x2 = xs**2
    if math.isclose(k, 1.0, abs_tol=1e-15):
        out = np.ones_like(xs)
    else:
        out = (2.0 - k + np.sign(xs) * s + xs * s) * x2 / ((1.0 - k) ** 2 + (2.0 - k * k) * x2)
    return float(out) if np.ndim(x) == 0 else out


# ============= WEAK LIMIT =============


@dataclass(frozen=True)
class WeakLimitDensity:
    """rho(x) = C delta(x) + w(x) f_K(x; r)."""

    atom_mass: float
    radius: float
    params: DerivedParams
    gamma_right: float
    gamma_left: float
    slope: float
    psi0: CoinState

    def gamma(self, x: ArrayLike) -> ArrayLike:
        return np.where(np.asarray(x) >= 0.0, self.gamma_right, self.gamma_left)

    def weight(self, x: ArrayLike) -> ArrayLike:
        """w(x); zero at x = 0 unless m = |c|^2."""
        p = self.params
        xs = np.asarray(x, dtype=np.float64)
        x2 = xs**2
        if abs(p.locC2 - p.m) < NO_DEFECT_ATOL:
            # the x^2 factors cancel; 1 / |a|^2 when U0 = U
            pref = np.full_like(xs, p.locC2 / (p.locC2 - p.m**2))
        else:
            pref = p.locC2 * x2 / ((p.locC2 - p.m) ** 2 + (p.locC2 - p.m**2) * x2)
        out = pref * (self.gamma(xs) - self.slope * xs)
        return float(out) if np.ndim(x) == 0 else out

    def continuous(self, x: ArrayLike) -> ArrayLike:
        return self.weight(x) * f_K(x, self.radius)

    def _integrand(self, t: np.ndarray) -> np.ndarray:
        # x = r sin t removes the endpoint singularity of f_K.
        r = self.radius
        jac = math.sqrt(1.0 - r * r) / (math.pi * (1.0 - (r * np.sin(t)) ** 2))
        return self.weight(r * np.sin(t)) * jac

    def _continuous_cdf(self, y: float, panels: Optional[int], order: Optional[int]) -> float:
        panels = settings.QWDEFECT_QUADRATURE_PANELS if panels is None else panels
        order = settings.QWDEFECT_QUADRATURE_ORDER if order is None else order
        r = self.radius
        if y <= -r:
            return 0.0
        top = math.asin(min(y, r) / r)
        half = max(1, panels // 2)
        total = _gauss_legendre(self._integrand, -math.pi / 2, min(top, 0.0), half, order)
        if top > 0.0:
            total += _gauss_legendre(self._integrand, 0.0, top, half, order)
        return total

    def cdf(self, y: float, left: bool = False, panels: Optional[int] = None, order: Optional[int] = None) -> float:
        """P(Z <= y), or P(Z < y) with ``left=True``."""
        atom = self.atom_mass if (y > 0.0 or (y == 0.0 and not left)) else 0.0
        return atom + self._continuous_cdf(y, panels, order)

    def mass(self) -> float:
        """Total mass: atom plus the quadrature of the continuous part."""
        return self.atom_mass + self._continuous_cdf(self.radius, None, None)


def weak_density(config: WalkConfig, psi0: CoinState) -> WeakLimitDensity:
    params = DerivedParams.from_config(config)
    defect, bulk = config.coin_at(0), config.bulk
    alpha, beta = psi0.alpha, psi0.beta
    a0_2 = abs(defect.a) ** 2

    base = 1.0 - 2.0 * params.m + abs(defect.c) ** 2
    twist = 2.0 * (defect.a * alpha * np.conj((bulk.b - defect.b) * beta)).real
    gamma_right = abs(alpha) ** 2 * base + abs(beta) ** 2 * a0_2 + twist
    gamma_left = abs(beta) ** 2 * base + abs(alpha) ** 2 * a0_2 - twist
    slope = a0_2 * (abs(alpha) ** 2 - abs(beta) ** 2) + 2.0 * (defect.a * alpha * np.conj(defect.b * beta)).real

    if abs(params.locC2 - params.m) < NO_DEFECT_ATOL:
        logger.debug("m = |c|^2: no localization, constant w(x) prefactor")

    return WeakLimitDensity(
        atom_mass=localized_mass(config, psi0),
        radius=abs(bulk.a),
        params=params,
        gamma_right=float(gamma_right),
        gamma_left=float(gamma_left),
        slope=float(slope),
        psi0=psi0,
    )


def weak_cdf(density: WeakLimitDensity, y: float, left: bool = False) -> float:
    if not -1.0 <= y <= 1.0:
        raise ValueError(f"CDF argument must lie in [-1, 1], got {y}.")
    return density.cdf(y, left=left)


def homogeneous_density(bulk: CoinMatrix, psi0: CoinState, x: ArrayLike) -> ArrayLike:
    """Weak-limit density of the defect-free walk with coin ``bulk``."""
    a2 = abs(bulk.a) ** 2
    drift = (abs(psi0.alpha) ** 2 - abs(psi0.beta) ** 2) + 2.0 * (
        bulk.a * psi0.alpha * np.conj(bulk.b * psi0.beta)
    ).real / a2
    return (1.0 - drift * np.asarray(x)) * f_K(x, abs(bulk.a))
