"""
Generating functions of the passage weights, sum_n Xi(x, n) z^n, in closed form.

At the origin

    Xi~_0 = (1/Lambda0) [[1 - b0 f-, d0 f+], [a0 f-, 1 - c0 f+]],
    Lambda0 = 1 - c0 f+ - b0 f- - det(U0) f+ f-,

with f+/- the site-0 boundary values. Away from the origin the weight is a
rank-one bracket times Xi~_0 and a product of lambda~ factors.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, List, Optional

import numpy as np

from qwdefect.config import settings
from qwdefect.errors import PoleHitError
from qwdefect.theory.boundary import site_boundary, sqrt_det
from qwdefect.types import Mat2
from qwdefect.walk.models import CoinState, WalkConfig

logger = logging.getLogger(__name__)

__all__ = [
    "PassageAsymptotics",
    "PoleSet",
    "lambda0",
    "xi0_generating",
    "xi_x_generating",
    "find_poles",
    "passage_asymptotics",
    "taylor_coefficients",
    "type_two_closed_form",
]

POLE_ATOL = 1e-13


@dataclass(frozen=True)
class PoleSet:
    """
    Unit-circle zeros of Lambda0, as w = det(U)^(1/2) z and as z.

    ``points`` are ordered w+, w-, -w+, -w-. An empty set means no
    localization (|c|^2 <= m).
    """

    points: List[complex] = field(default_factory=list)
    z_points: List[complex] = field(default_factory=list)
    gamma: Optional[float] = None
    m: float = 0.0

    @property
    def localized(self) -> bool:
        return bool(self.points)


def lambda0(config: WalkConfig, z: complex, radial: bool = False) -> complex:
    """The denominator Lambda0 of Xi~_0 for the coin at site 0."""
    vals = site_boundary(config, z, 0, radial)
    u0 = config.coin_at(0)
    fp, fm = vals.f_plus, vals.f_minus
    return complex(1.0 - u0.c * fp - u0.b * fm - u0.det * fp * fm)


def xi0_generating(config: WalkConfig, z: complex, radial: bool = False) -> Mat2:
    """
    Closed form of Xi~_0(z).

    Raises
    ------
    PoleHitError
        If |Lambda0(z)| < 1e-13.
    """
    vals = site_boundary(config, z, 0, radial)
    u0 = config.coin_at(0)
    fp, fm = vals.f_plus, vals.f_minus
    lam = 1.0 - u0.c * fp - u0.b * fm - u0.det * fp * fm
    if abs(lam) < POLE_ATOL:
        raise PoleHitError(f"Lambda0 vanishes at z = {complex(z):.15g}.", field="z")
    return np.array(
        [[1.0 - u0.b * fm, u0.d * fp], [u0.a * fm, 1.0 - u0.c * fp]],
        dtype=np.complex128,
    ) / lam


def xi_x_generating(config: WalkConfig, x: int, z: complex, radial: bool = False) -> Mat2:
    """
    Closed form of Xi~_x(z) for x != 0.

    For x >= 1 the weight is

        (lambda~+_{x-1} ... lambda~+_1) [lambda~+_x f~+_x, z]^T [c0, d0] Xi~_0

    and for x <= -1 the mirror image with [z, lambda~-_x f~-_x]^T [a0, b0].
    """
    if x == 0:
        raise ValueError("Use xi0_generating for the origin.")
    z = complex(z)
    base = xi0_generating(config, z, radial)
    u0 = config.coin_at(0)

    prefactor = 1.0 + 0j
    sites = range(1, x) if x > 0 else range(-1, x, -1)
    for k in sites:
        vals = site_boundary(config, z, k, radial)
        prefactor *= vals.lambda_plus if x > 0 else vals.lambda_minus

    here = site_boundary(config, z, x, radial)
    if x > 0:
        column = np.array([here.lambda_plus * here.f_plus, z])
        row = np.array([u0.c, u0.d])
    else:
        column = np.array([z, here.lambda_minus * here.f_minus])
        row = np.array([u0.a, u0.b])
    return prefactor * np.outer(column, row) @ base


def find_poles(config: WalkConfig) -> PoleSet:
    """
    The four zeros of Lambda0 on the unit circle,

        +/- w(+/-) = +/- (1 + |c| e^{+/- i gamma}) / |1 + |c| e^{+/- i gamma}|,
        cos gamma = -m / |c|,  m = Re(conj(c) c0),

    or an empty set when |c|^2 <= m. Needs det(U0) = det(U).
    """
    config.require_same_determinant()
    c, c0 = config.bulk.c, config.coin_at(0).c
    m = float((np.conj(c) * c0).real)
    abs_c = abs(c)
    if abs_c**2 <= m:
        logger.debug("No localization: |c|^2 = %.6g <= m = %.6g", abs_c**2, m)
        return PoleSet(m=m)

    gamma = math.acos(max(-1.0, min(1.0, -m / abs_c)))
    points = []
    for sign in (1.0, -1.0):
        v = 1.0 + abs_c * np.exp(1j * sign * gamma)
        points.append(complex(v / abs(v)))
    points += [-p for p in points]
    root = sqrt_det(config.bulk)
    return PoleSet(points=points, z_points=[p / root for p in points], gamma=gamma, m=m)


def taylor_coefficients(
    fn: Callable[[complex], object],
    n_max: int,
    radius: Optional[float] = None,
    points: Optional[int] = None,
) -> np.ndarray:
    """
    Taylor coefficients 0..n_max of an analytic function by FFT on |z| = radius.

    ``fn`` may return a scalar or an array; the result has shape
    (n_max + 1,) + shape of fn's value.
    """
    radius = settings.QWDEFECT_CONTOUR_RADIUS if radius is None else radius
    points = settings.QWDEFECT_CONTOUR_POINTS if points is None else points
    if not 0.0 < radius < 1.0:
        raise ValueError(f"Contour radius must lie in (0, 1), got {radius}.")
    if points <= n_max:
        raise ValueError(f"Need more than {n_max} contour points, got {points}.")

    nodes = radius * np.exp(2j * np.pi * np.arange(points) / points)
    samples = np.array([fn(complex(zk)) for zk in nodes], dtype=np.complex128)
    coeffs = np.fft.fft(samples, axis=0) / points
    scale = radius ** np.arange(n_max + 1)
    scale = scale.reshape((n_max + 1,) + (1,) * (samples.ndim - 1))
    return coeffs[: n_max + 1] / scale


def type_two_closed_form(b: complex, z: complex) -> complex:
    """
    Xi~_0 entry <L|.|L> of the half-line walk,

        2b / (2b + (1 - z^2) - sqrt((z^2 - 1)^2 + 4 z^2 |b|^2)),

    principal square root, valid for |z| <= 0.6.
    """
    b, z = complex(b), complex(z)
    z2 = z * z
    root = np.sqrt((z2 - 1.0) ** 2 + 4.0 * z2 * abs(b) ** 2)
    return complex(2.0 * b / (2.0 * b + (1.0 - z2) - root))


@dataclass(frozen=True)
class PassageAsymptotics:
    """
    Oscillating part of Xi(x, n) for large n,

        Xi(x, n) ~ -sum_p R_p z_p^-(n+1),

    with R_p the residue of Xi~_x at the pole z_p. The remainder decays in n.
    """

    x: int
    z_points: List[complex] = field(default_factory=list)
    residues: List[Mat2] = field(default_factory=list)

    def weight(self, n: int) -> Mat2:
        out = np.zeros((2, 2), dtype=np.complex128)
        for zp, res in zip(self.z_points, self.residues):
            out -= res * zp ** (-(n + 1))
        return out

    def averaged_mass(self, psi0: CoinState) -> float:
        """Time average of |Xi(x, n) psi0|^2 carried by the poles."""
        return float(sum(np.linalg.norm(res @ psi0.vector) ** 2 for res in self.residues))


def _residue(fn: Callable[[complex], Mat2], zp: complex, eps: float) -> Mat2:
    # (z - zp) fn(z) along the inward ray, Richardson-extrapolated to z = zp
    def approach(step: float) -> Mat2:
        return -step * zp * np.asarray(fn((1.0 - step) * zp))

    return 2.0 * approach(eps / 2.0) - approach(eps)


def passage_asymptotics(config: WalkConfig, x: int, eps: float = 1e-5) -> PassageAsymptotics:
    """
    Pole contributions to Xi(x, n); empty when the walk does not localize.

    Residues are read off Xi~_x just inside the unit circle.
    """
    poles = find_poles(config)
    if not poles.localized:
        return PassageAsymptotics(x=x)
    if x == 0:
        fn = partial(xi0_generating, config)
    else:
        fn = partial(xi_x_generating, config, x)
    residues = [_residue(fn, complex(zp), eps) for zp in poles.z_points]
    logger.debug("Residues at x = %d: max norm %.6g", x, max(np.linalg.norm(r) for r in residues))
    return PassageAsymptotics(x=x, z_points=list(poles.z_points), residues=residues)
