"""
Boundary functions f~(+/-) and lambda~(+/-) of the one-defect walk.

In the homogeneous region both continued fractions close into one quadratic.
Writing g = c f+ = b f- and u = det(U) z^2, the value y = 1 - g solves

    y^2 - (1 + u) y + u |a|^2 = 0,

and the root of larger modulus is the one with |lambda| < 1 inside the disk
(it is y = 1 at z = 0). On the unit circle the two roots have equal modulus
and the value is taken as the radial limit from inside.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from qwdefect.coins.models import CoinMatrix
from qwdefect.errors import BranchAmbiguityError, PreconditionError
from qwdefect.walk.models import WalkConfig

logger = logging.getLogger(__name__)

__all__ = [
    "BoundaryValues",
    "eval_boundary",
    "site_boundary",
    "radial_sqrt",
    "radial_track",
    "quadratic_residuals",
    "sqrt_det",
]

CIRCLE_ATOL = 1e-14


@dataclass(frozen=True)
class BoundaryValues:
    z: complex
    f_plus: complex
    f_minus: complex
    lambda_plus: complex
    lambda_minus: complex


def sqrt_det(coin: CoinMatrix) -> complex:
    """Principal square root of det(U), the factor in w = det(U)^(1/2) z."""
    return complex(np.sqrt(complex(coin.det)))


def radial_sqrt(theta: float, abs_a: float) -> complex:
    """
    Limit of sqrt((w + 1/w)^2 - 4|a|^2) as w -> e^{i theta} radially from inside.

    The branch is the one that makes y = (w/2)(w + 1/w + root) the larger root
    just inside the circle.
    """
    cos_t, sin_t = np.cos(theta), np.sin(theta)
    if abs_a <= abs(cos_t):
        return complex(2.0 * np.sign(cos_t) * np.sqrt(cos_t**2 - abs_a**2))
    return complex(-2j * np.sign(sin_t) * np.sqrt(abs_a**2 - cos_t**2))


def _bulk_y(bulk: CoinMatrix, z: complex, radial: bool) -> complex:
    r = abs(z)
    if r > 1.0 + CIRCLE_ATOL:
        raise PreconditionError(f"Boundary functions need |z| <= 1, got |z| = {r:.15g}.", field="z")

    abs_a = abs(bulk.a)
    if r >= 1.0 - CIRCLE_ATOL:
        if not radial:
            raise BranchAmbiguityError(
                "z lies on the unit circle; pass radial=True to take the limit from inside.", field="z"
            )
        w = sqrt_det(bulk) * z / r
        theta = float(np.angle(w))
        return (w / 2.0) * (2.0 * np.cos(theta) + radial_sqrt(theta, abs_a))

    u = complex(bulk.det) * z * z
    disc = np.sqrt((1.0 + u) ** 2 - 4.0 * u * abs_a**2)
    y1 = (1.0 + u + disc) / 2.0
    y2 = (1.0 + u - disc) / 2.0
    return complex(y1 if abs(y1) >= abs(y2) else y2)


def eval_boundary(config: WalkConfig, z: complex, radial: bool = False) -> BoundaryValues:
    """
    Homogeneous-region values of f~(+/-) and lambda~(+/-) for the bulk coin.

    Parameters
    ----------
    config: WalkConfig
        Only the bulk coin is used.
    z: complex
        |z| < 1, or |z| = 1 together with ``radial=True``.
    radial: bool
        Take unit-circle values as the limit along the ray through z.

    Raises
    ------
    BranchAmbiguityError
        If |z| = 1 and ``radial`` is not set.
    """
    bulk = config.bulk
    z = complex(z)
    y = _bulk_y(bulk, z, radial)
    g = 1.0 - y
    return BoundaryValues(
        z=z,
        f_plus=g / bulk.c,
        f_minus=g / bulk.b,
        lambda_plus=z * bulk.d / y,
        lambda_minus=z * bulk.a / y,
    )


def site_boundary(config: WalkConfig, z: complex, x: int, radial: bool = False) -> BoundaryValues:
    """
    f~_x(+/-) and lambda~_x(+/-) at site x for a field with one defect anywhere.

    f+_x takes bulk values for x at or right of the defect and is recursed
    leftwards past it with the coin at x + 1; f-_x is the mirror image.
    """
    bulk = eval_boundary(config, z, radial)
    z = bulk.z
    p = config.defect_site
    z2 = z * z

    f_plus = bulk.f_plus
    for k in range(p - 1, x - 1, -1):
        u = config.coin_at(k + 1)
        f_plus = z2 * (u.b + u.det * f_plus) / (1.0 - u.c * f_plus)

    f_minus = bulk.f_minus
    for k in range(p + 1, x + 1):
        u = config.coin_at(k - 1)
        f_minus = z2 * (u.c + u.det * f_minus) / (1.0 - u.b * f_minus)

    coin = config.coin_at(x)
    return BoundaryValues(
        z=z,
        f_plus=complex(f_plus),
        f_minus=complex(f_minus),
        lambda_plus=complex(z * coin.d / (1.0 - coin.c * f_plus)),
        lambda_minus=complex(z * coin.a / (1.0 - coin.b * f_minus)),
    )


def quadratic_residuals(config: WalkConfig, z: complex, radial: bool = False) -> Tuple[float, float]:
    """|residual| of the quadratics satisfied by the bulk f~+ and f~-."""
    bulk = config.bulk
    values = eval_boundary(config, z, radial)
    u = complex(bulk.det) * values.z**2
    c2 = abs(bulk.c) ** 2
    fp, fm = values.f_plus, values.f_minus
    res_plus = fp**2 - (1.0 - u) / bulk.c * fp - u * c2 / bulk.c**2
    res_minus = fm**2 - (1.0 - u) / bulk.b * fm - u * c2 / bulk.b**2
    return float(abs(res_plus)), float(abs(res_minus))


def radial_track(config: WalkConfig, theta: float, ts: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Follow f~+ and f~- along z = t e^{i theta} by continuity from z = 0.

    At each t the root of g^2 - (1-u) g - u|c|^2 = 0 nearest the previous one
    is kept. Returns the tracked (f_plus, f_minus) arrays.
    """
    bulk = config.bulk
    ts = np.asarray(ts, dtype=np.float64)
    if np.any(np.diff(ts) <= 0) or ts[0] < 0.0 or ts[-1] >= 1.0:
        raise ValueError("Radial parameters must increase within [0, 1).")
    c2 = abs(bulk.c) ** 2
    g_prev = 0j
    g_track = np.empty(ts.shape[0], dtype=np.complex128)
    for i, t in enumerate(ts):
        u = complex(bulk.det) * (t * np.exp(1j * theta)) ** 2
        roots = np.roots([1.0, -(1.0 - u), -u * c2])
        g_prev = roots[np.argmin(np.abs(roots - g_prev))]
        g_track[i] = g_prev
    return g_track / bulk.c, g_track / bulk.b
