"""
Consistency of the generating functions with the Caratheodory functions of
the walk operator.

Partial sums of engine matrix elements sum_j <t|U^j|s> z^j are compared with
the closed forms: the scalar half-line case against its explicit formula, and
the 2x2 block on {|0,R>, |-1,L>} against Xi~ of the field and of the field
with every coin moved one site to the right.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from qwdefect.errors import PreconditionError
from qwdefect.theory.generating import type_two_closed_form, xi0_generating, xi_x_generating
from qwdefect.types import Chirality, Mat2
from qwdefect.walk.engine import matrix_element_series
from qwdefect.walk.models import WalkConfig

logger = logging.getLogger(__name__)

__all__ = ["CaratheodoryReport", "caratheodory_check", "is_type_two", "generating_block"]

# Rounding floor added to the analytic tail bound.
FLOAT_FLOOR = 1e-13
MAX_RADIUS = 0.6

BLOCK_SITES = [(0, Chirality.R), (-1, Chirality.L)]


@dataclass(frozen=True, eq=False)
class CaratheodoryReport:
    z: complex
    n_terms: int
    tail_bound: float
    block_residuals: np.ndarray
    half_line_residual: Optional[float] = None

    @property
    def tolerance(self) -> float:
        return 2.0 * self.tail_bound + FLOAT_FLOOR

    @property
    def block_residual(self) -> float:
        return float(np.max(self.block_residuals))

    @property
    def passed(self) -> bool:
        ok = self.block_residual <= self.tolerance
        if self.half_line_residual is not None:
            ok = ok and self.half_line_residual <= self.tolerance
        return ok


def is_type_two(config: WalkConfig) -> bool:
    u0 = config.coin_at(0)
    return u0.a == 0 and u0.d == 0 and u0.b == 1 and u0.c == 1


def generating_block(config: WalkConfig, z: complex) -> Mat2:
    """Closed-form generating matrix on the ordered pair (|0,R>, |-1,L>)."""
    shifted = config.shifted(1)
    xi0 = xi0_generating(config, z)
    return np.array(
        [
            [xi0[1, 1], xi_x_generating(shifted, 1, z)[1, 0]],
            [xi_x_generating(config, -1, z)[0, 1], xi0_generating(shifted, z)[0, 0]],
        ],
        dtype=np.complex128,
    )


def _caratheodory(values: Mat2) -> Mat2:
    # Value at conj(z) of F, where (I + F(conj z)^H) / 2 is the generating matrix at z.
    return (2.0 * values - np.eye(values.shape[0])).conj().T


def caratheodory_check(config: WalkConfig, z: complex, n_terms: int) -> CaratheodoryReport:
    """
    Compare engine partial sums of order ``n_terms`` with the closed forms at z.

    Coefficients are bounded by 1, so the truncation error is at most
    |z|^(N+1) / (1 - |z|).
    """
    z = complex(z)
    r = abs(z)
    if r > MAX_RADIUS:
        raise PreconditionError(f"Caratheodory check needs |z| <= {MAX_RADIUS}, got {r:.6g}.", field="z")
    tail = r ** (n_terms + 1) / (1.0 - r)
    powers = z ** np.arange(n_terms + 1)

    series = matrix_element_series(config, BLOCK_SITES, BLOCK_SITES, n_terms)
    partial = np.tensordot(powers, series, axes=(0, 0))
    carath = _caratheodory(generating_block(config, z))
    recovered = 0.5 * (np.eye(2) + carath.conj().T)
    block_residuals = np.abs(partial - recovered)

    half_line = None
    if is_type_two(config):
        b = -config.bulk.c
        lane = matrix_element_series(config, [(0, Chirality.L)], [(0, Chirality.L)], n_terms)[:, 0, 0]
        f_two = np.conj(2.0 * type_two_closed_form(b, z) - 1.0)
        half_line = float(abs(np.dot(powers, lane) - 0.5 * (1.0 + np.conj(f_two))))

    report = CaratheodoryReport(
        z=z,
        n_terms=n_terms,
        tail_bound=tail,
        block_residuals=block_residuals,
        half_line_residual=half_line,
    )
    logger.debug("Caratheodory check at z=%s: block %.3e, tail %.3e", z, report.block_residual, tail)
    return report
