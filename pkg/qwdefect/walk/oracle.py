"""
Brute-force passage weights.

Xi(x, n) is the sum, over every n-step nearest-neighbour path from the origin
to x, of the ordered product of its step factors with the last step leftmost.
A step from y to y-1 contributes P_y and a step from y to y+1 contributes Q_y.
"""

import logging
from itertools import combinations
from typing import Dict, Optional

import numpy as np

from qwdefect.coins.algebra import move_matrix, pqrs_decompose, pqrs_left_multiply
from qwdefect.coins.models import PqrsWeight
from qwdefect.config import settings
from qwdefect.errors import TooLargeError
from qwdefect.types import Mat2, Move
from qwdefect.walk.engine import evolve_block
from qwdefect.walk.models import PassageWeight, WalkConfig

logger = logging.getLogger(__name__)

__all__ = ["enumerate_xi", "xi_via_engine", "passage_table", "path_weight", "path_pqrs"]


def _moves(path: str):
    """Yield (site, move) for each step of an 'L'/'R' path started at 0."""
    y = 0
    for ch in path:
        if ch == "L":
            yield y, Move.P
            y -= 1
        elif ch == "R":
            yield y, Move.Q
            y += 1
        else:
            raise ValueError(f"Path steps must be 'L' or 'R', got {ch!r}.")


def path_weight(path: str, config: WalkConfig) -> Mat2:
    """Dense ordered product of the step factors of a single path."""
    w = np.eye(2, dtype=np.complex128)
    for y, mv in _moves(path):
        w = move_matrix(config.coin_at(y), mv) @ w
    return w


def path_pqrs(path: str, config: WalkConfig) -> PqrsWeight:
    """The same product carried out on P0, Q0, R0, S0 coefficients."""
    w = pqrs_decompose(np.eye(2), config.defect)
    for y, mv in _moves(path):
        w = pqrs_left_multiply(config.coin_at(y), mv, w)
    return w


def enumerate_xi(
    x: int,
    n: int,
    config: WalkConfig,
    n_max: Optional[int] = None,
    with_pqrs: bool = False,
) -> PassageWeight:
    """
    Sum the weights of all C(n, (n + x) / 2) paths from 0 to x.

    Raises
    ------
    TooLargeError
        If n exceeds ``n_max`` (``settings.QWDEFECT_ORACLE_NMAX`` by default).
    """
    n_max = settings.QWDEFECT_ORACLE_NMAX if n_max is None else n_max
    if n < 0:
        raise ValueError(f"Number of steps must be nonnegative, got {n}.")
    if n > n_max:
        raise TooLargeError(f"Path enumeration is limited to n <= {n_max}, got n = {n}.", field="n")

    total = np.zeros((2, 2), dtype=np.complex128)
    pqrs = PqrsWeight() if with_pqrs else None
    if abs(x) > n or (x + n) % 2:
        return PassageWeight(x=x, n=n, weight=total, pqrs=pqrs)

    rights = (n + x) // 2
    count = 0
    for chosen in combinations(range(n), rights):
        steps = ["L"] * n
        for i in chosen:
            steps[i] = "R"
        path = "".join(steps)
        total += path_weight(path, config)
        if with_pqrs:
            pqrs = pqrs + path_pqrs(path, config)
        count += 1
    logger.debug("Enumerated %d paths for Xi(%d, %d)", count, x, n)
    return PassageWeight(x=x, n=n, weight=total, pqrs=pqrs)


def passage_table(n: int, config: WalkConfig) -> Dict[int, PassageWeight]:
    """Every Xi(x, n), |x| <= n, from one evolution of the two basis spinors."""
    if n < 0:
        raise ValueError(f"Number of steps must be nonnegative, got {n}.")
    block = np.eye(2, dtype=np.complex128).reshape(1, 2, 2)
    lo, block = evolve_block(0, block, config, n)
    return {lo + i: PassageWeight(x=lo + i, n=n, weight=block[i]) for i in range(block.shape[0])}


def xi_via_engine(x: int, n: int, config: WalkConfig) -> PassageWeight:
    """Columns of Xi(x, n) are Psi_n(x) for the initial spinors [1, 0] and [0, 1]."""
    table = passage_table(n, config)
    if x in table:
        return table[x]
    return PassageWeight(x=x, n=n, weight=np.zeros((2, 2), dtype=np.complex128))
