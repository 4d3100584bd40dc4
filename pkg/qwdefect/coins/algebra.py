"""
Coin construction and the P/Q/R/S move algebra.

Every passage weight of the one-defect walk is a combination of the four
position-0 operators

    P0 = |L><L|U0,  Q0 = |R><R|U0,  R0 = |L><R|U0,  S0 = |R><L|U0,

and a move at any site acts on those coefficients linearly. The functions here
build coins, split them into moves, and carry out that linear action.
"""

import math
from typing import Optional, Tuple

import numpy as np
from scipy.stats import unitary_group

from qwdefect.coins.models import CoinAngles, CoinMatrix, PqrsWeight
from qwdefect.errors import PreconditionError, SingularBasisError
from qwdefect.types import Mat2, Move

__all__ = [
    "make_coin",
    "hadamard",
    "phase_defect",
    "random_coin",
    "with_determinant",
    "is_unitary",
    "split_pq",
    "move_matrix",
    "basis",
    "pqrs_decompose",
    "pqrs_left_multiply",
]

SQRT2 = np.sqrt(2.0)


def make_coin(angles: CoinAngles) -> CoinMatrix:
    """
    Return the phase coin (1/sqrt2) [[e^{iw}, e^{iw~}], [e^{-iw~}, -e^{-iw}]].

    Parameters
    ----------
    angles: CoinAngles
        Validated pair (omega, omega_tilde).

    Returns
    -------
    CoinMatrix
        A unitary coin with determinant -1.
    """
    w, wt = angles.omega, angles.omega_tilde
    return CoinMatrix(
        np.exp(1j * w) / SQRT2,
        np.exp(1j * wt) / SQRT2,
        np.exp(-1j * wt) / SQRT2,
        -np.exp(-1j * w) / SQRT2,
    )


def hadamard() -> CoinMatrix:
    return make_coin(CoinAngles(omega=0.0, omega_tilde=0.0))


def phase_defect(omega: float) -> CoinMatrix:
    """Defect coin U0(0, omega) placed against a Hadamard bulk."""
    return make_coin(CoinAngles.wrapped(0.0, omega))


def random_coin(rng: Optional[np.random.Generator] = None) -> CoinMatrix:
    """Haar-random U(2) coin."""
    rng = rng or np.random.default_rng()
    return CoinMatrix.from_matrix(unitary_group.rvs(2, random_state=rng))


def with_determinant(coin: CoinMatrix, det: complex) -> CoinMatrix:
    """``coin`` times the global phase that makes its determinant equal ``det``."""
    if not math.isclose(abs(det), abs(coin.det), rel_tol=1e-12):
        raise PreconditionError(f"|det| must match, got {abs(det):.15g} and {abs(coin.det):.15g}.", field="det")
    phase = np.sqrt(complex(det) / complex(coin.det))
    return CoinMatrix.from_matrix(coin.matrix * phase)


def is_unitary(matrix: Mat2, atol: float = 1e-12) -> bool:
    m = np.asarray(matrix, dtype=np.complex128)
    return bool(np.allclose(m @ m.conj().T, np.eye(m.shape[0]), rtol=0.0, atol=atol))


def split_pq(coin: CoinMatrix) -> Tuple[Mat2, Mat2]:
    """Split a coin into P (upper row kept) and Q (lower row kept); P + Q = U."""
    p = np.zeros((2, 2), dtype=np.complex128)
    q = np.zeros((2, 2), dtype=np.complex128)
    p[0] = coin.upper_row
    q[1] = coin.lower_row
    return p, q


def _move_parts(coin: CoinMatrix, move: Move) -> Tuple[int, Tuple[complex, complex]]:
    # A move is |e><row| for an output chirality e and a coin row.
    if move is Move.P:
        return 0, coin.upper_row
    if move is Move.Q:
        return 1, coin.lower_row
    if move is Move.R:
        return 0, coin.lower_row
    if move is Move.S:
        return 1, coin.upper_row
    raise TypeError(f"Unknown move {move!r}.")


def move_matrix(coin: CoinMatrix, move: Move) -> Mat2:
    out, row = _move_parts(coin, move)
    m = np.zeros((2, 2), dtype=np.complex128)
    m[out] = row
    return m


def basis(defect: CoinMatrix) -> Tuple[Mat2, Mat2, Mat2, Mat2]:
    """Dense P0, Q0, R0, S0 for the given defect coin."""
    return tuple(move_matrix(defect, mv) for mv in (Move.P, Move.Q, Move.R, Move.S))


def pqrs_decompose(weight: Mat2, defect: CoinMatrix) -> PqrsWeight:
    """
    Express a 2x2 weight as p*P0 + q*Q0 + r*R0 + s*S0.

    Raises
    ------
    SingularBasisError
        If any entry of the defect coin is zero.
    """
    if not defect.is_generic:
        raise SingularBasisError(
            "Defect coin has a zero entry; the P0, Q0, R0, S0 basis is unavailable.",
            field="defect",
        )
    w = np.asarray(weight, dtype=np.complex128)
    system = np.column_stack([b.reshape(4) for b in basis(defect)])
    coeffs = np.linalg.solve(system, w.reshape(4))
    return PqrsWeight.from_coefficients(coeffs)


def pqrs_left_multiply(coin_at_x: CoinMatrix, move: Move, weight: PqrsWeight) -> PqrsWeight:
    """
    Left-multiply a basis-expanded weight by a move taken at some site.

    Writing the weight as |L>(p A + r C) + |R>(s A + q C) with A, C the rows of
    the defect coin, the move |e>(m1, m2) maps it to
    |e>((m1 p + m2 s) A + (m1 r + m2 q) C).
    """
    out, (m1, m2) = _move_parts(coin_at_x, move)
    along_a = m1 * weight.p + m2 * weight.s
    along_c = m1 * weight.r + m2 * weight.q
    if out == 0:
        return PqrsWeight(p=along_a, r=along_c)
    return PqrsWeight(s=along_a, q=along_c)
