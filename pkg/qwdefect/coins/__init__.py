from .models import CoinAngles, CoinMatrix, PqrsWeight
from .algebra import (
    basis,
    hadamard,
    is_unitary,
    make_coin,
    move_matrix,
    phase_defect,
    pqrs_decompose,
    pqrs_left_multiply,
    random_coin,
    split_pq,
    with_determinant,
)

__all__ = [
    "CoinAngles",
    "CoinMatrix",
    "PqrsWeight",
    "basis",
    "hadamard",
    "is_unitary",
    "make_coin",
    "move_matrix",
    "phase_defect",
    "pqrs_decompose",
    "pqrs_left_multiply",
    "random_coin",
    "split_pq",
    "with_determinant",
]
