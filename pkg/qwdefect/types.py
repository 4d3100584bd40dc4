from __future__ import annotations

from enum import Enum

import numpy as np
from numpy.typing import NDArray

# 2x2 complex matrix used for passage weights and generating-function values.
Mat2 = NDArray[np.complex128]


class Chirality(Enum):
    L = 0
    R = 1


class Move(Enum):
    """Move operators at a site: P, Q split the coin; R, S swap the output chirality."""

    P = "P"
    Q = "Q"
    R = "R"
    S = "S"
