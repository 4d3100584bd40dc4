import math

import numpy as np
import pytest

from qwdefect.coins import hadamard
from qwdefect.walk import CoinState, WalkConfig


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def symmetric_state():
    return CoinState.symmetric()


@pytest.fixture
def pi_defect():
    """Hadamard bulk with the U0(0, pi) defect."""
    return WalkConfig.phase_defect(math.pi)


@pytest.fixture
def hadamard_walk():
    return WalkConfig.homogeneous(hadamard())
