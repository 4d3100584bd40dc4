"""
Numerics for discrete-time quantum walks on the integers with a single
defect coin at the origin: exact evolution, path sums, generating functions,
limit measures and stationary measures.
"""

from qwdefect.coins import CoinAngles, CoinMatrix, make_coin
from qwdefect.errors import QwDefectError
from qwdefect.walk import CoinState, SpinorField, WalkConfig, evolve, measure, time_average

__version__ = "0.1.0"

__all__ = [
    "CoinAngles",
    "CoinMatrix",
    "CoinState",
    "QwDefectError",
    "SpinorField",
    "WalkConfig",
    "evolve",
    "make_coin",
    "measure",
    "time_average",
]
