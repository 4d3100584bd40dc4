from qwdefect.walk.engine import (
    chirality_measure,
    chirality_time_average,
    evolve,
    evolve_block,
    matrix_element_series,
    measure,
    rescaled_empirical_cdf,
    step,
    time_average,
)
from qwdefect.walk.models import CoinState, Measure, PassageWeight, SpinorField, WalkConfig
from qwdefect.walk.oracle import enumerate_xi, passage_table, path_pqrs, path_weight, xi_via_engine

__all__ = [
    "CoinState",
    "Measure",
    "PassageWeight",
    "SpinorField",
    "WalkConfig",
    "chirality_measure",
    "chirality_time_average",
    "enumerate_xi",
    "evolve",
    "evolve_block",
    "matrix_element_series",
    "measure",
    "passage_table",
    "path_pqrs",
    "path_weight",
    "rescaled_empirical_cdf",
    "step",
    "time_average",
    "xi_via_engine",
]
