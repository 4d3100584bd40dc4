from qwdefect.theory.boundary import (
    BoundaryValues,
    eval_boundary,
    quadratic_residuals,
    radial_sqrt,
    radial_track,
    site_boundary,
)
from qwdefect.theory.caratheodory import CaratheodoryReport, caratheodory_check
from qwdefect.theory.generating import (
    PassageAsymptotics,
    PoleSet,
    find_poles,
    passage_asymptotics,
    lambda0,
    taylor_coefficients,
    type_two_closed_form,
    xi0_generating,
    xi_x_generating,
)
from qwdefect.theory.limits import (
    DerivedParams,
    WeakLimitDensity,
    f_K,
    homogeneous_density,
    localized_mass,
    localized_mass_by_sum,
    phase_defect_atom,
    phase_defect_weight,
    phase_defect_time_avg,
    time_avg_limit,
    time_avg_table,
    weak_cdf,
    weak_density,
)
from qwdefect.theory.stationary import (
    EigenData,
    MassPointReport,
    StationaryMatch,
    build_eigenvector,
    chirality_time_avg_at_origin,
    eigen_residual,
    eigenvalues,
    mass_points_check,
    match_time_average,
    orthogonal_initial_state,
    stationarity_defect,
    stationary_measure,
    uniform_hadamard_measure,
)

__all__ = [
    "BoundaryValues",
    "CaratheodoryReport",
    "DerivedParams",
    "EigenData",
    "MassPointReport",
    "PassageAsymptotics",
    "PoleSet",
    "StationaryMatch",
    "WeakLimitDensity",
    "build_eigenvector",
    "caratheodory_check",
    "chirality_time_avg_at_origin",
    "eigen_residual",
    "eigenvalues",
    "eval_boundary",
    "f_K",
    "find_poles",
    "homogeneous_density",
    "lambda0",
    "localized_mass",
    "localized_mass_by_sum",
    "mass_points_check",
    "match_time_average",
    "orthogonal_initial_state",
    "passage_asymptotics",
    "phase_defect_atom",
    "phase_defect_weight",
    "phase_defect_time_avg",
    "quadratic_residuals",
    "radial_sqrt",
    "radial_track",
    "site_boundary",
    "stationarity_defect",
    "stationary_measure",
    "taylor_coefficients",
    "time_avg_limit",
    "time_avg_table",
    "type_two_closed_form",
    "uniform_hadamard_measure",
    "weak_cdf",
    "weak_density",
    "xi0_generating",
    "xi_x_generating",
]
