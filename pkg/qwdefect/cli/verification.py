"""
Acceptance checks run by ``qwdefect verify``.

Each criterion builds its own configurations, measures one worst-case number
and compares it with a tolerance. Random draws come from one generator seeded
by the run's ``seed``, so reports are reproducible.
"""

import logging
import math
from functools import partial
from typing import Callable, Dict, List, Optional

import numpy as np

from qwdefect.cli.schemas import CheckRecord, ExperimentSpec, VerificationReport
from qwdefect.coins import CoinAngles, make_coin, random_coin, with_determinant
from qwdefect.errors import ParseError, QwDefectError
from qwdefect.theory import (
    EigenData,
    caratheodory_check,
    eigen_residual,
    localized_mass,
    localized_mass_by_sum,
    mass_points_check,
    match_time_average,
    orthogonal_initial_state,
    phase_defect_atom,
    quadratic_residuals,
    stationarity_defect,
    taylor_coefficients,
    uniform_hadamard_measure,
    weak_density,
    xi0_generating,
    xi_x_generating,
)
from qwdefect.theory.stationary import BRANCHES
from qwdefect.walk import (
    CoinState,
    SpinorField,
    WalkConfig,
    enumerate_xi,
    passage_table,
    rescaled_empirical_cdf,
    time_average,
)

logger = logging.getLogger(__name__)

Criterion = Callable[[ExperimentSpec, np.random.Generator], List[CheckRecord]]


def _record(
    criterion: str, target: str, measured: float, tolerance: float, ok: bool, details: Optional[str] = None
) -> CheckRecord:
    return CheckRecord(
        criterion=criterion,
        target=target,
        measured=float(measured),
        tolerance=float(tolerance),
        passed=bool(ok),
        details=details,
    )


def _upper(
    criterion: str, target: str, measured: float, tolerance: float, details: Optional[str] = None
) -> CheckRecord:
    return _record(criterion, target, measured, tolerance, measured <= tolerance, details)


def _near(
    criterion: str, expected: float, measured: float, tolerance: float, details: Optional[str] = None
) -> CheckRecord:
    return _record(criterion, f"{expected:g}", measured, tolerance, abs(measured - expected) <= tolerance, details)


def _random_state(rng: np.random.Generator) -> CoinState:
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return CoinState.normalized(v[0], v[1])


def _random_angle_config(rng: np.random.Generator) -> WalkConfig:
    w = rng.uniform(0.0, 2.0 * math.pi, size=4)
    return WalkConfig(
        defect=make_coin(CoinAngles.wrapped(w[0], w[1])),
        bulk=make_coin(CoinAngles.wrapped(w[2], w[3])),
    )


def _random_pair(rng: np.random.Generator) -> WalkConfig:
    """Haar bulk with 0.3 < |a| < 0.9 and a Haar defect sharing its determinant."""
    bulk = random_coin(rng)
    while not 0.3 < abs(bulk.a) < 0.9:
        bulk = random_coin(rng)
    return WalkConfig(defect=with_determinant(random_coin(rng), bulk.det), bulk=bulk)


# ============= PATH ORACLE =============


def check_oracle(spec: ExperimentSpec, rng: np.random.Generator) -> List[CheckRecord]:
    n_max, tol = 12, 1e-12
    configs = [WalkConfig.phase_defect(w) for w in (0.0, math.pi / 4, math.pi / 2, math.pi)]
    configs += [_random_angle_config(rng) for _ in range(3)]

    worst = 0.0
    for config in configs:
        for n in range(n_max + 1):
            table = passage_table(n, config)
            for x in range(-n, n + 1, 2):
                brute = enumerate_xi(x, n, config, n_max=n_max)
                worst = max(worst, float(np.max(np.abs(brute.weight - table[x].weight))))
    target = f"max |Xi_enum - Xi_engine| <= {tol:g}"
    return [_upper("oracle", target, worst, tol, f"{len(configs)} fields, n <= {n_max}")]


# ============= GENERATING FUNCTIONS =============


def check_series(spec: ExperimentSpec, rng: np.random.Generator) -> List[CheckRecord]:
    # Coefficients are divided by r^n, so rounding grows like r^-n: 0.5^-20 ~ 1e6
    # would eat the 1e-10 budget, 0.8^-20 ~ 90 does not.
    n_max, radius, tol = 20, 0.8, 1e-10
    configs = [WalkConfig.phase_defect(w) for w in (math.pi / 4, math.pi / 2, math.pi)]
    configs += [_random_angle_config(rng) for _ in range(2)]

    worst = 0.0
    for config in configs:
        tables = [passage_table(n, config) for n in range(n_max + 1)]
        for x in range(-3, 4):
            fn = partial(xi0_generating, config) if x == 0 else partial(xi_x_generating, config, x)
            coeffs = taylor_coefficients(fn, n_max, radius=radius)
            engine = np.array(
                [tables[n][x].weight if x in tables[n] else np.zeros((2, 2)) for n in range(n_max + 1)]
            )
            worst = max(worst, float(np.max(np.abs(coeffs - engine))))
    target = f"max |coeff - Xi(x, n)| <= {tol:g}"
    records = [_upper("series", target, worst, tol, f"|x| <= 3, n <= {n_max}, r = {radius}")]

    quad = 0.0
    for _ in range(1000):
        z = 0.999 * math.sqrt(rng.uniform()) * np.exp(2j * math.pi * rng.uniform())
        quad = max(quad, *quadratic_residuals(configs[-1], complex(z)))
    records.append(_upper("series", f"boundary quadratic residual <= {tol:g}", quad, tol, "1000 points in |z| < 0.999"))
    return records


# ============= TIME-AVERAGED LIMITS =============


def check_timeavg(spec: ExperimentSpec, rng: np.random.Generator) -> List[CheckRecord]:
    avg = time_average(SpinorField.at_origin(CoinState.symmetric()), WalkConfig.phase_defect(math.pi), spec.T)
    return [
        _near("timeavg", 0.32, avg[0], 0.02, f"omega = pi, x = 0, T = {spec.T}"),
        _near("timeavg", 0.192, avg[1], 0.02, f"omega = pi, x = 1, T = {spec.T}"),
        _near("timeavg", 0.192, avg[-1], 0.02, f"omega = pi, x = -1, T = {spec.T}"),
    ]


def check_null(spec: ExperimentSpec, rng: np.random.Generator) -> List[CheckRecord]:
    avg = time_average(SpinorField.at_origin(CoinState.symmetric()), WalkConfig.phase_defect(0.0), spec.T)
    return [_upper("null", "mu(0) <= 0.02 without a defect", avg[0], 0.02, f"T = {spec.T}")]


def check_normalization(spec: ExperimentSpec, rng: np.random.Generator) -> List[CheckRecord]:
    tol = 1e-6
    states = [CoinState.symmetric()] + [_random_state(rng) for _ in range(10)]
    worst_sum = worst_mass = 0.0
    for k in range(1, 16):
        config = WalkConfig.phase_defect(k * math.pi / 8)
        for psi0 in states:
            worst_sum = max(worst_sum, abs(localized_mass(config, psi0) - localized_mass_by_sum(config, psi0)))
            worst_mass = max(worst_mass, abs(weak_density(config, psi0).mass() - 1.0))

    config = WalkConfig.phase_defect(math.pi)
    rho = weak_density(config, CoinState.symmetric())
    return [
        _upper("normalization", f"|C + int w f_K - 1| <= {tol:g}", worst_mass, tol, "omega = k pi / 8, 11 states"),
        _upper("normalization", f"|C - sum mu| <= {tol:g}", worst_sum, tol, "omega = k pi / 8, 11 states"),
        _near("normalization", 0.8, rho.atom_mass, tol, "C at omega = pi"),
        _near("normalization", 0.8, phase_defect_atom(math.pi), tol, "closed-form C at omega = pi"),
        _near("normalization", 0.2, rho.mass() - rho.atom_mass, tol, "continuous mass at omega = pi"),
    ]


# ============= WEAK LIMIT =============


def _weak_gap(config: WalkConfig, psi0: CoinState, n: int, ys: np.ndarray) -> float:
    rho = weak_density(config, psi0)
    empirical = rescaled_empirical_cdf(SpinorField.at_origin(psi0), config, n, ys)
    theory = np.array([rho.cdf(float(y)) for y in ys])
    return float(np.max(np.abs(empirical - theory)))


def check_weak(spec: ExperimentSpec, rng: np.random.Generator) -> List[CheckRecord]:
    n, tol = 2000, 0.03
    ys = np.array([-0.6, -0.5, -0.4, -0.3, -0.2, -0.1, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6])

    family = 0.0
    for k in range(16):
        config = WalkConfig.phase_defect(k * math.pi / 8)
        for psi0 in (CoinState.symmetric(), _random_state(rng)):
            family = max(family, _weak_gap(config, psi0, n, ys))

    pairs = 0.0
    for _ in range(2):
        config = _random_pair(rng)
        r = abs(config.bulk.a)
        fractions = np.array([-0.9, -0.7, -0.5, -0.3, -0.15, 0.15, 0.3, 0.5, 0.7, 0.9])
        pairs = max(pairs, _weak_gap(config, _random_state(rng), n, r * fractions))

    target = f"sup |F_n - F| <= {tol:g}"
    return [
        _upper("weak", target, family, tol, f"omega = k pi / 8, symmetric and random states, n = {n}"),
        _upper("weak", target, pairs, tol, f"2 random coin pairs, n = {n}"),
    ]


# ============= EIGENVECTORS =============


def check_eigen(spec: ExperimentSpec, rng: np.random.Generator) -> List[CheckRecord]:
    omegas = (math.pi / 4, math.pi / 2, math.pi)
    residual = stationarity = match = 0.0
    for omega in omegas:
        for sigma, tau in BRANCHES:
            data = EigenData.from_branch(omega, sigma, tau)
            residual = max(residual, eigen_residual(data, spec.window))
            stationarity = max(stationarity, stationarity_defect(data, spec.window))
        match = max(match, match_time_average(omega, spec.extent).max_deviation)

    xs = range(-20, 21)
    uniform = max(float(np.max(np.abs(uniform_hadamard_measure(c, xs) - c))) for c in (0.5, 1.0, 2.0))
    return [
        _upper("eigen", "max |U Psi - eta Psi| <= 1e-12", residual, 1e-12, f"W = {spec.window}"),
        _upper("eigen", "max |mu_n - mu_0| <= 1e-10", stationarity, 1e-10, "n = 50"),
        _upper("eigen", "stationary vs time-averaged <= 1e-12", match, 1e-12, f"|x| <= {spec.extent}"),
        _upper("eigen", "uniform Hadamard measure equals c", uniform, 1e-12),
    ]


def check_masspoints(spec: ExperimentSpec, rng: np.random.Generator) -> List[CheckRecord]:
    worst, skipped = 0.0, 0
    for k in range(16):
        report = mass_points_check(k * math.pi / 8)
        skipped += report.skipped
        worst = max(worst, report.max_mismatch)
    details = f"{skipped} omega without localization"
    return [_upper("masspoints", "poles rotated by i match eigenvalues <= 1e-10", worst, 1e-10, details)]


# ============= CARATHEODORY =============


def check_caratheodory(spec: ExperimentSpec, rng: np.random.Generator) -> List[CheckRecord]:
    n_terms = 60
    records = []
    cases = [
        ("one-defect omega = pi", WalkConfig.phase_defect(math.pi)),
        ("half-line b = 0.6", WalkConfig.type_two(0.6)),
    ]
    for label, config in cases:
        reports = [caratheodory_check(config, z, n_terms) for z in (0.4, 0.4j, -0.3 + 0.3j)]
        measured = max(max(r.block_residual, r.half_line_residual or 0.0) for r in reports)
        tolerance = min(r.tolerance for r in reports)
        ok = all(r.passed for r in reports)
        target = "series matches closed form within twice the tail bound"
        records.append(_record("caratheodory", target, measured, tolerance, ok, label))
    return records


def check_orthogonal(spec: ExperimentSpec, rng: np.random.Generator) -> List[CheckRecord]:
    T, omega = 2000, math.pi
    config = WalkConfig.phase_defect(omega)
    orth = time_average(orthogonal_initial_state(omega, spec.window), config, T)
    generic = time_average(SpinorField.at_origin(CoinState.symmetric()), config, T)
    return [
        _upper("orthogonal", "mu(0) <= 0.01 off the eigenvector span", orth[0], 0.01, f"T = {T}"),
        _near("orthogonal", 0.32, generic[0], 0.02, f"generic state, T = {T}"),
    ]


CRITERIA: Dict[str, Criterion] = {
    "oracle": check_oracle,
    "series": check_series,
    "timeavg": check_timeavg,
    "null": check_null,
    "normalization": check_normalization,
    "weak": check_weak,
    "eigen": check_eigen,
    "masspoints": check_masspoints,
    "caratheodory": check_caratheodory,
    "orthogonal": check_orthogonal,
}


def verify_all(spec: ExperimentSpec) -> VerificationReport:
    """Run the selected criteria (all by default) in registry order."""
    names = list(CRITERIA) if not spec.only else spec.only
    unknown = [n for n in names if n not in CRITERIA]
    if unknown:
        raise ParseError(f"Unknown criteria {unknown}; choose from {list(CRITERIA)}", field="only")

    rng = np.random.default_rng(spec.seed)
    report = VerificationReport()
    for name in names:
        logger.info(f"🔍 Checking {name}")
        try:
            records = CRITERIA[name](spec, rng)
        except QwDefectError as e:
            logger.error(f"❌ {name} raised {type(e).__name__}: {e.message}")
            records = [_record(name, "no error", float("nan"), 0.0, False, f"{type(e).__name__}: {e.message}")]
        for r in records:
            status = "✅" if r.passed else "❌"
            logger.info(f"{status} {r.criterion}: {r.target} (measured {r.measured:.3e})")
        report.records.extend(records)
    return report
