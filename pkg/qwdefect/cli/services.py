"""
Experiment drivers behind the CLI commands.
"""

import logging
import math
import multiprocessing as mp
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np
import pandas as pd

from qwdefect.cli.output import write_report, write_series, write_table
from qwdefect.cli.schemas import ExperimentSpec, SweepRow
from qwdefect.coins import CoinAngles, CoinMatrix, make_coin
from qwdefect.config import settings
from qwdefect.errors import ParseError, PreconditionError, QwDefectError, VerificationFailure
from qwdefect.theory import (
    EigenData,
    chirality_time_avg_at_origin,
    eigen_residual,
    find_poles,
    localized_mass,
    phase_defect_time_avg,
    stationary_measure,
    time_avg_limit,
    weak_density,
)
from qwdefect.theory.stationary import BRANCHES
from qwdefect.walk import (
    CoinState,
    SpinorField,
    WalkConfig,
    evolve,
    measure,
    rescaled_empirical_cdf,
    time_average,
)

logger = logging.getLogger(__name__)

# |alpha|^2 + |beta|^2 may miss 1 by this much and still be renormalized.
STATE_RENORM_ATOL = 1e-6


def coin_state_from_pairs(alpha: Sequence[float], beta: Sequence[float]) -> CoinState:
    a, b = complex(*alpha), complex(*beta)
    norm = abs(a) ** 2 + abs(b) ** 2
    if abs(norm - 1.0) <= 1e-12:
        return CoinState(a, b)
    if abs(norm - 1.0) <= STATE_RENORM_ATOL:
        logger.warning(f"⚠️  Coin state norm {norm:.10f} renormalized to 1")
        return CoinState.normalized(a, b)
    raise PreconditionError(f"Coin state is not normalized: |alpha|^2+|beta|^2 = {norm:.10g}", field="alpha")


def parse_omega_grid(text: str) -> np.ndarray:
    """'start:stop:count' to count evenly spaced angles, endpoints included."""
    try:
        start, stop, count = text.split(":")
        start, stop, count = float(start), float(stop), int(count)
    except ValueError as e:
        raise ParseError(f"omega grid must be 'start:stop:count', got {text!r}", field="omega_grid") from e
    if count < 1:
        raise ParseError(f"omega grid needs a positive count, got {count}", field="omega_grid")
    return np.linspace(start, stop, count)


def _coin_from_entries(entries: List[Tuple[float, float]], field: str) -> CoinMatrix:
    try:
        return CoinMatrix(*(complex(re, im) for re, im in entries))
    except QwDefectError as e:
        raise type(e)(e.message, field=field) from e
    except ValueError as e:
        raise PreconditionError(str(e), field=field) from e


def _sweep_cell(payload: Tuple[float, float, float, float, complex, complex]) -> Dict[str, Any]:
    omega, omega_diag, bulk_omega, bulk_omega_tilde, alpha, beta = payload
    config = WalkConfig(
        defect=make_coin(CoinAngles.wrapped(omega_diag, omega)),
        bulk=make_coin(CoinAngles.wrapped(bulk_omega, bulk_omega_tilde)),
    )
    psi0 = CoinState(alpha, beta)
    poles = find_poles(config)
    row = SweepRow(
        omega=omega,
        localized_mass=localized_mass(config, psi0),
        origin_mass=time_avg_limit(config, psi0, 0),
        gamma=poles.gamma,
        localized=poles.localized,
    )
    return row.model_dump()


class ExperimentService:
    """Drivers for each command; every method returns the table it writes."""

    @staticmethod
    def build_config(spec: ExperimentSpec) -> WalkConfig:
        if spec.defect_entries is not None:
            defect = _coin_from_entries(spec.defect_entries, "defect_entries")
        else:
            defect = make_coin(CoinAngles.wrapped(spec.omega_diag, spec.omega))
        if spec.bulk_entries is not None:
            bulk = _coin_from_entries(spec.bulk_entries, "bulk_entries")
        else:
            bulk = make_coin(CoinAngles.wrapped(spec.bulk_omega, spec.bulk_omega_tilde))
        return WalkConfig(defect=defect, bulk=bulk)

    @staticmethod
    def build_state(spec: ExperimentSpec) -> CoinState:
        return coin_state_from_pairs(spec.alpha, spec.beta)

    @staticmethod
    def simulate(spec: ExperimentSpec) -> pd.DataFrame:
        config = ExperimentService.build_config(spec)
        psi0 = ExperimentService.build_state(spec)
        final = evolve(SpinorField.at_origin(psi0), config, spec.steps)
        mu = measure(final)
        logger.info(f"Evolved {spec.steps} steps, total mass {mu.total():.15f}")
        return pd.DataFrame({"x": mu.positions, "mu": mu.masses})

    @staticmethod
    def timeavg(spec: ExperimentSpec) -> pd.DataFrame:
        config = ExperimentService.build_config(spec)
        psi0 = ExperimentService.build_state(spec)
        avg = time_average(SpinorField.at_origin(psi0), config, spec.T)
        xs = np.arange(-spec.xmax, spec.xmax + 1)
        df = pd.DataFrame({"x": xs, "empirical": avg.values(xs)})
        if spec.compare_theory:
            df["theoretical"] = [time_avg_limit(config, psi0, int(x)) for x in xs]
            df["abs_diff"] = (df["empirical"] - df["theoretical"]).abs()
            logger.info(f"max|diff| = {df['abs_diff'].max():.6g} over |x| <= {spec.xmax}, T = {spec.T}")
        return df

    @staticmethod
    def sweep(spec: ExperimentSpec) -> pd.DataFrame:
        # grid cells are built from angles only
        for field in ("defect_entries", "bulk_entries"):
            if getattr(spec, field) is not None:
                raise PreconditionError(
                    f"sweep varies the U0(omega_diag, omega) phase; {field} cannot be swept", field=field
                )
        omegas = parse_omega_grid(spec.omega_grid)
        psi0 = ExperimentService.build_state(spec)
        payloads = [
            (float(w), spec.omega_diag, spec.bulk_omega, spec.bulk_omega_tilde, psi0.alpha, psi0.beta)
            for w in omegas
        ]
        workers = spec.workers or settings.QWDEFECT_WORKERS
        if workers > 1:
            with mp.Pool(processes=workers) as pool:
                # map keeps grid order regardless of completion order
                rows = pool.map(_sweep_cell, payloads)
        else:
            rows = [_sweep_cell(p) for p in payloads]
        logger.info(f"Swept {len(rows)} omega values with {workers} worker(s)")
        return pd.DataFrame(rows, columns=list(SweepRow.model_fields))

    @staticmethod
    def density(spec: ExperimentSpec) -> pd.DataFrame:
        config = ExperimentService.build_config(spec)
        psi0 = ExperimentService.build_state(spec)
        rho = weak_density(config, psi0)
        xs = np.linspace(-0.99, 0.99, spec.density_points)
        df = pd.DataFrame(
            {
                "x": xs,
                "weight": rho.weight(xs),
                "continuous": rho.continuous(xs),
                "cdf": [rho.cdf(float(x)) for x in xs],
            }
        )
        if spec.compare_empirical:
            initial = SpinorField.at_origin(psi0)
            df["empirical_cdf"] = rescaled_empirical_cdf(initial, config, spec.steps, xs)
            logger.info(f"max|cdf diff| = {(df['empirical_cdf'] - df['cdf']).abs().max():.6g} at n = {spec.steps}")
        logger.info(f"Atom mass C = {rho.atom_mass:.15g}, total mass {rho.mass():.12f}")
        return df

    @staticmethod
    def stationary(spec: ExperimentSpec) -> pd.DataFrame:
        if spec.omega_diag != 0.0 or spec.bulk_omega != 0.0 or spec.bulk_omega_tilde != 0.0:
            logger.warning("⚠️  stationary uses a Hadamard bulk with the U0(0, omega) defect; other phases ignored")
        omega = spec.omega
        for sigma, tau in BRANCHES:
            data = EigenData.from_branch(omega, sigma, tau)
            residual = eigen_residual(data, spec.window)
            logger.info(f"eta(sigma={sigma:+d}, tau={tau:+d}) = {data.eta:.12f}, residual {residual:.3e}")

        left, right = chirality_time_avg_at_origin(omega)
        mu = stationary_measure(omega, math.sqrt(left), math.sqrt(right), extent=spec.extent)
        xs = np.arange(-spec.extent, spec.extent + 1)
        return pd.DataFrame(
            {
                "x": xs,
                "stationary": mu.values(xs),
                "time_avg": [phase_defect_time_avg(omega, int(x)) for x in xs],
            }
        )


def _metadata(spec: ExperimentSpec) -> Dict[str, Any]:
    return spec.model_dump(mode="json", exclude={"out"})


def run(spec: ExperimentSpec) -> int:
    """Run one command and write its artifacts; returns the exit status."""
    logger.info(f"🚀 Running {spec.command}")
    if spec.command == "verify":
        from qwdefect.cli.verification import verify_all

        report = verify_all(spec)
        write_report(report, spec.out, spec.json_report)
        if not report.passed:
            names = ", ".join(sorted({r.criterion for r in report.failures()}))
            raise VerificationFailure(f"Verification failed: {names}", field="only")
        logger.info(f"✅ All {len(report.records)} checks passed")
        return 0

    df = getattr(ExperimentService, spec.command)(spec)
    metadata = _metadata(spec)
    write_table(df, spec.out, metadata)
    if spec.series and spec.out is not None:
        write_series(spec.out, {c: df[c].to_numpy() for c in df.columns}, metadata)
    return 0
