"""
Pydantic schemas for experiment specs, sweep rows and verification reports.
"""

from pathlib import Path
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

Command = Literal["simulate", "timeavg", "sweep", "density", "stationary", "verify"]


# ============= Experiment Spec =============
class ExperimentSpec(BaseModel):
    command: Command = Field(..., description="Experiment to run")

    # Coins: defect U0 = make_coin(omega_diag, omega), bulk U = make_coin(bulk_omega, bulk_omega_tilde)
    omega: float = Field(..., description="Defect off-diagonal phase (radians)")
    omega_diag: float = Field(0.0, description="Defect diagonal phase (radians)")
    bulk_omega: float = Field(0.0, description="Bulk diagonal phase (radians)")
    bulk_omega_tilde: float = Field(0.0, description="Bulk off-diagonal phase (radians)")
    defect_entries: Optional[List[Tuple[float, float]]] = Field(
        None, description="Explicit defect entries a, b, c, d as (re, im) pairs"
    )
    bulk_entries: Optional[List[Tuple[float, float]]] = Field(
        None, description="Explicit bulk entries a, b, c, d as (re, im) pairs"
    )

    # Initial coin state
    alpha: Tuple[float, float] = Field(..., description="alpha as (re, im)")
    beta: Tuple[float, float] = Field(..., description="beta as (re, im)")

    steps: int = Field(1000, ge=1, description="Evolution steps n")
    T: int = Field(5000, ge=1, description="Averaging horizon")
    xmax: int = Field(10, ge=0, description="Sites |x| <= xmax reported by timeavg")
    compare_theory: bool = False
    compare_empirical: bool = False

    omega_grid: str = Field("0:3.141592653589793:16", description="start:stop:count")
    report: Literal["localization"] = "localization"
    workers: Optional[int] = Field(None, ge=1)

    density_points: int = Field(201, ge=2)
    extent: int = Field(50, ge=1, description="Sites |x| <= extent reported by stationary")
    window: int = Field(200, ge=2, description="Eigenvector truncation window")

    only: Optional[List[str]] = None
    json_report: bool = False
    seed: int = 20240601

    series: bool = Field(False, description="Also write one (x, value) file per column")
    out: Optional[Path] = None

    @field_validator("defect_entries", "bulk_entries")
    @classmethod
    def _four_entries(cls, v):
        if v is not None and len(v) != 4:
            raise ValueError("Coin entries need exactly four (re, im) pairs: a, b, c, d")
        return v

    @field_validator("only", mode="before")
    @classmethod
    def _split_only(cls, v):
        if isinstance(v, str):
            return [s.strip() for s in v.split(",") if s.strip()]
        return v


# ============= Sweep Schemas =============
class SweepRow(BaseModel):
    omega: float
    localized_mass: float = Field(..., description="C, total time-averaged mass")
    origin_mass: float = Field(..., description="Time-averaged limit at the origin")
    gamma: Optional[float] = Field(None, description="Pole angle, None without localization")
    localized: bool


# ============= Verification Schemas =============
class CheckRecord(BaseModel):
    criterion: str
    target: str
    measured: float
    tolerance: float
    passed: bool = Field(..., alias="pass")
    details: Optional[str] = None

    model_config = ConfigDict(populate_by_name=True)


class VerificationReport(BaseModel):
    records: List[CheckRecord] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> List[CheckRecord]:
        return [r for r in self.records if not r.passed]


class ErrorRecord(BaseModel):
    error: str
    field: Optional[str] = None
    message: str
