import logging
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Logging
    QWDEFECT_LOG_LEVEL: str = Field("INFO", env="QWDEFECT_LOG_LEVEL")

    # Sweep worker processes (1 runs serially)
    QWDEFECT_WORKERS: int = Field(1, env="QWDEFECT_WORKERS")

    # Series inversion on |z| = radius
    QWDEFECT_CONTOUR_RADIUS: float = Field(0.5, env="QWDEFECT_CONTOUR_RADIUS")
    QWDEFECT_CONTOUR_POINTS: int = Field(256, env="QWDEFECT_CONTOUR_POINTS")

    # Composite Gauss-Legendre rule: panels x order nodes
    QWDEFECT_QUADRATURE_PANELS: int = Field(40, env="QWDEFECT_QUADRATURE_PANELS")
    QWDEFECT_QUADRATURE_ORDER: int = Field(50, env="QWDEFECT_QUADRATURE_ORDER")

    # Path oracle and eigenvector truncation
    QWDEFECT_ORACLE_NMAX: int = Field(16, env="QWDEFECT_ORACLE_NMAX")
    QWDEFECT_EIGEN_WINDOW: int = Field(200, env="QWDEFECT_EIGEN_WINDOW")

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        extra = "ignore"


# Usage
settings = Settings()


# ============= LOGGING CONFIG =============
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def configure_logging(level: Optional[str] = None) -> None:
    logging.basicConfig(
        level=getattr(logging, (level or settings.QWDEFECT_LOG_LEVEL).upper(), logging.INFO),
        format=LOG_FORMAT,
        handlers=[logging.StreamHandler()],
    )


# ============= END LOGGING CONFIG =============


def load_yaml_config(path: Path) -> Dict[str, Any]:
    """Read a run-config file; an empty file yields an empty mapping."""
    with open(path, "r") as f:
        data = yaml.safe_load(f)
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ValueError(f"Run config {path} must be a mapping, got {type(data).__name__}")
    return data
