from qwdefect.cli.main import build_parser, main, resolve_spec
from qwdefect.cli.schemas import CheckRecord, ErrorRecord, ExperimentSpec, SweepRow, VerificationReport
from qwdefect.cli.services import ExperimentService, run

__all__ = [
    "CheckRecord",
    "ErrorRecord",
    "ExperimentService",
    "ExperimentSpec",
    "SweepRow",
    "VerificationReport",
    "build_parser",
    "main",
    "resolve_spec",
    "run",
]
