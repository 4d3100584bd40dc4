"""
Command-line entry point: ``qwdefect <command> [flags]``.

Values are layered as defaults.yaml < --config file < flags. Exit status is 0
on success, 1 for usage errors, 2 for rejected inputs and 3 when verification
fails.
"""

import argparse
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import yaml
from pydantic import ValidationError

from qwdefect.cli.schemas import ErrorRecord, ExperimentSpec
from qwdefect.cli.services import run
from qwdefect.config import configure_logging, load_yaml_config
from qwdefect.errors import ParseError, QwDefectError, VerificationFailure

logger = logging.getLogger(__name__)

DEFAULTS_PATH = Path(__file__).parent / "defaults.yaml"

EXIT_PARSE = 1
EXIT_PRECONDITION = 2
EXIT_VERIFICATION = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise ParseError(message)


def _complex_pair(text: str) -> Tuple[float, float]:
    try:
        re, im = (float(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")
    return re, im


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", type=Path, help="YAML run config")
    common.add_argument("--omega", type=float, help="Defect phase (radians)")
    common.add_argument("--omega-degrees", type=float, help="Defect phase (degrees)")
    common.add_argument("--omega-diag", type=float)
    common.add_argument("--bulk-omega", type=float)
    common.add_argument("--bulk-omega-tilde", type=float)
    common.add_argument("--alpha", type=_complex_pair, help="re,im")
    common.add_argument("--beta", type=_complex_pair, help="re,im")
    common.add_argument("--out", type=Path, help="Output file; stdout when omitted")
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    common.add_argument("--seed", type=int)
    common.add_argument("--series", action="store_true", help="Also write one file per column")

    parser = _Parser(prog="qwdefect", description="One-defect quantum walks on the line")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def command(name: str, help: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], argument_default=argparse.SUPPRESS, help=help)

    p = command("simulate", "Distribution after n steps")
    p.add_argument("--steps", type=int)

    p = command("timeavg", "Empirical time-averaged measure")
    p.add_argument("--T", dest="T", type=int)
    p.add_argument("--xmax", type=int)
    p.add_argument("--compare-theory", action="store_true")

    p = command("sweep", "Localization over an omega grid")
    p.add_argument("--omega-grid", help="start:stop:count")
    p.add_argument("--report", choices=["localization"])
    p.add_argument("--workers", type=int)

    p = command("density", "Weak-limit density and CDF")
    p.add_argument("--density-points", "--points", dest="density_points", type=int)
    p.add_argument("--compare-empirical", action="store_true")
    p.add_argument("--steps", type=int)

    p = command("stationary", "Eigenvector stationary measure")
    p.add_argument("--extent", type=int)
    p.add_argument("--window", type=int)

    p = command("verify", "Run acceptance checks")
    p.add_argument("--only", help="Comma-separated criteria")
    p.add_argument("--json", dest="json_report", action="store_true")
    p.add_argument("--T", dest="T", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--extent", type=int)

    return parser


def resolve_spec(argv: Optional[List[str]] = None) -> Tuple[ExperimentSpec, Optional[str]]:
    """Parse argv and merge it over the file layers into a validated spec."""
    args = vars(build_parser().parse_args(argv))
    log_level = args.pop("log_level", None)

    values: Dict[str, Any] = dict(load_yaml_config(DEFAULTS_PATH))
    config_path = args.pop("config", None)
    if config_path is not None:
        try:
            values.update(load_yaml_config(config_path))
        except (OSError, ValueError, yaml.YAMLError) as e:
            raise ParseError(f"Cannot read run config {config_path}: {e}", field="config") from e

    degrees = args.pop("omega_degrees", None)
    if degrees is not None:
        if "omega" in args:
            raise ParseError("Give --omega or --omega-degrees, not both", field="omega")
        args["omega"] = math.radians(degrees)
    values.update(args)

    try:
        return ExperimentSpec.model_validate(values), log_level
    except ValidationError as e:
        loc = e.errors()[0]["loc"]
        raise ParseError(str(e), field=".".join(str(p) for p in loc) or None) from e


def _exit_code(error: QwDefectError) -> int:
    if isinstance(error, ParseError):
        return EXIT_PARSE
    if isinstance(error, VerificationFailure):
        return EXIT_VERIFICATION
    return EXIT_PRECONDITION


def main(argv: Optional[List[str]] = None) -> int:
    try:
        spec, log_level = resolve_spec(argv)
        configure_logging(log_level)
        return run(spec)
    except QwDefectError as e:
        logger.error(f"❌ {type(e).__name__}: {e.message}")
        record = ErrorRecord(**e.to_record())
        sys.stderr.write(json.dumps(record.model_dump()) + "\n")
        return _exit_code(e)


if __name__ == "__main__":
    sys.exit(main())
