import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional, TextIO

import pandas as pd

from qwdefect.cli.schemas import VerificationReport

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def sanitize_metadata(metadata: Dict[str, Any]) -> Dict[str, Any]:
    """Remove None values and serialize complex types for the header lines."""
    clean = {}
    for k, v in metadata.items():
        if v is None:
            continue
        if isinstance(v, (list, tuple, dict)):
            v = json.dumps(v, default=str)
        elif not isinstance(v, (str, int, float, bool)):
            v = str(v)
        clean[k] = v
    return clean


def _write(stream: TextIO, df: pd.DataFrame, metadata: Dict[str, Any]) -> None:
    for key, value in sanitize_metadata(metadata).items():
        stream.write(f"# {key}: {value}\n")
    df.to_csv(stream, index=False, float_format=FLOAT_FORMAT)


def write_table(df: pd.DataFrame, out: Optional[Path], metadata: Dict[str, Any]) -> None:
    """CSV with '# key: value' metadata lines before the header; stdout when out is None."""
    if out is None:
        _write(sys.stdout, df, metadata)
        return
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="") as f:
        _write(f, df, metadata)
    logger.info(f"✅ Wrote {len(df)} rows to {out}")


def write_series(out: Path, columns: Dict[str, Any], metadata: Dict[str, Any]) -> None:
    """One two-column (x, value) file per series, next to ``out``."""
    x = columns["x"]
    for name, values in columns.items():
        if name == "x":
            continue
        path = out.with_name(f"{out.stem}_{name}.csv")
        write_table(pd.DataFrame({"x": x, name: values}), path, metadata)


def report_json(report: VerificationReport) -> str:
    return json.dumps(
        {
            "passed": report.passed,
            "records": [r.model_dump(by_alias=True) for r in report.records],
        },
        indent=2,
    )


def write_report(report: VerificationReport, out: Optional[Path], as_json: bool) -> None:
    if as_json:
        text = report_json(report)
    else:
        df = pd.DataFrame([r.model_dump(by_alias=True) for r in report.records])
        text = df.to_string(index=False)
    if out is None:
        sys.stdout.write(text + "\n")
        return
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text + "\n")
    logger.info(f"✅ Wrote verification report to {out}")
