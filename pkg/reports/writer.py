"""
Deterministic report serialization
"""

import json
import math
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel

from config import OutputConfig


def _plain(value: Any, digits: int) -> Any:
    """JSON-ready copy: floats rounded to `digits` significant digits, complex as [re, im]"""
    if isinstance(value, dict):
        return {k: _plain(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(v, digits) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [_plain(float(value.real), digits), _plain(float(value.imag), digits)]
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return None
        # -0.0 and 0.0 serialize alike
        return float(f"{value:.{digits}g}") + 0.0
    return value


def report_json(report: BaseModel, output: Optional[OutputConfig] = None) -> str:
    """Report as JSON with fields in model order; identical inputs give identical bytes"""
    output = output or OutputConfig()
    payload = report.model_dump(by_alias=True, exclude_none=False)
    if not output.timing and "runtime_ms" in payload:
        del payload["runtime_ms"]
    text = json.dumps(_plain(payload, output.float_digits), indent=output.indent,
                      ensure_ascii=False, allow_nan=False)
    return text + "\n"


def write_report(report: BaseModel, out: Optional[str], output: Optional[OutputConfig] = None) -> str:
    """Write the report to `out` (if given) and return its text"""
    text = report_json(report, output)
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    return text


def write_series(path: str, columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    """Plot-data CSV: one row per point, floats at 17 significant digits"""
    frame = pd.DataFrame(list(rows), columns=list(columns))
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format="%.17g")
