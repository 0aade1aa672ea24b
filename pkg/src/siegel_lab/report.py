"""Deterministic report serialization (JSON, CSV, text).

Floats are rounded to 12 significant digits before encoding and keys are
sorted, so identical inputs give byte-identical reports.
"""

from __future__ import annotations

import csv
import dataclasses
import enum
import io
import json
import math
from fractions import Fraction
from typing import Any, Optional

import numpy as np

SIG_DIGITS = 12


def _float(v: float):
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    r = float(f"{v:.{SIG_DIGITS}g}")
    return 0.0 if r == 0 else r  # no "-0.0"


def normalize(obj: Any) -> Any:
    """Turn dataclasses, numpy values, fractions and complex numbers into plain JSON data."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, enum.Enum):
        return normalize(obj.value)
    if isinstance(obj, (int, np.integer)) and not isinstance(obj, np.bool_):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, (float, np.floating)):
        return _float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _float(obj.real), "im": _float(obj.imag)}
    if isinstance(obj, Fraction):
        return str(obj)
    if hasattr(obj, "as_dict"):
        return normalize(obj.as_dict())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: normalize(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [normalize(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(obj: Any) -> str:
    return json.dumps(normalize(obj), sort_keys=True, indent=2) + "\n"


def _cell(v):
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return "" if v is None else v


def to_csv(rows: list[dict], delimiter: str = ",") -> str:
    rows = normalize(rows)
    if not rows:
        return ""
    cols = sorted({k for r in rows for k in r})
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n", delimiter=delimiter)
    w.writeheader()
    for r in rows:
        w.writerow({k: _cell(r.get(k)) for k in cols})
    return buf.getvalue()


def to_text(report: dict, rows: Optional[list[dict]] = None) -> str:
    data = normalize(report)
    lines = []
    for k in sorted(data):
        if k in ("rows",):
            continue
        v = data[k]
        lines.append(f"{k}: {json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v}")
    if rows:
        lines.append("")
        lines.append(to_csv(rows, delimiter="\t").rstrip("\n"))
    return "\n".join(lines) + "\n"
