"""Canonical serialization for experiment outputs.

JSON is emitted with sorted keys, no whitespace variation and floats printed
at 17 significant digits, so identical inputs always produce byte-identical
files.  Complex numbers serialize as [re, im] pairs; sphere points as
[re, im] or the string "inf".
"""

from __future__ import annotations

import json
import math

import numpy as np

from .moebius import MoebiusMap
from .sphere import SpherePoint

__all__ = ["canonical_json", "write_json", "write_csv", "jsonable"]


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def canonical_json(obj) -> str:
    """Deterministic JSON text (sorted keys, fixed float formatting)."""
    out: list[str] = []
    _emit(obj, out)
    return "".join(out) + "\n"


def _emit(obj, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=True))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_fmt_float(float(obj)))
    elif isinstance(obj, (complex, np.complexfloating)):
        _emit([obj.real, obj.imag], out)
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if i:
                out.append(",")
            out.append(json.dumps(str(key), ensure_ascii=True))
            out.append(":")
            _emit(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _emit(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def jsonable(obj):
    """Convert domain values to plain JSON-ready structures."""
    if isinstance(obj, SpherePoint):
        if obj.is_infinite:
            return "inf"
        return [obj.value.real, obj.value.imag]
    if isinstance(obj, MoebiusMap):
        return [jsonable(e) for e in obj.entries()]
    if isinstance(obj, (complex, np.complexfloating)):
        return [obj.real, obj.imag]
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    return obj


def write_json(path, obj) -> None:
    with open(path, "w") as fh:
        fh.write(canonical_json(jsonable(obj)))


def _fmt_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        x = float(v)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return format(x, ".17g")
    if v is None:
        return ""
    return str(v)


def write_csv(path, header, rows) -> None:
    """Plain deterministic CSV: fixed float format, LF line endings."""
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt_cell(v) for v in row) + "\n")
