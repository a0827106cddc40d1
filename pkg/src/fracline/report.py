"""Byte-stable JSON/CSV emission.

Floats are written with 17 significant digits, keys sorted, LF line endings,
so identical inputs always give identical files.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, is_dataclass
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .spectral_core import SampledFunction, format_float, write_csv


def _plain(obj: Any) -> Any:
    if hasattr(obj, "to_dict"):
        return _plain(obj.to_dict())
    if is_dataclass(obj) and not isinstance(obj, type):
        return _plain(asdict(obj))
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def _encode(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            # JSON has no inf/nan
            return json.dumps(str(obj))
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_encode(obj[k], indent, level + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    return _encode(_plain(obj), indent, 0) + "\n"


def write_rows(rows: Sequence[dict], path, columns: Sequence[str]) -> None:
    lines = [",".join(columns)]
    for row in rows:
        cells = []
        for c in columns:
            v = _plain(row[c])
            if isinstance(v, float):
                cells.append(format_float(v))
            elif isinstance(v, bool):
                cells.append("true" if v else "false")
            else:
                cells.append(str(v))
        lines.append(",".join(cells))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def emit_report(result: Any, format: str, path) -> None:
    """Write ``result`` as JSON, or as CSV (sampled functions and row lists).

    I/O problems surface as ``OSError``.
    """
    path = Path(path)
    if format == "json":
        with open(path, "w", newline="\n") as fh:
            fh.write(dumps(result))
    elif format == "csv":
        if isinstance(result, SampledFunction):
            write_csv(result, path)
        else:
            rows = [_plain(r) for r in result]
            columns = list(rows[0]) if rows else []
            write_rows(rows, path, columns)
    else:
        raise ValueError(f"unknown format {format!r}")
