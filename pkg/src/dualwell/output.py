"""Deterministic CSV/JSON writers with 10-significant-digit numbers."""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

SIG_DIGITS = 10


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        if not math.isfinite(x):
            return ""
        return format(float(x), f".{SIG_DIGITS}g")
    return str(x)


def clean(obj):
    """Convert numpy containers/scalars to JSON types, rounding floats to 10 digits."""
    if isinstance(obj, Mapping):
        return {str(k): clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            return None
        return float(format(float(obj), f".{SIG_DIGITS}g"))
    return obj


def dumps(obj) -> str:
    return json.dumps(clean(obj), indent=2) + "\n"


def csv_text(columns: Mapping[str, Sequence], footer: Mapping | None = None) -> str:
    names = list(columns)
    length = len(next(iter(columns.values()))) if names else 0
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(names)
    for i in range(length):
        writer.writerow([fmt(columns[name][i]) for name in names])
    if footer is not None:
        buf.write("# " + json.dumps(clean(footer)) + "\n")
    return buf.getvalue()


def write_text(path: Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    return path


def write_csv(path, columns, footer=None) -> Path:
    return write_text(path, csv_text(columns, footer))


def write_json(path, obj) -> Path:
    return write_text(path, dumps(obj))


def write_table(out_dir, stem: str, columns, fmt_name: str = "csv", meta: Mapping | None = None) -> Path:
    """Write a table as ``stem.csv`` (meta in a ``#`` footer) or ``stem.json``."""
    out_dir = Path(out_dir)
    if fmt_name == "json":
        payload = {"columns": list(columns), "rows": rows_from_columns(columns)}
        if meta:
            payload["meta"] = meta
        return write_json(out_dir / f"{stem}.json", payload)
    return write_csv(out_dir / f"{stem}.csv", columns, meta)


def rows_from_columns(columns: Mapping[str, Sequence]) -> list[dict]:
    names = list(columns)
    length = len(columns[names[0]]) if names else 0
    return [{n: columns[n][i] for n in names} for i in range(length)]
