"""CSV / JSON trace files with lossless float round-trips and atomic writes."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path

from .families import FamilyTrace

COLUMNS = ("param", "a", "b", "c", "r12", "r13", "r14", "r23", "r24", "r34", "m2", "m3", "m4", "lambda", "class")
FLOAT_COLUMNS = COLUMNS[:-1]


class MalformedTrace(ValueError):
    pass


def fmt(x: float) -> str:
    """17 significant digits: enough to read back the identical double."""
    return format(float(x), ".17g")


def trace_rows(trace: FamilyTrace, classify=None) -> list[dict]:
    rows = []
    for s in trace.samples:
        r = s.distances
        shape = classify(s.config) if classify else s.shape
        rows.append({
            "param": s.param, "a": s.config.a, "b": s.config.b, "c": s.config.c,
            "r12": r.r12, "r13": r.r13, "r14": r.r14, "r23": r.r23, "r24": r.r24, "r34": r.r34,
            "m2": s.masses.m2, "m3": s.masses.m3, "m4": s.masses.m4, "lambda": s.masses.lam,
            "class": getattr(shape, "value", str(shape)),
        })
    return rows


def atomic_write_text(path: str | os.PathLike, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for row in rows:
        w.writerow([fmt(row[k]) if k in FLOAT_COLUMNS else row[k] for k in COLUMNS])
    return buf.getvalue()


def rows_to_json(rows: list[dict], family: str = "") -> str:
    def clean(v):
        return None if isinstance(v, float) and not math.isfinite(v) else v

    return json.dumps(
        {"family": family, "columns": list(COLUMNS), "rows": [[clean(r[k]) for k in COLUMNS] for r in rows]},
        indent=1,
    )


def write_rows(path: str | os.PathLike, rows: list[dict], fmt_name: str = "csv", family: str = "") -> None:
    if fmt_name == "csv":
        atomic_write_text(path, rows_to_csv(rows))
    elif fmt_name == "json":
        atomic_write_text(path, rows_to_json(rows, family))
    else:
        raise ValueError(f"unknown format {fmt_name!r}")


def read_rows(path: str | os.PathLike) -> list[dict]:
    """Parse a trace written by ``write_rows`` (format from content)."""
    text = Path(path).read_text()
    stripped = text.lstrip()
    if not stripped:
        raise MalformedTrace(f"{path}: empty file")
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
            cols = doc["columns"]
            raw = [dict(zip(cols, row)) for row in doc["rows"]]
        except (ValueError, KeyError, TypeError) as exc:
            raise MalformedTrace(f"{path}: {exc}") from exc
    else:
        reader = csv.DictReader(io.StringIO(text))
        if reader.fieldnames is None or tuple(reader.fieldnames) != COLUMNS:
            raise MalformedTrace(f"{path}: header {reader.fieldnames} != {list(COLUMNS)}")
        raw = list(reader)
    rows = []
    for i, row in enumerate(raw):
        try:
            out = {k: (math.nan if row[k] is None else float(row[k])) for k in FLOAT_COLUMNS}
            out["class"] = str(row["class"])
        except (KeyError, ValueError, TypeError) as exc:
            raise MalformedTrace(f"{path}: row {i}: {exc}") from exc
        rows.append(out)
    return rows
