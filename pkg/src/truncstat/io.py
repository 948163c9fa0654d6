"""Dataset ingestion and report serialisation."""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .errors import BadHeader, BadNumber, EmptySample, FileNotFound, TruncationViolated
from .sample import TruncatedSample

__all__ = ["parse_csv", "parse_table", "dumps_report", "loads_report",
           "estimate_report", "holes_report"]


def _read_rows(path, header):
    path = Path(path)
    if not path.is_file():
        raise FileNotFound(path)
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    rows = [r for r in rows if any(cell.strip() for cell in r)]
    if not rows or [c.strip().lower() for c in rows[0]] != list(header):
        raise BadHeader(",".join(rows[0]) if rows else "")
    return rows[1:]


def _number(text, row, column):
    try:
        v = float(text)
    except ValueError:
        raise BadNumber(row, column) from None
    if not math.isfinite(v):
        raise BadNumber(row, column)
    return v


def parse_csv(path) -> TruncatedSample:
    """Read a two-column ``x,y`` file into a sample.

    Rows are numbered from 1 after the header in every error.
    """
    body = _read_rows(path, ("x", "y"))
    if not body:
        raise EmptySample()
    xs, ys = [], []
    for i, r in enumerate(body, start=1):
        if len(r) != 2:
            raise BadNumber(i, "x" if not r else "y")
        xs.append(_number(r[0], i, "x"))
        ys.append(_number(r[1], i, "y"))
    x, y = np.array(xs), np.array(ys)
    bad = np.flatnonzero(y > x)
    if bad.size:
        raise TruncationViolated((bad + 1).tolist())
    return TruncatedSample(x, y)


def parse_table(path) -> dict:
    """Read a tabulated score from an ``x,phi`` file."""
    body = _read_rows(path, ("x", "phi"))
    table = {}
    for i, r in enumerate(body, start=1):
        if len(r) != 2:
            raise BadNumber(i, "phi")
        table[_number(r[0], i, "x")] = _number(r[1], i, "phi")
    return table


# reports: JSON with fixed key order and 17 significant digits

def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        vals = [_encode(v, indent, level + 1) for v in list(obj)]
        return "[" + ", ".join(vals) + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if not math.isfinite(v):
            return "null"
        text = format(v, ".17g")
        if not any(ch in text for ch in ".eEn"):
            text += ".0"
        return text
    return json.dumps(obj)


def dumps_report(report: dict) -> str:
    return _encode(report, 2, 0) + "\n"


def loads_report(text: str) -> dict:
    return json.loads(text)


def holes_report(holes) -> dict:
    return {
        "inner_hole_indices": list(holes.inner_hole_indices),
        "first_inner_hole": holes.first_inner_hole,
        "zeroed_mass_points": list(holes.zeroed_mass_points),
        "zeroed_confirmed": holes.zeroed_confirmed,
    }


def estimate_report(sample, est, mod=None) -> dict:
    """Structured report of a fitted estimate, including the input data."""
    out = {
        "kind": "estimate",
        "n": est.n,
        "m": est.m,
        "points": est.points,
        "multiplicity": est.mult,
        "risk_count": est.risk,
        "weights": est.weights,
        "cdf": est.cdf,
        "hazard": est.hazard,
        "holes": holes_report(est.holes),
    }
    if mod is not None:
        out["modified_weights"] = mod.weights
    out["data"] = {"x": sample.x, "y": sample.y}
    return out
