"""Deterministic JSON/CSV output.

Floats are written with 17 significant digits and keys in insertion order,
so equal inputs always produce byte-identical files.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    s = format(x, ".17g")
    if "." not in s and "e" not in s and "n" not in s:
        s += ".0"
    return s


def dumps(obj, indent: int = 1, _level: int = 0) -> str:
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent, _level + 1) for v in obj) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def write_json(path, obj) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(obj) + "\n")
    return path


def write_records(out_dir, records, timing: bool = False) -> tuple[Path, Path]:
    """``records.json`` plus a flat ``records.csv``.

    Wall-clock data goes to ``timings.json`` only when ``timing`` is set so the
    seeded outputs stay reproducible.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    jpath = write_json(out / "records.json", [r.to_dict() for r in records])
    cpath = out / "records.csv"
    with cpath.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["run_index", "seed", "method", "alpha", "selected_layout", "power_kW", "qubo_value", "evaluations"])
        for r in records:
            w.writerow(
                [
                    r.run_index,
                    r.seed,
                    r.method,
                    _fmt_float(r.alpha),
                    r.selected_layout or "",
                    "" if r.power_kW is None else _fmt_float(r.power_kW),
                    "" if r.qubo_value is None else _fmt_float(r.qubo_value),
                    len(r.objective_history),
                ]
            )
    if timing:
        write_json(
            out / "timings.json",
            [
                {"run_index": r.run_index, "wall_time_seconds": r.wall_time_seconds, "iteration_times": r.iteration_times}
                for r in records
            ],
        )
    return jpath, cpath


def write_heatmap_csv(path, matrix) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        for row in np.asarray(matrix):
            w.writerow([_fmt_float(float(v)) for v in row])
    return path


def read_powers(path) -> list[float | None]:
    """Powers from a ``records.json``, a JSON list of numbers, or a one-column CSV."""
    path = Path(path)
    if path.suffix == ".csv":
        with path.open() as fh:
            rows = list(csv.reader(fh))
        if rows and "power_kW" in rows[0]:
            col = rows[0].index("power_kW")
            return [float(r[col]) if r[col] else None for r in rows[1:]]
        return [float(r[0]) for r in rows if r and r[0].strip()]
    doc = json.loads(path.read_text())
    if isinstance(doc, dict):
        for key in ("powers", "initial_36", "values"):
            if key in doc:
                doc = doc[key]
                break
        else:
            raise ValueError(f"no power list found in {path}")
    return [d.get("power_kW") if isinstance(d, dict) else float(d) for d in doc]
