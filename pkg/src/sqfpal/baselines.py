"""Frozen regression constants for checks whose true constants are unknown.

The file maps ``check_id -> {"constant": float, "grid_hash": str, ...}``.  A
regression check refuses to run when its entry is missing or was recorded on a
different grid.
"""

from __future__ import annotations

import hashlib
import json
import math
from importlib import resources
from pathlib import Path
from typing import Any

DEFAULT_PATH = Path(str(resources.files("sqfpal") / "data" / "baselines.json"))


class BaselineError(RuntimeError):
    pass


def grid_hash(grid: Any) -> str:
    blob = json.dumps(grid, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def freeze(value: float, down: bool = False) -> float:
    """Round a measured maximum up (a minimum down, with ``down``) to 10 significant digits.

    This keeps the stored ceiling stable under last-bit differences between
    FFT/BLAS builds while staying within 1e-9 relative of the measurement.
    """
    if value <= 0 or not math.isfinite(value):
        return value
    exp = math.floor(math.log10(value)) - 9
    step = math.floor if down else math.ceil
    # via the decimal string so the stored constant prints cleanly
    return float(f"{step(value / 10.0**exp)}e{exp}")


def load(path: Path | str | None = None) -> dict[str, dict[str, Any]]:
    p = Path(path) if path is not None else DEFAULT_PATH
    try:
        with open(p) as fh:
            return json.load(fh)
    except FileNotFoundError:
        return {}


def save(data: dict[str, dict[str, Any]], path: Path | str | None = None) -> None:
    p = Path(path) if path is not None else DEFAULT_PATH
    with open(p, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def entry(check_id: str, grid: Any, path: Path | str | None = None) -> dict[str, Any]:
    data = load(path)
    if check_id not in data:
        raise BaselineError(f"no baseline recorded for {check_id!r}; run `sqfpal baseline`")
    rec = data[check_id]
    h = grid_hash(grid)
    if rec.get("grid_hash") != h:
        raise BaselineError(
            f"baseline for {check_id!r} was recorded on grid {rec.get('grid_hash')}, current grid is {h}"
        )
    return rec


def constant(check_id: str, grid: Any, path: Path | str | None = None) -> float:
    return float(entry(check_id, grid, path)["constant"])


def diff(old: dict[str, dict[str, Any]], new: dict[str, dict[str, Any]]) -> list[str]:
    lines = []
    for key in sorted(set(old) | set(new)):
        a, b = old.get(key), new.get(key)
        if a == b:
            continue
        if a is None:
            lines.append(f"+ {key}: {b}")
        elif b is None:
            lines.append(f"- {key}: {a}")
        else:
            lines.append(f"~ {key}: {a} -> {b}")
    return lines
