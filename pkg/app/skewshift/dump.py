"""Orbit dump: CSV with columns n, x_1, ..., x_b."""
from __future__ import annotations

import csv
from collections.abc import Mapping
from pathlib import Path

import numpy as np

from app.utils.errors import InputError
from app.utils.storage import write_csv

from .dynamics import orbit_array
from .types import SkewShiftSystem, TorusPoint

ORBIT_DIGITS = 10


def write_orbit_csv(
    path: Path,
    x: TorusPoint,
    sys: SkewShiftSystem,
    N: int,
    header: Mapping[str, object] | None = None,
) -> Path:
    points = orbit_array(x, sys, N)
    columns = ["n", *(f"x_{i}" for i in range(1, sys.b + 1))]
    rows = ([n, *row] for n, row in enumerate(points.tolist(), start=1))
    write_csv(Path(path), dict(header or {}), columns, rows, digits=ORBIT_DIGITS)
    return Path(path)


def read_orbit_csv(path: Path) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(n, points)`` from an orbit dump; ``#`` header lines are skipped."""
    with Path(path).open(encoding="utf-8", newline="") as handle:
        lines = [line for line in handle if line.strip() and not line.startswith("#")]
    reader = csv.reader(lines)
    columns = next(reader, None)
    if not columns or columns[0] != "n":
        raise InputError(f"{path} is not an orbit dump (missing 'n' column)")
    try:
        rows = [[float(v) for v in row] for row in reader]
    except ValueError as exc:
        raise InputError(f"malformed orbit dump {path}: {exc}") from exc
    data = np.asarray(rows, dtype=np.float64).reshape(-1, len(columns))
    return data[:, 0].astype(np.int64), data[:, 1:]
