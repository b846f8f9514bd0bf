"""Moment series CSV: columns T, value, p, averaged."""
from __future__ import annotations

from collections.abc import Mapping
from pathlib import Path

from app.utils.storage import write_csv

from .types import MomentSeries

MOMENT_COLUMNS = ("T", "value", "p", "averaged", "boundary_mass")


def write_moment_csv(path: Path, series: MomentSeries, header: Mapping[str, object] | None = None) -> Path:
    masses = series.boundary_mass or (float("nan"),) * len(series.values)
    rows = ([*row, mass] for row, mass in zip(series.rows(), masses))
    write_csv(Path(path), dict(header or {}), MOMENT_COLUMNS, rows)
    return Path(path)
