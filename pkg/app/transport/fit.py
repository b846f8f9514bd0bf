"""Growth fits for moment series, plus the free-lattice Bessel solution used as an oracle."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import jv

from app.utils.errors import InputError

from .evolution import BOUNDARY_MASS_TOL
from .types import MomentSeries

logger = logging.getLogger(__name__)

MIN_FIT_POINTS = 6


class GrowthModel(str, Enum):
    POLY = "poly"
    LOGLOG = "loglog"

    @classmethod
    def parse(cls, text: str) -> GrowthModel:
        try:
            return cls(str(text).strip().lower())
        except ValueError:
            raise InputError(f"unknown growth model {text!r} (expected poly or loglog)") from None


@dataclass(frozen=True)
class GrowthFit:
    slope: float
    intercept: float
    residual: float
    model: GrowthModel
    window: tuple[float, float]
    points: int
    truncated: bool

    def to_json(self) -> dict[str, object]:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "residual": self.residual,
            "model": self.model.value,
            "window": list(self.window),
            "points": self.points,
            "truncated": self.truncated,
        }


def growth_fit(series: MomentSeries, model: GrowthModel | str = GrowthModel.POLY) -> GrowthFit:
    """Slope of ``log value`` against ``log T`` (poly) or ``log log T`` (loglog).

    The window ends before the first time whose boundary mass exceeds the
    truncation tolerance; ``truncated`` records that the box was reached.
    """
    model = GrowthModel.parse(model) if not isinstance(model, GrowthModel) else model
    T = np.asarray(series.T_grid, dtype=np.float64)
    values = np.asarray(series.values, dtype=np.float64)
    keep = np.ones(T.shape, dtype=bool)
    truncated = False
    if series.boundary_mass:
        saturated = np.flatnonzero(np.asarray(series.boundary_mass) > BOUNDARY_MASS_TOL)
        if saturated.size:
            keep[saturated[0] :] = False
            truncated = True
    keep &= values > 0
    keep &= T > (1.0 if model is GrowthModel.LOGLOG else 0.0)
    if keep.sum() < MIN_FIT_POINTS:
        raise InputError(
            f"growth fit needs at least {MIN_FIT_POINTS} usable points before saturation, got {int(keep.sum())}"
        )
    x = np.log(T[keep])
    if model is GrowthModel.LOGLOG:
        x = np.log(x)
    y = np.log(values[keep])
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    if truncated:
        logger.info("growth fit window truncated at T=%g by boundary mass", T[keep][-1])
    return GrowthFit(
        float(slope) + 0.0,
        float(intercept) + 0.0,
        residual,
        model,
        (float(T[keep][0]), float(T[keep][-1])),
        int(keep.sum()),
        truncated,
    )


def free_lattice_oracle(t: float, L: int) -> np.ndarray:
    """``e^{-itΔ} δ_0`` for nearest-neighbour hopping on Z: ``ψ_n = (-i)^{|n|} J_{|n|}(2t)``, n = -L..L."""
    if L < 0:
        raise InputError("L must be non-negative")
    n = np.abs(np.arange(-L, L + 1))
    return (-1j) ** n * jv(n, 2.0 * t)


def free_moment_oracle(t: float, p: float, L: int) -> float:
    """``Σ_{|n|≤L} |n|^p J_{|n|}(2t)²``; tends to ``2t²`` for p = 2 once L ≫ 2t."""
    n = np.abs(np.arange(-L, L + 1)).astype(np.float64)
    return math.fsum(n**p * jv(n, 2.0 * t) ** 2)
