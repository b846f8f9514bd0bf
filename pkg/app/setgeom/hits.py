"""Orbit hit counts and the Fejér bound on visits to an ε-ball."""
from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Iterable
from typing import Protocol

import numpy as np

from app.expsum import lattice_shells
from app.skewshift import TorusPoint
from app.utils.errors import InputError, check_size
from app.utils.workers import parallel_map

from .kernel import ball_majorant, fejer_radius
from .types import EpsBall, HitReport, SemiAlgebraicSet

logger = logging.getLogger(__name__)

MAX_FEJER_WORK = 5e9
# Rows x points per exponential block.
_BLOCK_CELLS = 1 << 22


class Target(Protocol):
    def contains_array(self, points: np.ndarray) -> np.ndarray: ...


def contains(S: SemiAlgebraicSet | EpsBall, x: TorusPoint) -> bool:
    if x.dim != S.b:
        raise InputError(f"point has dimension {x.dim}, target has b={S.b}")
    return bool(S.contains_array([x])[0])


def _first_points(orbit: Iterable[TorusPoint] | np.ndarray, N: int) -> np.ndarray:
    if isinstance(orbit, np.ndarray):
        points = np.atleast_2d(orbit)[:N]
    else:
        points = np.array([p.coords for p in itertools.islice(orbit, N)], dtype=np.float64)
    if points.shape[0] < N:
        raise InputError(f"orbit yielded {points.shape[0]} points, {N} requested")
    return points


def hit_count(
    orbit: Iterable[TorusPoint] | np.ndarray,
    S: Target,
    N: int,
    bound: float = math.nan,
) -> HitReport:
    """Count the first N orbit points inside S."""
    if N < 1:
        raise InputError("N must be at least 1")
    points = _first_points(orbit, N)
    count = int(np.count_nonzero(S.contains_array(points)))
    return HitReport.of(N, count, bound)


def _recentered(points: np.ndarray, center: TorusPoint | None) -> np.ndarray:
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if center is not None:
        points = points - np.asarray(center.coords)
    return points - np.floor(points)


def _block_magnitudes(args: tuple[np.ndarray, np.ndarray]) -> float:
    ks, points = args
    # Exact integer k times float coordinates; only the fractional part matters.
    magnitudes = []
    step = max(1, _BLOCK_CELLS // max(1, points.shape[0]))
    for start in range(0, ks.shape[0], step):
        phases = ks[start : start + step].astype(np.float64) @ points.T
        phases -= np.floor(phases)
        sums = np.exp(2j * np.pi * phases).sum(axis=1)
        magnitudes.extend(np.abs(sums).tolist())
    return math.fsum(magnitudes)


def fourier_mass(points: np.ndarray, R: int, workers: int | None = None) -> float:
    """``Σ_{‖k‖_∞<R} |Σ_n e(<k, x_n>)|``, one task per lattice-shell block, reduced in order."""
    b = points.shape[1]
    tasks = [(block, points) for shell in lattice_shells(R, b) for block in shell.blocks()]
    return math.fsum(parallel_map(_block_magnitudes, tasks, workers))


def fejer_bound(
    points: np.ndarray | Iterable[TorusPoint],
    eps: float,
    center: TorusPoint | None = None,
    workers: int | None = None,
) -> float:
    """``2^b R^{-b} Σ_{‖k‖<R} |Σ_n e(<k, x_n - c>)|`` with ``R = floor(ε^{-1}/10)``.

    Dominates the number of points in the sup-norm ε-ball around ``center``.
    """
    R = fejer_radius(eps)
    if not isinstance(points, np.ndarray):
        points = np.array([p.coords for p in points], dtype=np.float64)
    shifted = _recentered(points, center)
    N, b = shifted.shape
    check_size("Fejér sum", float(2 * R - 1) ** b * N, MAX_FEJER_WORK)
    bound = (2.0 / R) ** b * fourier_mass(shifted, R, workers)
    logger.debug("Fejér bound: b=%d N=%d R=%d -> %.6g", b, N, R, bound)
    return bound


def majorant_count(points: np.ndarray, eps: float, center: TorusPoint | None = None) -> float:
    """``Σ_n 2^b R^{-b} Π_j F(x_{n,j} - c_j)``: between the hit count and ``fejer_bound``."""
    return math.fsum(ball_majorant(_recentered(points, center), eps).tolist())


def ball_hit_report(
    points: np.ndarray,
    ball: EpsBall,
    workers: int | None = None,
) -> HitReport:
    bound = fejer_bound(points, ball.eps, ball.center, workers)
    return hit_count(points, ball, points.shape[0], bound)
