"""Grid covers of semi-algebraic sets by ε-balls and Monte-Carlo measure."""
from __future__ import annotations

import itertools
import math
from typing import NamedTuple

import numpy as np

from app.skewshift import TorusPoint
from app.utils.errors import InputError, check_size
from app.utils.workers import parallel_map

from .types import SIGN_TOL, EpsBall, SemiAlgebraicSet

MAX_COVER_DIM = 3
MIN_COVER_EPS = 1e-3
MAX_COVER_SAMPLES = 5e7
MIN_MEASURE_SAMPLES = 1000
_MC_CHUNK = 1 << 16


def _cell_marks(S: SemiAlgebraicSet, n: int) -> np.ndarray:
    """Cells of the n^b grid whose closure may meet S.

    Samples sit on the half-cell lattice, so every point of a cell lies within
    h/4 (sup norm) of a sample in that cell; each constraint is relaxed by its
    Lipschitz bound times h/4.
    """
    b = S.b
    axis = np.arange(2 * n + 1, dtype=np.float64) / (2 * n)
    grid = np.stack(np.meshgrid(*[axis] * b, indexing="ij"), axis=-1).reshape(-1, b)
    h = 1.0 / n
    passed = np.zeros(grid.shape[0], dtype=bool)
    for clause in S.clauses:
        ok = np.ones(grid.shape[0], dtype=bool)
        for constraint in clause:
            ok &= constraint.holds(grid, constraint.lipschitz * h / 4 + SIGN_TOL)
        passed |= ok
    passed = passed.reshape((2 * n + 1,) * b)
    marks = np.zeros((n,) * b, dtype=bool)
    for offsets in itertools.product(range(3), repeat=b):
        marks |= passed[tuple(slice(o, o + 2 * n, 2) for o in offsets)]
    return marks


def grid_cover(S: SemiAlgebraicSet, eps: float) -> list[EpsBall]:
    """ε-balls centred on the cells (side ≤ ε) that may meet S."""
    if S.b > MAX_COVER_DIM:
        raise InputError(f"grid covers are limited to b ≤ {MAX_COVER_DIM}, got {S.b}")
    if not MIN_COVER_EPS <= eps < 0.5:
        raise InputError(f"grid covers need {MIN_COVER_EPS} ≤ ε < 1/2, got {eps}")
    if not S.clauses:
        return []
    n = math.ceil(1.0 / eps - 1e-9)
    check_size("grid cover samples", float(2 * n + 1) ** S.b, MAX_COVER_SAMPLES)
    marks = _cell_marks(S, n)
    cells = np.argwhere(marks)
    return [EpsBall(TorusPoint.of(((idx + 0.5) / n).tolist()), eps) for idx in cells]


class MeasureEstimate(NamedTuple):
    value: float
    stderr: float
    samples: int


def _chunk_hits(args: tuple[SemiAlgebraicSet | EpsBall, np.random.SeedSequence, int]) -> int:
    S, seq, size = args
    rng = np.random.Generator(np.random.Philox(seq))
    return int(np.count_nonzero(S.contains_array(rng.random((size, S.b)))))


def measure_estimate(
    S: SemiAlgebraicSet | EpsBall,
    samples: int,
    seed: int,
    workers: int | None = None,
) -> MeasureEstimate:
    """Monte-Carlo Lebesgue measure; one Philox stream per chunk of samples."""
    if samples < MIN_MEASURE_SAMPLES:
        raise InputError(f"need at least {MIN_MEASURE_SAMPLES} samples, got {samples}")
    sizes = [min(_MC_CHUNK, samples - start) for start in range(0, samples, _MC_CHUNK)]
    streams = np.random.SeedSequence(seed).spawn(len(sizes))
    hits = sum(parallel_map(_chunk_hits, [(S, s, size) for s, size in zip(streams, sizes)], workers))
    p = hits / samples
    return MeasureEstimate(p, math.sqrt(p * (1.0 - p) / samples), samples)
