"""Sublinear hit-count experiments: count orbit visits over an N grid and fit the growth exponent."""
from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import Any, Protocol

import numpy as np

from app.diophantine import TorusScalar
from app.expsum import is_diophantine_like, phase_series
from app.setgeom import EpsBall, SemiAlgebraicSet, measure_estimate
from app.skewshift import PolyVector, SkewShiftSystem, TorusPoint, orbit_array
from app.utils.errors import InputError
from app.utils.workers import parallel_map

from .exponents import Mode, regime_check, resolve_mode, selected_exponent, theoretical_delta

logger = logging.getLogger(__name__)

DEFAULT_SLACK = 0.1
DEFAULT_BALL_SCALE = 0.25
MIN_GRID_POINTS = 6
MEASURE_SAMPLES = 200_000


class Target(Protocol):
    def at(self, N: int) -> tuple[EpsBall | SemiAlgebraicSet, float, float, float]:
        """``(set, η, B, ε)`` used at size N; ε is nan for non-ball targets."""


@dataclass(frozen=True)
class FixedTarget:
    """The same set for every N; η is its measure (an upper estimate for general sets)."""

    S: EpsBall | SemiAlgebraicSet
    seed: int = 0
    eta: float | None = None

    def at(self, N: int) -> tuple[EpsBall | SemiAlgebraicSet, float, float, float]:
        if isinstance(self.S, EpsBall):
            return self.S, self.S.measure, float(2 * self.S.b), self.S.eps
        return self.S, self.measure_bound, float(max(1, self.S.degree_bound)), math.nan

    @cached_property
    def measure_bound(self) -> float:
        if self.eta is not None:
            return self.eta
        if isinstance(self.S, EpsBall):
            return self.S.measure
        if not self.S.clauses:
            return 0.0
        estimate = measure_estimate(self.S, MEASURE_SAMPLES, self.seed)
        return min(1.0, estimate.value + 3.0 * estimate.stderr)


@dataclass(frozen=True)
class CoupledBallTarget:
    """Ball of radius ``ball_scale · N^{-δ}`` around ``center`` with ``δ = 1/(τ b ψ(b))``.

    At ``ball_scale = 1`` the ball's measure sits a factor 2^b above the
    regime boundary; the default quarter radius puts it inside.
    """

    center: TorusPoint
    tau: float
    ball_scale: float = DEFAULT_BALL_SCALE

    def at(self, N: int) -> tuple[EpsBall | SemiAlgebraicSet, float, float, float]:
        b = self.center.dim
        eps = min(0.49, self.ball_scale * N ** (-theoretical_delta(b, self.tau)))
        ball = EpsBall(self.center, eps)
        return ball, ball.measure, float(2 * b), eps


@dataclass(frozen=True)
class OrbitSource:
    """Orbit points ``P(n) mod 1`` (or ``f^n x``) for n = 1..N."""

    b: int
    m: int
    leading_diophantine: bool
    vector: PolyVector | None = None
    system: SkewShiftSystem | None = None
    start: TorusPoint | None = None

    @classmethod
    def of_vector(cls, vector: PolyVector) -> OrbitSource:
        leading = all(
            is_diophantine_like_fraction(p.leading) for p in vector.polys if p.degree >= 1
        )
        return cls(vector.dim, vector.max_degree, leading, vector=vector)

    @classmethod
    def of_skew_shift(cls, system: SkewShiftSystem, x: TorusPoint) -> OrbitSource:
        return cls(system.b, system.b, is_diophantine_like(system.omega), system=system, start=x)

    def points(self, N: int) -> np.ndarray:
        if self.system is not None and self.start is not None:
            return orbit_array(self.start, self.system, N)
        assert self.vector is not None
        return np.stack([phase_series(p, N) for p in self.vector.polys], axis=1)


def is_diophantine_like_fraction(value: Any) -> bool:
    return is_diophantine_like(TorusScalar.of(value))


@dataclass
class ExponentReport:
    N_grid: list[int]
    counts: list[int]
    fitted_slope: float
    theoretical_exponent: float
    passed: bool
    slack: float = DEFAULT_SLACK
    mode: str = Mode.AUTO.value
    m: int = 0
    b: int = 0
    tau: float = 0.0
    in_regime: list[bool] = field(default_factory=list)
    etas: list[float] = field(default_factory=list)
    epsilons: list[float] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        payload = asdict(self)
        payload["pass"] = payload.pop("passed")
        return payload

    def rows(self) -> list[tuple[int, int, bool, float, float]]:
        return list(zip(self.N_grid, self.counts, self.in_regime, self.etas, self.epsilons))


def fit_slope(N_grid: Sequence[int], counts: Sequence[int]) -> float:
    """Least-squares slope of ``log max(count, 1)`` against ``log N``."""
    if len(N_grid) < 2:
        raise InputError("a slope needs at least two grid points")
    x = np.log(np.asarray(N_grid, dtype=np.float64))
    y = np.log(np.maximum(np.asarray(counts, dtype=np.float64), 1.0))
    slope, _ = np.polyfit(x, y, 1)
    return float(slope) + 0.0  # no -0.0 in reports


def geometric_grid(lo_exp: int, hi_exp: int, base: int = 2) -> list[int]:
    return [base**e for e in range(lo_exp, hi_exp + 1)]


def run_experiment(
    source: OrbitSource,
    target: Target,
    N_grid: Sequence[int],
    mode: Mode | str = Mode.AUTO,
    tau: float = 2.0,
    slack: float = DEFAULT_SLACK,
    c0: float = 1.0,
    enforce_regime: bool = True,
    workers: int | None = None,
) -> ExponentReport:
    grid = sorted({int(N) for N in N_grid})
    if not grid or grid[0] < 1:
        raise InputError("the N grid must hold positive integers")
    if len(grid) < MIN_GRID_POINTS:
        logger.warning("N grid has %d points; slope fits want at least %d", len(grid), MIN_GRID_POINTS)
    resolved = resolve_mode(mode, source.b)
    exponent = selected_exponent(resolved, source.m, source.b, tau)
    points = source.points(grid[-1])
    target.at(grid[0])  # settles any cached measure before the pool starts

    def one(N: int) -> tuple[int, bool, float, float]:
        S, eta, B, eps = target.at(N)
        count = int(np.count_nonzero(S.contains_array(points[:N])))
        ok = regime_check(B, N, eta, resolved, source.m, tau, c0, source.b)
        return count, ok, eta, eps

    results = parallel_map(one, grid, workers)
    counts = [r[0] for r in results]
    in_regime = [r[1] for r in results]
    flags: list[str] = []
    if not source.leading_diophantine:
        flags.append("non_diophantine_leading")
        logger.warning("orbit frequency is rational to working precision; the theorem hypothesis fails")

    fit_grid, fit_counts = grid, counts
    passed_regime = True
    if enforce_regime:
        kept = [(N, c) for N, c, ok in zip(grid, counts, in_regime) if ok]
        dropped = len(grid) - len(kept)
        if dropped:
            flags.append(f"regime_dropped={dropped}")
            logger.warning("%d of %d grid sizes fall outside the measure regime", dropped, len(grid))
        if len(kept) >= 2:
            fit_grid, fit_counts = [N for N, _ in kept], [c for _, c in kept]
        else:
            flags.append("regime_violated")
            passed_regime = False

    slope = fit_slope(fit_grid, fit_counts)
    passed = passed_regime and slope <= exponent + slack and source.leading_diophantine
    logger.info("fitted slope %.4f vs exponent %.4f + %.2f -> %s", slope, exponent, slack, passed)
    return ExponentReport(
        N_grid=grid,
        counts=counts,
        fitted_slope=slope,
        theoretical_exponent=exponent,
        passed=passed,
        slack=slack,
        mode=resolved.value,
        m=source.m,
        b=source.b,
        tau=tau,
        in_regime=in_regime,
        etas=[r[2] for r in results],
        epsilons=[r[3] for r in results],
        flags=flags,
    )
