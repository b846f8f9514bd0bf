"""Exact solution counts of Vinogradov systems by power-sum multiplicities.

``J_b(N; ρ)`` counts pairs of ρ-tuples in [1, N] with equal power sums
``s_1..s_b``. Grouping tuples by their power-sum vector turns the count into
``Σ mult(key)^2``; shifted counts join the same map against itself.
"""
from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from itertools import product

import numpy as np

from app.utils.errors import InputError, check_size
from app.utils.workers import parallel_map

from .types import PowerSumKey, VinogradovCount

logger = logging.getLogger(__name__)

MAX_TUPLES = 10**7
# Keys are int64; every power sum must stay clear of overflow.
_KEY_LIMIT = 1 << 62


def _check_args(N: int, b: int, rho: int) -> None:
    if N < 1 or b < 1 or rho < 1:
        raise InputError(f"N, b and rho must be positive (got N={N}, b={b}, rho={rho})")


@dataclass(frozen=True)
class MultiplicityMap:
    """Distinct power-sum vectors of all ρ-tuples in [1, top] and how often each occurs."""

    keys: np.ndarray
    counts: np.ndarray

    def collisions(self) -> int:
        """``Σ mult^2``; bounded by ``top^{2ρ} ≤ 10^14``, so int64 is exact."""
        return int(np.dot(self.counts, self.counts))

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return {tuple(k): int(c) for k, c in zip(self.keys.tolist(), self.counts.tolist())}

    def shifted_overlap(self, h: int) -> int:
        """``Σ_key mult(key) · mult(key - h e_last)``."""
        if h == 0:
            return self.collisions()
        table = self.as_dict()
        total = 0
        for key, count in table.items():
            partner = (*key[:-1], key[-1] - h)
            total += count * table.get(partner, 0)
        return total


def _leading_chunk(args: tuple[int, int, int, Sequence[int]]) -> tuple[np.ndarray, np.ndarray]:
    first, top, rho, degrees = args
    values = np.arange(1, top + 1, dtype=np.int64)
    powers = np.stack([values**j for j in degrees], axis=1)
    keys = np.array([[first**j for j in degrees]], dtype=np.int64)
    for _ in range(rho - 1):
        keys = (keys[:, None, :] + powers[None, :, :]).reshape(-1, len(degrees))
    return np.unique(keys, axis=0, return_counts=True)


def multiplicity_map(
    top: int,
    rho: int,
    degrees: Sequence[int],
    workers: int | None = None,
) -> MultiplicityMap:
    """Power-sum multiplicities over [1, top]^ρ, enumerated one leading variable at a time."""
    check_size(f"tuples in [1,{top}]^{rho}", float(top) ** rho, MAX_TUPLES)
    if rho * top ** max(degrees) >= _KEY_LIMIT:
        raise InputError(f"power sums of degree {max(degrees)} over [1,{top}] overflow 64-bit keys")
    parts = parallel_map(_leading_chunk, [(first, top, rho, tuple(degrees)) for first in range(1, top + 1)], workers)
    keys = np.concatenate([k for k, _ in parts])
    counts = np.concatenate([c for _, c in parts])
    merged, inverse = np.unique(keys, axis=0, return_inverse=True)
    totals = np.zeros(len(merged), dtype=np.int64)
    np.add.at(totals, inverse.ravel(), counts)
    return MultiplicityMap(merged, totals)


def vinogradov_count(N: int, b: int, rho: int, workers: int | None = None) -> VinogradovCount:
    _check_args(N, b, rho)
    table = multiplicity_map(N, rho, range(1, b + 1), workers)
    count = VinogradovCount(b, rho, N, table.collisions())
    logger.debug("J_%d(%d; %d) = %d", b, N, rho, count.J)
    return count


def naive_vinogradov_count(N: int, b: int, rho: int) -> int:
    """Double loop over all pairs of tuples (reference count for small instances)."""
    _check_args(N, b, rho)
    check_size(f"pairs over [1,{N}]^{2 * rho}", float(N) ** (2 * rho), MAX_TUPLES)
    keys = [PowerSumKey.of(ns, b) for ns in product(range(1, N + 1), repeat=rho)]
    return sum(1 for m in keys for n in keys if m == n)


def bdg_ratio(count: VinogradovCount, epsilon: float) -> float:
    """``J / (N^{ρ+ε} + N^{2ρ - b(b+1)/2 + ε})``."""
    if epsilon <= 0:
        raise InputError("epsilon must be positive")
    N, b, rho = count.N, count.b, count.rho
    denom = N ** (rho + epsilon) + N ** (2 * rho - b * (b + 1) / 2 + epsilon)
    return count.J / denom


def shifted_count_R2(N: int, b: int, rho: int, h: int, workers: int | None = None) -> int:
    """Solutions in [1, 3N] of ``s_j(m) = s_j(n)`` for j ≤ b-2 and ``s_{b-1}(m) = h + s_{b-1}(n)``."""
    _check_args(N, b, rho)
    if b < 2:
        raise InputError("the shifted count needs b ≥ 2")
    table = multiplicity_map(3 * N, rho, range(1, b), workers)
    return table.shifted_overlap(h)


def shifted_counts_R2(N: int, b: int, rho: int, hs: Sequence[int], workers: int | None = None) -> dict[int, int]:
    """``R_2(h)`` for several shifts from one multiplicity map."""
    _check_args(N, b, rho)
    if b < 2:
        raise InputError("the shifted count needs b ≥ 2")
    table = multiplicity_map(3 * N, rho, range(1, b), workers)
    return {h: table.shifted_overlap(h) for h in hs}


def max_shift(N: int, b: int, rho: int) -> int:
    """Largest |h| in the shifted-count sum: ``2ρ b N^{b-1}``."""
    return 2 * rho * b * N ** (b - 1)


def leading_exponent(b: int) -> int:
    return math.comb(b - 1, 2) - 1
