"""Exponential sums ``S = Σ_{n=1}^{N} e(P(n))`` over polynomial phases."""
from __future__ import annotations

import math
from collections.abc import Sequence
from typing import NamedTuple

import numpy as np

from app.diophantine import torus_norm
from app.skewshift import PolyVector, RealPolynomial
from app.utils.errors import InputError

from .phase import phase_series

_CHUNK = 1 << 18


class ExpSumResult(NamedTuple):
    value: complex
    N: int
    magnitude: float

    @classmethod
    def of(cls, value: complex, N: int) -> ExpSumResult:
        # |S| ≤ N; clip the last-bit excess of an exactly aligned sum.
        return cls(value, N, min(abs(value), float(N)))


def exp_sum(P: RealPolynomial, N: int, start: int = 1) -> ExpSumResult:
    """Ascending-n sum with compensated (``math.fsum``) accumulation of both parts."""
    if N < 1:
        raise InputError("N must be at least 1")
    real: list[float] = []
    imag: list[float] = []
    for offset in range(0, N, _CHUNK):
        count = min(_CHUNK, N - offset)
        angles = 2.0 * np.pi * phase_series(P, count, start + offset)
        real.append(math.fsum(np.cos(angles).tolist()))
        imag.append(math.fsum(np.sin(angles).tolist()))
    return ExpSumResult.of(complex(math.fsum(real), math.fsum(imag)), N)


def vector_exp_sum(k: Sequence[int], P: PolyVector, N: int) -> ExpSumResult:
    """Sum with phase ``<k, P(n)>``, i.e. ``exp_sum`` of ``Σ k_i P_i``."""
    return exp_sum(P.combine(k), N)


def geometric_sum_bound(theta: float, N: int) -> float:
    """``min(N, 1/(2‖θ‖))``, a bound for ``|Σ_{n=1}^{N} e(nθ)|``."""
    if N < 1:
        raise InputError("N must be at least 1")
    norm = torus_norm(theta)
    return float(N) if norm == 0.0 else min(float(N), 1.0 / (2.0 * norm))
