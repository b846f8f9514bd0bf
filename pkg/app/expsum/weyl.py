"""Weyl differencing: direct evaluation of the right-hand side and empirical ratios.

For ``P`` of degree b with leading coefficient α_b,

    |S|^{2^{b-1}} ≲ N^{2^{b-1}-1} + N^{2^{b-1}-b} Σ_{h_1..h_{b-1}=1}^{N} min(N, 1/‖b! h_1⋯h_{b-1} α_b‖)

The implicit constant is set to 1; ratios are recorded, never asserted.
"""
from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from functools import reduce
from typing import NamedTuple

import numpy as np

from app.diophantine import MAX_DEPTH, TorusScalar, as_scalar, continued_fraction
from app.skewshift import RealPolynomial
from app.utils.errors import InputError, check_size
from app.utils.fixedpoint import norms_of_multiples, to_word
from app.utils.workers import parallel_map

from .phase import MAX_PHASE_DEGREE
from .sums import exp_sum

logger = logging.getLogger(__name__)

# N^{b-1} terms, and N itself: N ≤ 4096 at b = 2, N ≤ 256 at b = 3.
MAX_WEYL_TERMS = 1 << 16
MAX_WEYL_N = 4096


class RatioRow(NamedTuple):
    N: int
    magnitude: float
    rhs: float
    ratio: float
    diophantine: bool = True


def _products(b: int, N: int) -> tuple[np.ndarray, np.ndarray]:
    """Distinct values of ``b!·h_1⋯h_{b-1}`` over [1, N]^{b-1}, with multiplicities."""
    h = np.arange(1, N + 1, dtype=np.int64)
    grid = reduce(np.multiply.outer, [h] * (b - 1)).ravel() * math.factorial(b)
    return np.unique(grid, return_counts=True)


def weyl_rhs(alpha_b: object, b: int, N: int, drop_leading: bool = False) -> float:
    if b < 2:
        raise InputError(f"Weyl differencing needs degree b ≥ 2, got {b}")
    if b > MAX_PHASE_DEGREE:
        raise InputError(f"degree b={b} exceeds {MAX_PHASE_DEGREE}")
    if N < 1:
        raise InputError("N must be at least 1")
    check_size(f"Weyl sum (b={b}, N={N})", N, MAX_WEYL_N)
    check_size(f"Weyl sum (b={b}, N={N})", float(N) ** (b - 1), MAX_WEYL_TERMS)
    alpha = as_scalar(alpha_b)
    values, counts = _products(b, N)
    with np.errstate(divide="ignore"):
        terms = np.minimum(float(N), 1.0 / norms_of_multiples(alpha.word, values))
    inner = math.fsum((terms * counts).tolist())
    power = 2 ** (b - 1)
    rest = float(N) ** (power - b) * inner
    return rest if drop_leading else float(N) ** (power - 1) + rest


def is_diophantine_like(alpha: TorusScalar) -> bool:
    """False when α is rational to working precision (its continued fraction terminates)."""
    if alpha.word == 0:
        return False
    convergents = continued_fraction(alpha, MAX_DEPTH)
    return not (convergents and convergents[-1].exact)


def _weyl_parts(P: RealPolynomial) -> tuple[int, TorusScalar]:
    b = max(2, P.degree)
    alpha_b = P.coeffs[b] if b < len(P.coeffs) else 0
    return b, TorusScalar(to_word(alpha_b))


def weyl_row(P: RealPolynomial, N: int) -> RatioRow:
    b, alpha_b = _weyl_parts(P)
    rhs = weyl_rhs(alpha_b, b, N)
    magnitude = exp_sum(P, N).magnitude
    diophantine = is_diophantine_like(alpha_b)
    if not diophantine:
        logger.warning("leading coefficient %s is rational; the Weyl ratio is not a Diophantine check", alpha_b)
    return RatioRow(N, magnitude, rhs, magnitude ** (2 ** (b - 1)) / rhs, diophantine)


def weyl_ratio(P: RealPolynomial, N: int) -> float:
    """``|S|^{2^{b-1}} / weyl_rhs`` with the implicit constant set to 1."""
    return weyl_row(P, N).ratio


def weyl_sweep(P: RealPolynomial, Ns: Sequence[int], workers: int | None = None) -> list[RatioRow]:
    return parallel_map(lambda N: weyl_row(P, N), list(Ns), workers)
