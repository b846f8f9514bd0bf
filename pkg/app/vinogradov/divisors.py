"""Ordered factorisation counts ``τ_n(M)`` and the divisor-bound constant."""
from __future__ import annotations

import math

import numpy as np
from sympy import factorint

from app.utils.errors import InputError, check_size

MAX_M = 10**9
MAX_FACTORS = 8
MAX_TABLE = 10**7


def ordered_factorizations(M: int, n: int) -> int:
    """Number of ordered n-tuples of positive integers with product M.

    ``τ_n`` is multiplicative with ``τ_n(p^e) = C(e + n - 1, n - 1)``.
    """
    if not 1 <= M <= MAX_M:
        raise InputError(f"M must be in [1, {MAX_M}], got {M}")
    if not 1 <= n <= MAX_FACTORS:
        raise InputError(f"n must be in [1, {MAX_FACTORS}], got {n}")
    return math.prod(math.comb(e + n - 1, n - 1) for e in factorint(M).values())


def _smallest_prime_factors(M_max: int) -> np.ndarray:
    spf = np.zeros(M_max + 1, dtype=np.int64)
    for p in range(2, math.isqrt(M_max) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    untouched = spf == 0
    spf[untouched] = np.arange(M_max + 1)[untouched]
    return spf


def divisor_power_table(n: int, M_max: int) -> np.ndarray:
    """``table[M] = τ_n(M)`` for 0 ≤ M ≤ M_max (``table[0]`` is 0)."""
    if not 1 <= n <= MAX_FACTORS:
        raise InputError(f"n must be in [1, {MAX_FACTORS}], got {n}")
    if M_max < 1:
        raise InputError("M_max must be at least 1")
    check_size("divisor table", float(M_max), MAX_TABLE)
    spf = _smallest_prime_factors(M_max)
    exponent_weight = np.array([math.comb(e + n - 1, n - 1) for e in range(64)], dtype=np.int64)
    rest = np.arange(M_max + 1, dtype=np.int64)
    table = np.ones(M_max + 1, dtype=np.int64)
    table[0] = 0
    active = np.nonzero(rest > 1)[0]
    while active.size:
        r = rest[active]
        p = spf[r]
        e = np.zeros(active.size, dtype=np.int64)
        divisible = r % p == 0
        while divisible.any():
            r = np.where(divisible, r // p, r)
            e += divisible
            divisible = r % p == 0
        table[active] *= exponent_weight[e]
        rest[active] = r
        active = active[r > 1]
    return table


def sums_constant(n: int, eps: float, M_max: int) -> tuple[float, int]:
    """``max_{M ≤ M_max} τ_n(M) / M^ε`` and the M attaining it."""
    if not 0 < eps <= 1:
        raise InputError("eps must be in (0, 1]")
    table = divisor_power_table(n, M_max)
    ms = np.arange(1, M_max + 1, dtype=np.float64)
    ratios = table[1:] / ms**eps
    best = int(np.argmax(ratios))
    return float(ratios[best]), best + 1
