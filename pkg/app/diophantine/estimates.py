"""Continued fractions, empirical Diophantine constants and the min-sum estimates."""
from __future__ import annotations

import logging
import math
from fractions import Fraction

import numpy as np

from app.utils.errors import DepthError, HypothesisError, InputError
from app.utils.fixedpoint import norms_of_multiples

from .frequency import parse_frequency, scaled_frequency
from .types import DiophantineProfile, RationalApproximant, TorusScalar

logger = logging.getLogger(__name__)

MAX_DEPTH = 40
# Agreement with p/q below this is "rational to working precision".
EXACT_TOL = 1e-30
_CHUNK = 1 << 20


def torus_norm(x: float) -> float:
    """Distance from ``x`` to the nearest integer."""
    if not math.isfinite(x):
        raise InputError(f"torus_norm needs a finite value, got {x!r}")
    return abs(x - round(x))


def circle_distance(a: float, b: float) -> float:
    return torus_norm(a - b)


def as_scalar(alpha: object) -> TorusScalar:
    if isinstance(alpha, TorusScalar):
        return alpha
    if isinstance(alpha, str):
        return parse_frequency(alpha)
    return TorusScalar.of(alpha)


def continued_fraction(alpha: object, depth: int) -> list[RationalApproximant]:
    """Convergents p_n/q_n (n ≥ 1) of ``alpha`` in (0, 1), in increasing-q order.

    A convergent that matches ``alpha`` to ``EXACT_TOL`` ends the list and is
    flagged ``exact``.
    """
    if not 1 <= depth <= MAX_DEPTH:
        raise InputError(f"depth must be in [1, {MAX_DEPTH}], got {depth}")
    target = as_scalar(alpha).exact
    if target == 0:
        raise InputError("continued_fraction needs 0 < alpha < 1")

    approximants: list[RationalApproximant] = []
    p_prev, q_prev = 1, 0
    p_cur, q_cur = 0, 1  # the 0th convergent a0/1 with a0 = 0
    x = target
    while len(approximants) < depth:
        frac = x - math.floor(x)
        if frac == 0:
            break
        x = 1 / frac
        a = math.floor(x)
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        err = abs(target - Fraction(p_cur, q_cur))
        exact = err <= EXACT_TOL
        approximants.append(RationalApproximant(p_cur, q_cur, float(err), exact))
        if exact:
            logger.debug("alpha is %d/%d to working precision", p_cur, q_cur)
            break
    return approximants


def _weighted_norms(alpha: TorusScalar, tau: float, start: int, stop: int) -> np.ndarray:
    ks = np.arange(start, stop, dtype=np.int64)
    return ks.astype(np.float64) ** tau * norms_of_multiples(alpha.word, ks)


def dc_curve(alpha: object, tau: float, K: int) -> np.ndarray:
    """``curve[k-1] = min_{1≤j≤k} j^τ ‖jα‖`` for k = 1..K (non-increasing)."""
    if K < 1:
        raise InputError("K must be at least 1")
    scalar = as_scalar(alpha)
    parts = [
        _weighted_norms(scalar, tau, start, min(start + _CHUNK, K + 1))
        for start in range(1, K + 1, _CHUNK)
    ]
    return np.minimum.accumulate(np.concatenate(parts))


def dc_constant(alpha: object, tau: float, K: int) -> float:
    """Empirical γ at depth K: ``min_{1≤k≤K} k^τ ‖kα‖_T``."""
    if K < 1:
        raise InputError("K must be at least 1")
    scalar = as_scalar(alpha)
    best = math.inf
    for start in range(1, K + 1, _CHUNK):
        best = min(best, float(_weighted_norms(scalar, tau, start, min(start + _CHUNK, K + 1)).min()))
    return best


def diophantine_profile(
    alpha: object,
    tau: float,
    K: int,
    depth: int = MAX_DEPTH,
) -> DiophantineProfile:
    scalar = as_scalar(alpha)
    return DiophantineProfile(
        alpha=scalar,
        tau=float(tau),
        gamma_emp=dc_constant(scalar, tau, K),
        approximants=tuple(continued_fraction(scalar, depth)),
        search_depth=K,
    )


def find_denominator(profile: DiophantineProfile, N: int) -> int:
    """Largest convergent denominator q ≤ N; checks ``(γ N)^{1/τ} < q``."""
    if N < 1:
        raise InputError("N must be positive")
    candidates = sorted({1, *profile.denominators})
    if candidates[-1] < N and not profile.terminated:
        raise DepthError(
            f"largest denominator {candidates[-1]} is below N={N}; "
            "increase the continued-fraction depth"
        )
    q = max(c for c in candidates if c <= N)
    lower = (profile.gamma_emp * N) ** (1.0 / profile.tau)
    if not lower < q:
        raise HypothesisError(
            f"q={q} ≤ (γN)^(1/τ)={lower:.6g}: γ={profile.gamma_emp:.6g} is not a "
            f"Diophantine constant for τ={profile.tau}"
        )
    return q


def min_sum(alpha: object, H: int, N: int) -> float:
    """Direct value of ``Σ_{k=1}^{H} min(N, 1/‖kα‖_T)``."""
    if H < 1 or N < 1:
        raise InputError("H and N must be positive")
    scalar = as_scalar(alpha)
    total: list[float] = []
    for start in range(1, H + 1, _CHUNK):
        ks = np.arange(start, min(start + _CHUNK, H + 1), dtype=np.int64)
        norms = norms_of_multiples(scalar.word, ks)
        with np.errstate(divide="ignore"):
            terms = np.minimum(float(N), 1.0 / norms)
        total.append(math.fsum(terms.tolist()))
    return math.fsum(total)


def dcweyl_bound(gamma: float, tau: float, H: int, N: int) -> float:
    if gamma <= 0 or tau <= 1 or H < 1 or N < 1:
        raise InputError("dcweyl_bound needs gamma > 0, tau > 1, H, N ≥ 1")
    log_n = math.log(N)
    return gamma ** (-1.0 / tau) * H * N ** (1.0 - 1.0 / tau) + H * log_n + N + N * log_n


def rational_min_sum_bound(H: int, N: int, q: int) -> float:
    """``HN/q + H log q + N + q log q`` (valid whenever ``|α − p/q| ≤ 1/q²``)."""
    if q < 1 or H < 0 or N < 1:
        raise InputError("rational_min_sum_bound needs q ≥ 1, H ≥ 0, N ≥ 1")
    log_q = math.log(q)
    return H * N / q + H * log_q + N + q * log_q


def scaled_dc_check(alpha: object, p: int, q: int, tau: float, K: int) -> float:
    """Empirical γ̃ of the scaled frequency ``α·p/q``."""
    if q < 1:
        raise InputError("q must be positive")
    if p == 0:
        raise InputError("p = 0 makes the scaled frequency rational")
    if math.gcd(p, q) != 1:
        raise InputError(f"p/q = {p}/{q} is not in lowest terms")
    return dc_constant(scaled_frequency(as_scalar(alpha), p, q), tau, K)


def factorial_scaled_constants(omega: object, b: int, tau: float, K: int) -> list[tuple[int, float]]:
    """Empirical constants of ω/i! for i = 1..b (the leading coefficients of a skew-shift orbit)."""
    return [(i, scaled_dc_check(omega, 1, math.factorial(i), tau, K)) for i in range(1, b + 1)]
