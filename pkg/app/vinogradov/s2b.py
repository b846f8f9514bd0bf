"""Right-hand side of the mean-value bound for |S|^{2ρ}.

    |S|^{2ρ} ≲ N^{(b-1)(b-2)/2 - 1} J_{b-1}(3N; ρ) Σ_{|h| ≤ 2ρ b N^{b-1}} min(N, 1/‖h α_b‖)
"""
from __future__ import annotations

import math

import numpy as np

from app.diophantine import as_scalar
from app.expsum import exp_sum
from app.skewshift import RealPolynomial
from app.utils.errors import InputError, check_size
from app.utils.fixedpoint import norms_of_multiples

from .counting import leading_exponent, max_shift, vinogradov_count

MAX_SHIFT_TERMS = 10**7
_CHUNK = 1 << 20


def shift_min_sum(alpha: object, H: int, N: int) -> float:
    """``Σ_{|h| ≤ H} min(N, 1/‖hα‖)``, folded over ±h."""
    scalar = as_scalar(alpha)
    parts = [float(N)]
    for start in range(1, H + 1, _CHUNK):
        ks = np.arange(start, min(start + _CHUNK, H + 1), dtype=np.int64)
        with np.errstate(divide="ignore"):
            terms = np.minimum(float(N), 1.0 / norms_of_multiples(scalar.word, ks))
        parts.append(2.0 * math.fsum(terms.tolist()))
    return math.fsum(parts)


def s2b_rhs(N: int, b: int, rho: int, alpha_b: object, workers: int | None = None) -> float:
    if b < 3:
        raise InputError(f"the mean-value bound needs b ≥ 3, got {b}")
    if N < 1 or rho < 1:
        raise InputError("N and rho must be positive")
    H = max_shift(N, b, rho)
    check_size("shift sum", float(2 * H + 1), MAX_SHIFT_TERMS)
    J = vinogradov_count(3 * N, b - 1, rho, workers).J
    return float(N) ** leading_exponent(b) * J * shift_min_sum(alpha_b, H, N)


def s2b_ratio(P: RealPolynomial, rho: int, N: int, workers: int | None = None) -> float:
    """``|S|^{2ρ} / s2b_rhs`` for the polynomial's own degree and leading coefficient."""
    b = P.degree
    rhs = s2b_rhs(N, b, rho, P.leading, workers)
    return exp_sum(P, N).magnitude ** (2 * rho) / rhs
