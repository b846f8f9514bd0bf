"""Fejér kernel ``F_R(x) = (1/R) (sin πRx / sin πx)^2`` and the ball majorant built from it."""
from __future__ import annotations

import math

import numpy as np

from app.utils.errors import InputError

# Below this |sin πx| the closed form loses digits; use the Fourier series.
_SINGULAR = 1e-8


def fejer_series(x: float | np.ndarray, R: int) -> np.ndarray:
    """``Σ_{|k|<R} (1 - |k|/R) e(kx) = 1 + 2 Σ_{k=1}^{R-1} (1 - k/R) cos 2πkx``."""
    if R < 1:
        raise InputError("R must be at least 1")
    x = np.asarray(x, dtype=np.float64)
    total = np.ones_like(x)
    for k in range(1, R):
        total = total + 2.0 * (1.0 - k / R) * np.cos(2.0 * np.pi * k * x)
    return total


def fejer_kernel(x: float | np.ndarray, R: int) -> float | np.ndarray:
    if R < 1:
        raise InputError("R must be at least 1")
    arr = np.asarray(x, dtype=np.float64)
    reduced = arr - np.rint(arr)
    s = np.sin(np.pi * reduced)
    singular = np.abs(s) < _SINGULAR
    safe = np.where(singular, 1.0, s)
    value = np.sin(np.pi * R * reduced) ** 2 / (R * safe**2)
    if singular.any():
        value = np.where(singular, fejer_series(reduced, R), value)
    value = np.maximum(value, 0.0)
    return float(value) if value.ndim == 0 else value


def fejer_radius(eps: float) -> int:
    """``R = floor(ε^{-1} / 10)``; needs ε ≤ 1/10."""
    if not 0 < eps < 0.5:
        raise InputError(f"ball radius must be in (0, 1/2), got {eps}")
    R = math.floor(1.0 / (10.0 * eps) + 1e-9)
    if R < 1:
        raise InputError(f"ε={eps} gives R=0; the Fejér majorant needs ε ≤ 1/10")
    return R


def ball_majorant(points: np.ndarray, eps: float) -> np.ndarray:
    """``2^b R^{-b} Π_j F_R(x_j)`` per point (rows of ``points``); dominates χ_ε of the ball at 0."""
    R = fejer_radius(eps)
    points = np.atleast_2d(points)
    b = points.shape[1]
    product = np.prod(fejer_kernel(points, R), axis=1)
    return (2.0 / R) ** b * product
