"""Exact fixed-point arithmetic on the circle T = R/Z.

A point of T is stored as an integer word ``w`` in ``[0, 2**FRAC_BITS)`` that
stands for ``w / 2**FRAC_BITS``. Integer multiples and sums of words are exact,
so skew-shift iterates and polynomial phases carry no rounding drift.
"""
from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import numpy as np

from .errors import InputError

FRAC_BITS = 256
ONE = 1 << FRAC_BITS
MASK = ONE - 1

# Limb path of the vectorised multiples: k * limb must stay below 2**63.
_LIMB = 32
_LIMB_MASK = (1 << _LIMB) - 1
LIMB_K_MAX = 1 << 31


def to_fraction(x: object) -> Fraction:
    """Exact rational value of an int, float, Fraction or mpmath number."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise InputError(f"non-finite value {x!r}")
        return Fraction(x)
    if isinstance(x, mpmath.mpf):
        if not mpmath.isfinite(x):
            raise InputError(f"non-finite value {x!r}")
        man, exp = x.man_exp
        return Fraction(int(man)) * (Fraction(2) ** int(exp))
    if isinstance(x, np.floating | np.integer):
        return to_fraction(x.item())
    raise InputError(f"cannot read {type(x).__name__} as a real number")


def to_word(x: object) -> int:
    """Word of ``x mod 1``, rounded to the nearest multiple of 2**-FRAC_BITS."""
    return round(to_fraction(x) * ONE) & MASK


def word_to_fraction(w: int) -> Fraction:
    return Fraction(w & MASK, ONE)


def to_float(w: int) -> float:
    value = (w & MASK) / ONE
    # Words within 2**-54 of 1 round up to 1.0; that is the point 0 of T.
    return 0.0 if value >= 1.0 else value


def centered(w: int) -> int:
    """Representative of ``w`` in ``[-ONE/2, ONE/2)``."""
    w &= MASK
    return w - ONE if w >= ONE // 2 else w


def word_norm(w: int) -> float:
    """Distance to the nearest integer, as a float in [0, 1/2]."""
    return abs(centered(w)) / ONE


def word_distance(a: int, b: int) -> float:
    return word_norm(a - b)


def _limbs(w: int) -> tuple[int, int, int]:
    w &= MASK
    shift = FRAC_BITS - _LIMB
    return (
        (w >> shift) & _LIMB_MASK,
        (w >> (shift - _LIMB)) & _LIMB_MASK,
        (w >> (shift - 2 * _LIMB)) & _LIMB_MASK,
    )


def centered_multiples(w: int, ks: np.ndarray) -> np.ndarray:
    """``k * (w / ONE)`` reduced into [-1/2, 1/2) for every non-negative k in ``ks``.

    Uses three 32-bit limbs of the word (absolute error below 2**-90 before the
    final float rounding, which is relative to the result).
    """
    ks = np.asarray(ks, dtype=np.int64)
    if ks.size == 0:
        return np.zeros(0, dtype=np.float64)
    if int(ks.min()) < 0:
        raise InputError("multiples must be non-negative")
    if int(ks.max()) >= LIMB_K_MAX:
        values = [centered(int(k) * w) / ONE for k in ks.tolist()]
        return np.asarray(values, dtype=np.float64)

    w1, w2, w3 = (np.uint64(limb) for limb in _limbs(w))
    k = ks.astype(np.uint64)
    t1 = (k * w1) & np.uint64(_LIMB_MASK)
    t2 = k * w2
    t3 = k * w3
    top = (t1 + (t2 >> np.uint64(_LIMB))) & np.uint64(_LIMB_MASK)
    top = top.astype(np.int64)
    top = np.where(top >= (1 << (_LIMB - 1)), top - (1 << _LIMB), top)
    low = (t2 & np.uint64(_LIMB_MASK)).astype(np.float64) * 2.0**-64 + t3.astype(np.float64) * 2.0**-96
    value = top.astype(np.float64) * 2.0**-32 + low
    return value - np.rint(value)


def norms_of_multiples(w: int, ks: np.ndarray) -> np.ndarray:
    """``‖k α‖_T`` for every k in ``ks`` where ``α = w / ONE``."""
    return np.abs(centered_multiples(w, np.abs(np.asarray(ks, dtype=np.int64))))
