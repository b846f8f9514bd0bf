"""Exact phase evaluation ``P(n) mod 1``.

A polynomial with rational coefficients is carried as integer numerators over
a common modulus D, so both Horner evaluation and the finite-difference
engine work in exact integer arithmetic mod D.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from app.diophantine import TorusScalar
from app.skewshift import RealPolynomial
from app.utils.errors import InputError
from app.utils.fixedpoint import to_word

MAX_PHASE_DEGREE = 12


def _check_degree(P: RealPolynomial) -> None:
    if P.degree > MAX_PHASE_DEGREE:
        raise InputError(f"phase polynomials are limited to degree {MAX_PHASE_DEGREE}, got {P.degree}")


def _residue(P: RealPolynomial, n: int) -> int:
    d = P.modulus
    acc = 0
    for c in reversed(P.numerators):
        acc = (acc * n + c) % d
    return acc


def eval_phase(P: RealPolynomial, n: int) -> TorusScalar:
    _check_degree(P)
    return TorusScalar(to_word(Fraction(_residue(P, n), P.modulus)))


def difference_registers(P: RealPolynomial, start: int) -> list[int]:
    """``[Δ^0 P(start), ..., Δ^d P(start)]`` mod D (forward differences)."""
    d = P.modulus
    values = [_residue(P, start + j) for j in range(P.degree + 1)]
    registers = []
    for _ in range(P.degree + 1):
        registers.append(values[0] % d)
        values = [b - a for a, b in zip(values, values[1:])]
    return registers


def phase_series(
    P: RealPolynomial,
    N: int,
    start: int = 1,
    incremental: bool = True,
) -> np.ndarray:
    """Phases ``P(n) mod 1`` for n = start..start+N-1 as floats in [0, 1).

    The incremental mode advances d+1 difference registers per step; the
    direct mode runs Horner for every n. Both are exact before the final
    conversion to float.
    """
    _check_degree(P)
    if N < 1:
        raise InputError("N must be at least 1")
    d = P.modulus
    if not incremental:
        residues = [_residue(P, n) for n in range(start, start + N)]
    else:
        registers = difference_registers(P, start)
        last = len(registers) - 1
        residues = []
        for _ in range(N):
            residues.append(registers[0])
            for j in range(last):
                registers[j] = (registers[j] + registers[j + 1]) % d
    if d < 2**53:
        out = np.asarray(residues, dtype=np.float64) / float(d)
    else:
        out = np.asarray([r / d for r in residues], dtype=np.float64)
    return np.where(out >= 1.0, 0.0, out)


def phase_drift(P: RealPolynomial, N: int, start: int = 1) -> float:
    """Largest circle distance between incremental and direct phases."""
    diff = phase_series(P, N, start) - phase_series(P, N, start, incremental=False)
    diff -= np.rint(diff)
    return float(np.abs(diff).max())
