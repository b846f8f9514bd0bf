"""Sublinear exponents and the measure regime in which they apply."""
from __future__ import annotations

import math
from enum import Enum
from typing import NamedTuple

from app.utils.errors import InputError

# Strict-inequality margin for the regime test (relative).
_STRICT = 1e-12


class Mode(str, Enum):
    WEYL = "weyl"
    VINO = "vino"
    AUTO = "auto"


def psi(b: int) -> int:
    """``2^{b-1}`` for 2 ≤ b ≤ 5, ``b(b-1)`` for b ≥ 6."""
    if b < 2:
        raise InputError(f"psi needs b ≥ 2, got {b}")
    return 2 ** (b - 1) if b <= 5 else b * (b - 1)


def theoretical_delta(b: int, tau: float) -> float:
    """``δ = 1/(τ b ψ(b))``; τ ≤ 1 is evaluated but lies outside the Diophantine hypothesis."""
    if tau <= 0:
        raise InputError("tau must be positive")
    return 1.0 / (tau * b * psi(b))


def _check(m: int, b: int, tau: float) -> None:
    if b < 2 or m < 1 or tau <= 0:
        raise InputError(f"need b ≥ 2, m ≥ 1, tau > 0 (got m={m}, b={b}, tau={tau})")


def weyl_exponent(m: int, b: int, tau: float) -> float:
    _check(m, b, tau)
    return 1.0 - 1.0 / (tau * b * 2 ** (m - 1))


def vino_exponent(m: int, b: int, tau: float) -> float:
    _check(m, b, tau)
    if m < 2:
        raise InputError("the Vinogradov exponent needs m ≥ 2")
    return 1.0 - 1.0 / (tau * b * m * (m - 1))


def resolve_mode(mode: Mode | str, b: int) -> Mode:
    """``auto`` follows the ψ split: Weyl differencing up to b = 5, Vinogradov from b = 6."""
    mode = Mode(mode)
    if mode is Mode.AUTO:
        return Mode.WEYL if b <= 5 else Mode.VINO
    return mode


def selected_exponent(mode: Mode | str, m: int, b: int, tau: float) -> float:
    if resolve_mode(mode, b) is Mode.WEYL:
        return weyl_exponent(m, b, tau)
    return vino_exponent(m, b, tau)


def regime_factor(mode: Mode | str, m: int, b: int) -> int:
    return 2 ** (m - 1) if resolve_mode(mode, b) is Mode.WEYL else m * (m - 1)


def regime_check(
    B: float,
    N: int,
    eta: float,
    mode: Mode | str,
    m: int,
    tau: float,
    c0: float = 1.0,
    b: int | None = None,
) -> bool:
    """``log B ≤ c0 log N`` and ``log N < factor · τ · log(1/η)`` (factor 2^{m-1} or m(m-1))."""
    if N < 1:
        raise InputError("N must be at least 1")
    if not 0 <= eta <= 1:
        raise InputError(f"eta must be in [0, 1], got {eta}")
    log_n = math.log(N)
    if math.log(max(B, 1.0)) > c0 * log_n:
        return False
    if eta == 0:
        return True
    rhs = regime_factor(mode, m, b if b is not None else m) * tau * math.log(1.0 / eta)
    return log_n < rhs * (1.0 - _STRICT)


class PriorDeltas(NamedTuple):
    """Sublinear exponents δ (count ≲ N^{1-δ}) of the earlier routes, next to the current one."""

    current: float
    discrepancy: float
    weyl_plain: float
    long_range_prior: float


def prior_deltas(b: int, tau: float) -> PriorDeltas:
    return PriorDeltas(
        current=theoretical_delta(b, tau),
        discrepancy=1.0 / (tau * b * (2**b - 1)),
        weyl_plain=1.0 / (tau * b * b * 2 ** (b - 1)),
        long_range_prior=1.0 / (4 ** (b - 1) * b**3 * tau**2),
    )


class ExponentRow(NamedTuple):
    b: int
    psi: int
    current: int
    weyl_plain: int
    discrepancy: int
    improves: bool


def exponent_table(bs: range | list[int] = range(2, 13)) -> list[ExponentRow]:
    """Integer denominators at τ = 1: ``bψ(b)`` against ``b²2^{b-1}`` and ``b(2^b-1)``."""
    rows = []
    for b in bs:
        current = b * psi(b)
        plain = b * b * 2 ** (b - 1)
        discrepancy = b * (2**b - 1)
        rows.append(ExponentRow(b, psi(b), current, plain, discrepancy, current <= min(plain, discrepancy)))
    return rows
