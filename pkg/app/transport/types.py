"""Configuration and result types for the finite-volume transport runs."""
from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any

import numpy as np
from sympy import lambdify, symbols
from sympy.parsing.sympy_parser import parse_expr

from app.skewshift import SkewShiftSystem, TorusPoint
from app.utils.errors import InputError, check_size

logger = logging.getLogger(__name__)

MAX_HALF_WIDTH = 2000


class KernelProfile(str, Enum):
    NEAREST = "nearest"
    EXPONENTIAL = "exponential"

    @classmethod
    def parse(cls, text: str) -> KernelProfile:
        try:
            return cls(text.strip().lower())
        except ValueError:
            names = ", ".join(p.value for p in cls)
            raise InputError(f"unknown kernel profile {text!r} (expected one of {names})") from None


@dataclass(frozen=True)
class Kernel:
    """Translation-invariant off-diagonal hopping ``A(n, n') = a(|n - n'|)``.

    ``nearest``: ``a(1) = C``, zero elsewhere.
    ``exponential``: ``a(k) = C e^{-c k}`` for k ≥ 1.
    """

    profile: KernelProfile = KernelProfile.NEAREST
    C: float = 1.0
    c: float = 1.0

    def __post_init__(self) -> None:
        if not (self.C > 0 and math.isfinite(self.C)):
            raise InputError(f"kernel amplitude C must be positive, got {self.C}")
        if not (self.c > 0 and math.isfinite(self.c)):
            raise InputError(f"kernel decay c must be positive, got {self.c}")

    @classmethod
    def nearest(cls, C: float = 1.0) -> Kernel:
        return cls(KernelProfile.NEAREST, C)

    @classmethod
    def exponential(cls, C: float = 1.0, c: float = 1.0) -> Kernel:
        return cls(KernelProfile.EXPONENTIAL, C, c)

    def column(self, size: int) -> np.ndarray:
        """``a(0), a(1), ..., a(size-1)`` with ``a(0) = 0``."""
        col = np.zeros(size, dtype=np.float64)
        if size < 2:
            return col
        if self.profile is KernelProfile.NEAREST:
            col[1] = self.C
        else:
            k = np.arange(1, size, dtype=np.float64)
            col[1:] = self.C * np.exp(-self.c * k)
        return col

    def to_json(self) -> dict[str, Any]:
        return {"profile": self.profile.value, "C": self.C, "c": self.c}


@dataclass(frozen=True)
class Potential:
    """Real sampling function ``v`` on T^b, written in ``x1..xb`` (sympy syntax)."""

    text: str
    b: int

    @classmethod
    def default(cls, b: int) -> Potential:
        return cls(f"cos(2*pi*x{b})", b)

    @cached_property
    def _fn(self) -> Callable[..., Any]:
        gens = symbols(f"x1:{self.b + 1}")
        names = {str(g): g for g in gens}
        try:
            expr = parse_expr(self.text, local_dict=names)
        except Exception as exc:  # noqa: BLE001
            raise InputError(f"cannot read potential {self.text!r}: {exc}") from exc
        stray = {str(s) for s in expr.free_symbols} - set(names)
        if stray:
            raise InputError(f"potential {self.text!r} uses unknown symbols {sorted(stray)}; expected x1..x{self.b}")
        return lambdify(gens, expr, modules="numpy")

    def __call__(self, points: np.ndarray) -> np.ndarray:
        """Values at the rows of a ``(n, b)`` coordinate array."""
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        if pts.shape[1] != self.b:
            raise InputError(f"potential expects points of dimension {self.b}, got {pts.shape[1]}")
        with np.errstate(all="ignore"):
            values = np.broadcast_to(np.asarray(self._fn(*pts.T)), (pts.shape[0],))
        if np.iscomplexobj(values) or not np.isfinite(values).all():
            raise InputError(f"potential {self.text!r} is not real and finite on the orbit")
        return np.asarray(values, dtype=np.float64).copy()


def _normalised_amplitudes(phi: Iterable[tuple[int, complex]]) -> tuple[tuple[int, complex], ...]:
    merged: dict[int, complex] = {}
    for site, amp in phi:
        merged[int(site)] = merged.get(int(site), 0j) + complex(amp)
    norm = math.sqrt(sum(abs(a) ** 2 for a in merged.values()))
    if norm == 0.0:
        raise InputError("the initial state must not vanish")
    return tuple((site, amp / norm) for site, amp in sorted(merged.items()))


@dataclass(frozen=True)
class TransportConfig:
    """Everything that fixes ``H = A + λ v(f^n x0)`` on ``[-L, L]`` and the initial state."""

    L: int
    system: SkewShiftSystem
    x0: TorusPoint
    kernel: Kernel = field(default_factory=Kernel)
    coupling: float = 0.0
    potential: Potential | None = None
    phi: tuple[tuple[int, complex], ...] = ((0, 1.0 + 0j),)

    def __post_init__(self) -> None:
        if self.L < 0:
            raise InputError(f"half-width L must be non-negative, got {self.L}")
        check_size("lattice half-width L", self.L, MAX_HALF_WIDTH)
        if self.x0.dim != self.system.b:
            raise InputError(f"x0 has dimension {self.x0.dim}, system has b={self.system.b}")
        if not math.isfinite(self.coupling):
            raise InputError("coupling λ must be finite")
        if self.potential is None:
            object.__setattr__(self, "potential", Potential.default(self.system.b))
        elif self.potential.b != self.system.b:
            raise InputError(f"potential is written for b={self.potential.b}, system has b={self.system.b}")
        object.__setattr__(self, "phi", _normalised_amplitudes(self.phi))
        outside = [site for site, _ in self.phi if abs(site) > self.L]
        if outside:
            raise InputError(f"initial state has support {outside} outside [-{self.L}, {self.L}]")

    @property
    def size(self) -> int:
        return 2 * self.L + 1

    @property
    def sites(self) -> np.ndarray:
        return np.arange(-self.L, self.L + 1)

    def initial_state(self) -> np.ndarray:
        state = np.zeros(self.size, dtype=np.complex128)
        for site, amp in self.phi:
            state[site + self.L] = amp
        return state

    def resized(self, L: int) -> TransportConfig:
        return TransportConfig(L, self.system, self.x0, self.kernel, self.coupling, self.potential, self.phi)

    def to_json(self) -> dict[str, Any]:
        return {
            "L": self.L,
            "b": self.system.b,
            "omega": str(self.system.omega),
            "x0": list(self.x0.coords),
            "kernel": self.kernel.to_json(),
            "lambda": self.coupling,
            "potential": self.potential.text if self.potential else "",
            "phi": [[site, amp.real, amp.imag] for site, amp in self.phi],
        }


@dataclass(frozen=True)
class MomentSeries:
    """⟨|X|^p⟩ (or its Abel mean when ``averaged``) over a time grid."""

    T_grid: tuple[float, ...]
    values: tuple[float, ...]
    p: float
    averaged: bool
    boundary_mass: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if len(self.T_grid) != len(self.values):
            raise InputError("time grid and values differ in length")
        if self.boundary_mass and len(self.boundary_mass) != len(self.values):
            raise InputError("boundary masses and values differ in length")
        if any(v < 0 for v in self.values):
            raise InputError("moments must be non-negative")

    @classmethod
    def of(cls, T_grid: Sequence[float], values: Sequence[float], p: float, averaged: bool,
           boundary_mass: Sequence[float] = ()) -> MomentSeries:
        return cls(
            tuple(float(t) for t in T_grid),
            tuple(float(v) for v in values),
            float(p),
            averaged,
            tuple(float(m) for m in boundary_mass),
        )

    def rows(self) -> list[tuple[float, float, float, bool]]:
        return [(t, v, self.p, self.averaged) for t, v in zip(self.T_grid, self.values)]
