from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import NamedTuple


class PowerSumKey(NamedTuple):
    """``(s_1, ..., s_b)`` with ``s_j = Σ_i n_i^j``."""

    sums: tuple[int, ...]

    @classmethod
    def of(cls, ns: Sequence[int], b: int) -> PowerSumKey:
        return cls(tuple(sum(n**j for n in ns) for j in range(1, b + 1)))


@dataclass(frozen=True)
class VinogradovCount:
    b: int
    rho: int
    N: int
    J: int

    @property
    def diagonal(self) -> int:
        """Solutions with m = n; a lower bound for J."""
        return self.N**self.rho
