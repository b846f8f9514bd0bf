"""Shell decomposition of the square lattice ``{k ∈ Z^b : ‖k‖_∞ < R}``.

Shell K^0 is the origin; shell K^i collects the vectors whose last nonzero
coordinate is k_i.
"""
from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from app.utils.errors import InputError, check_size

MAX_LATTICE_POINTS = 10**8


@dataclass(frozen=True)
class LatticeShell:
    index: int
    R: int
    b: int

    @property
    def size(self) -> int:
        if self.index == 0:
            return 1
        return (2 * self.R - 2) * (2 * self.R - 1) ** (self.index - 1)

    def blocks(self) -> Iterator[np.ndarray]:
        """Members grouped by the value of k_i, one ``(rows, b)`` int64 array per value."""
        if self.index == 0:
            yield np.zeros((1, self.b), dtype=np.int64)
            return
        span = np.arange(-self.R + 1, self.R, dtype=np.int64)
        prefix_dims = self.index - 1
        if prefix_dims:
            prefix = np.stack(np.meshgrid(*[span] * prefix_dims, indexing="ij"), axis=-1).reshape(-1, prefix_dims)
        else:
            prefix = np.zeros((1, 0), dtype=np.int64)
        for ki in span[span != 0].tolist():
            block = np.zeros((prefix.shape[0], self.b), dtype=np.int64)
            block[:, :prefix_dims] = prefix
            block[:, prefix_dims] = ki
            yield block

    def members(self) -> Iterator[tuple[int, ...]]:
        for block in self.blocks():
            yield from map(tuple, block.tolist())


def lattice_shells(R: int, b: int) -> list[LatticeShell]:
    if R < 1 or b < 1:
        raise InputError("lattice_shells needs R ≥ 1 and b ≥ 1")
    check_size(f"lattice (R={R}, b={b})", float(2 * R - 1) ** b, MAX_LATTICE_POINTS)
    if R == 1:
        return [LatticeShell(0, R, b)]
    return [LatticeShell(i, R, b) for i in range(b + 1)]


def lattice_points(R: int, b: int) -> Iterator[tuple[int, ...]]:
    """Every vector with ‖k‖_∞ < R, in lexicographic order (enumeration oracle)."""
    return itertools.product(range(-R + 1, R), repeat=b)
