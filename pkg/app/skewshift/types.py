"""Torus points, skew-shift systems and polynomial vectors."""
from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from app.diophantine import TorusScalar
from app.utils.errors import InputError
from app.utils.fixedpoint import to_float, to_fraction, to_word, word_distance

MAX_DIM = 12


@dataclass(frozen=True)
class TorusPoint:
    """A point of T^b; coordinates are exact fixed-point words."""

    words: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= len(self.words) <= MAX_DIM:
            raise InputError(f"torus dimension must be in [1, {MAX_DIM}], got {len(self.words)}")

    @classmethod
    def of(cls, values: Iterable[object]) -> TorusPoint:
        return cls(tuple(to_word(v) for v in values))

    @classmethod
    def zeros(cls, b: int) -> TorusPoint:
        return cls((0,) * b)

    @property
    def dim(self) -> int:
        return len(self.words)

    @property
    def coords(self) -> tuple[float, ...]:
        return tuple(to_float(w) for w in self.words)

    def coordinate_distances(self, other: TorusPoint) -> tuple[float, ...]:
        """Circle distance per coordinate (the only comparison metric for torus points)."""
        if other.dim != self.dim:
            raise InputError("dimension mismatch")
        return tuple(word_distance(a, c) for a, c in zip(self.words, other.words))

    def distance(self, other: TorusPoint) -> float:
        return max(self.coordinate_distances(other))


@dataclass(frozen=True)
class SkewShiftSystem:
    b: int
    omega: TorusScalar

    def __post_init__(self) -> None:
        if not 2 <= self.b <= MAX_DIM:
            raise InputError(f"skew-shift dimension must be in [2, {MAX_DIM}], got {self.b}")


@dataclass(frozen=True)
class RealPolynomial:
    """``P(x) = Σ_j coeffs[j] x^j`` with exact rational coefficients."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        trimmed = list(self.coeffs)
        while len(trimmed) > 1 and trimmed[-1] == 0:
            trimmed.pop()
        object.__setattr__(self, "coeffs", tuple(trimmed) or (Fraction(0),))

    @classmethod
    def of(cls, coeffs: Sequence[object]) -> RealPolynomial:
        values = [c.exact if isinstance(c, TorusScalar) else to_fraction(c) for c in coeffs]
        return cls(tuple(values))

    @classmethod
    def zero(cls) -> RealPolynomial:
        return cls((Fraction(0),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1]

    @property
    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 0

    def __add__(self, other: RealPolynomial) -> RealPolynomial:
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (size - len(self.coeffs))
        c = other.coeffs + (Fraction(0),) * (size - len(other.coeffs))
        return RealPolynomial(tuple(x + y for x, y in zip(a, c)))

    def scaled(self, k: int) -> RealPolynomial:
        return RealPolynomial(tuple(k * c for c in self.coeffs))

    def plus_constant(self, c: object) -> RealPolynomial:
        head = self.coeffs[0] + to_fraction(c)
        return RealPolynomial((head,) + self.coeffs[1:])

    @cached_property
    def modulus(self) -> int:
        """Common denominator D: every coefficient is an integer multiple of 1/D."""
        return math.lcm(*(c.denominator for c in self.coeffs))

    @cached_property
    def numerators(self) -> tuple[int, ...]:
        """Coefficients times D, reduced mod D (only P mod 1 at integers matters)."""
        d = self.modulus
        return tuple((c.numerator * (d // c.denominator)) % d for c in self.coeffs)

    def evaluate(self, n: int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def phase(self, n: int) -> float:
        """``P(n) mod 1`` for an integer n, as a float in [0, 1)."""
        d = self.modulus
        acc = 0
        for c in reversed(self.numerators):
            acc = (acc * n + c) % d
        value = acc / d
        return 0.0 if value >= 1.0 else value


@dataclass(frozen=True)
class PolyVector:
    polys: tuple[RealPolynomial, ...]

    def __post_init__(self) -> None:
        if not 1 <= len(self.polys) <= MAX_DIM:
            raise InputError(f"polynomial vector length must be in [1, {MAX_DIM}]")

    @property
    def dim(self) -> int:
        return len(self.polys)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(p.degree for p in self.polys)

    @property
    def max_degree(self) -> int:
        return max(self.degrees)

    @property
    def has_degree_chain(self) -> bool:
        """``1 ≤ deg P_1 < ... < deg P_b``, the shape the sublinear theorems need."""
        degrees = self.degrees
        return degrees[0] >= 1 and all(a < c for a, c in zip(degrees, degrees[1:]))

    def combine(self, k: Sequence[int]) -> RealPolynomial:
        """The scalar polynomial ``Σ_i k_i P_i``."""
        if len(k) != self.dim:
            raise InputError(f"vector of length {len(k)} does not match dimension {self.dim}")
        total = RealPolynomial.zero()
        for ki, poly in zip(k, self.polys):
            if ki:
                total = total + poly.scaled(int(ki))
        return total

    def phases(self, n: int) -> tuple[float, ...]:
        return tuple(p.phase(n) for p in self.polys)

