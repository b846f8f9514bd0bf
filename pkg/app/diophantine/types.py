"""Shared types for Diophantine estimates."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from app.utils.fixedpoint import to_float, to_word, word_to_fraction


class TorusScalar(NamedTuple):
    """A point of T held as an exact fixed-point word (see ``app.utils.fixedpoint``)."""

    word: int
    label: str = ""

    @classmethod
    def of(cls, x: object, label: str = "") -> TorusScalar:
        if isinstance(x, TorusScalar):
            return x
        return cls(to_word(x), label or (str(x) if isinstance(x, int | float | Fraction) else ""))

    @property
    def value(self) -> float:
        return to_float(self.word)

    @property
    def exact(self) -> Fraction:
        return word_to_fraction(self.word)

    def __str__(self) -> str:
        return self.label or f"{self.value:.17g}"


class RationalApproximant(NamedTuple):
    p: int
    q: int
    err: float
    exact: bool = False


@dataclass(frozen=True)
class DiophantineProfile:
    alpha: TorusScalar
    tau: float
    gamma_emp: float
    approximants: tuple[RationalApproximant, ...]
    search_depth: int

    @property
    def denominators(self) -> list[int]:
        return [a.q for a in self.approximants]

    @property
    def terminated(self) -> bool:
        return bool(self.approximants) and self.approximants[-1].exact

