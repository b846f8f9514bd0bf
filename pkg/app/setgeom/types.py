"""Semi-algebraic targets and ε-balls on T^b.

A set is a union of clauses; each clause is a conjunction of sign conditions
``P(x) ≥ 0``, ``P(x) ≤ 0`` or ``P(x) = 0`` on the representative x ∈ [0, 1)^b.
"""
from __future__ import annotations

import json
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, NamedTuple

import numpy as np
from sympy import Poly, symbols
from sympy.parsing.sympy_parser import parse_expr

from app.skewshift import TorusPoint
from app.utils.errors import InputError

SCHEMA_VERSION = 1
# Sign tests accept |P(x)| within this band, resolved toward satisfaction.
SIGN_TOL = 1e-12


class Relation(Enum):
    GE = ">="
    LE = "<="
    EQ = "="

    @classmethod
    def parse(cls, text: str) -> Relation:
        aliases = {">=": cls.GE, "≥": cls.GE, "<=": cls.LE, "≤": cls.LE, "=": cls.EQ, "==": cls.EQ}
        try:
            return aliases[text.strip()]
        except KeyError as exc:
            raise InputError(f"unknown relation {text!r}; use >=, <= or =") from exc

    def holds(self, values: np.ndarray, tol: float | np.ndarray = SIGN_TOL) -> np.ndarray:
        if self is Relation.GE:
            return values >= -tol
        if self is Relation.LE:
            return values <= tol
        return np.abs(values) <= tol


class Monomial(NamedTuple):
    exponents: tuple[int, ...]
    coefficient: float


@dataclass(frozen=True)
class Constraint:
    monomials: tuple[Monomial, ...]
    relation: Relation

    @property
    def degree(self) -> int:
        return max((sum(m.exponents) for m in self.monomials), default=0)

    @property
    def lipschitz(self) -> float:
        """Sup-norm Lipschitz bound of P on [0, 1]^b: ``Σ |c| · Σ_i e_i``."""
        return math.fsum(abs(m.coefficient) * sum(m.exponents) for m in self.monomials)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        values = np.zeros(points.shape[0], dtype=np.float64)
        for exponents, coefficient in self.monomials:
            term = np.full(points.shape[0], coefficient, dtype=np.float64)
            for axis, e in enumerate(exponents):
                if e:
                    term *= points[:, axis] ** e
            values += term
        return values

    def holds(self, points: np.ndarray, tol: float = SIGN_TOL) -> np.ndarray:
        return self.relation.holds(self.evaluate(points), tol)

    @classmethod
    def from_expression(cls, text: str, relation: str, b: int) -> Constraint:
        """Parse a polynomial in ``x1..xb`` with sympy."""
        gens = symbols(f"x1:{b + 1}")
        try:
            expr = parse_expr(text, local_dict={str(g): g for g in gens})
            poly = Poly(expr, *gens)
        except Exception as exc:  # noqa: BLE001
            raise InputError(f"cannot read polynomial {text!r} in x1..x{b}: {exc}") from exc
        monomials = tuple(Monomial(tuple(int(e) for e in exps), float(c)) for exps, c in poly.terms())
        return cls(monomials, Relation.parse(relation))

    def to_json(self) -> dict[str, Any]:
        return {
            "monomials": [{"exponents": list(m.exponents), "coefficient": m.coefficient} for m in self.monomials],
            "relation": self.relation.value,
        }


def _as_points(points: np.ndarray | Sequence[TorusPoint], b: int) -> np.ndarray:
    if isinstance(points, np.ndarray):
        array = np.atleast_2d(np.asarray(points, dtype=np.float64))
    else:
        array = np.array([p.coords for p in points], dtype=np.float64).reshape(-1, b)
    if array.shape[1] != b:
        raise InputError(f"points have dimension {array.shape[1]}, set has b={b}")
    return np.mod(array, 1.0)


@dataclass(frozen=True)
class SemiAlgebraicSet:
    b: int
    clauses: tuple[tuple[Constraint, ...], ...] = field(default=())
    name: str = ""

    def __post_init__(self) -> None:
        if self.b < 1:
            raise InputError("dimension must be positive")
        for clause in self.clauses:
            for constraint in clause:
                if any(len(m.exponents) != self.b for m in constraint.monomials):
                    raise InputError(f"monomial dimension does not match b={self.b}")

    @property
    def s(self) -> int:
        return sum(len(clause) for clause in self.clauses)

    @property
    def d(self) -> int:
        return max((c.degree for clause in self.clauses for c in clause), default=0)

    @property
    def degree_bound(self) -> int:
        """``deg(S) ≤ s·d``."""
        return self.s * self.d

    @classmethod
    def empty(cls, b: int) -> SemiAlgebraicSet:
        return cls(b, (), "empty")

    @classmethod
    def cube(cls, b: int) -> SemiAlgebraicSet:
        """The whole torus: one clause with no conditions."""
        return cls(b, ((),), "cube")

    @classmethod
    def from_expressions(cls, b: int, clauses: Sequence[Sequence[tuple[str, str]]], name: str = "") -> SemiAlgebraicSet:
        return cls(
            b,
            tuple(tuple(Constraint.from_expression(text, rel, b) for text, rel in clause) for clause in clauses),
            name,
        )

    def contains_array(self, points: np.ndarray | Sequence[TorusPoint], tol: float = SIGN_TOL) -> np.ndarray:
        array = _as_points(points, self.b)
        inside = np.zeros(array.shape[0], dtype=bool)
        for clause in self.clauses:
            ok = np.ones(array.shape[0], dtype=bool)
            for constraint in clause:
                ok &= constraint.holds(array, tol)
            inside |= ok
        return inside

    @classmethod
    def from_json(cls, payload: Mapping[str, Any]) -> SemiAlgebraicSet:
        schema = payload.get("schema")
        if schema != SCHEMA_VERSION:
            raise InputError(f"unsupported set schema {schema!r}; expected {SCHEMA_VERSION}")
        try:
            b = int(payload["b"])
            clauses = []
            for raw_clause in payload["clauses"]:
                clause = []
                for raw in raw_clause:
                    if "expr" in raw:
                        clause.append(Constraint.from_expression(str(raw["expr"]), str(raw["relation"]), b))
                        continue
                    monomials = tuple(
                        Monomial(tuple(int(e) for e in m["exponents"]), float(m["coefficient"]))
                        for m in raw["monomials"]
                    )
                    clause.append(Constraint(monomials, Relation.parse(str(raw["relation"]))))
                clauses.append(tuple(clause))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed set definition: {exc}") from exc
        return cls(b, tuple(clauses), str(payload.get("name", "")))

    def to_json(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "name": self.name,
            "b": self.b,
            "clauses": [[c.to_json() for c in clause] for clause in self.clauses],
        }


def load_set(path: Path) -> SemiAlgebraicSet:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise InputError(f"{path} does not hold a set definition")
    return SemiAlgebraicSet.from_json(payload)


@dataclass(frozen=True)
class EpsBall:
    """Sup-norm ball ``{x : ‖x_j - c_j‖_T < ε for all j}``."""

    center: TorusPoint
    eps: float

    def __post_init__(self) -> None:
        if not 0 < self.eps < 0.5:
            raise InputError(f"ball radius must be in (0, 1/2), got {self.eps}")

    @property
    def b(self) -> int:
        return self.center.dim

    def contains_array(self, points: np.ndarray | Sequence[TorusPoint]) -> np.ndarray:
        array = _as_points(points, self.b)
        diff = array - np.asarray(self.center.coords)
        diff -= np.rint(diff)
        return (np.abs(diff) < self.eps).all(axis=1)

    @property
    def measure(self) -> float:
        return (2.0 * self.eps) ** self.b


class HitReport(NamedTuple):
    N: int
    count: int
    bound: float
    ratio: float

    @classmethod
    def of(cls, N: int, count: int, bound: float = math.nan) -> HitReport:
        ratio = count / bound if bound > 0 else math.nan
        return cls(N, count, bound, ratio)
