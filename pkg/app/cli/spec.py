"""Experiment specs, report headers and the text parsers shared by the commands."""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

from app import TOOL_NAME, __version__
from app.diophantine import parse_frequency
from app.skewshift import RealPolynomial, TorusPoint
from app.utils.errors import InputError
from app.utils.storage import SCHEMA_VERSION

SEED_LIMIT = 2**64


class Command(str, Enum):
    ORBIT = "orbit"
    EXPSUM = "expsum"
    WEYL = "weyl"
    VINOGRADOV = "vinogradov"
    FEJER = "fejer"
    SUBLINEAR = "sublinear"
    TRANSPORT = "transport"
    DIOPH = "dioph"
    REPORT = "report"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


@dataclass(frozen=True)
class ExperimentSpec:
    """One run: command, resolved parameters, seed and where the report goes."""

    command: Command
    params: Mapping[str, Any] = field(default_factory=dict)
    seed: int = 0
    output: Path | None = None
    fmt: OutputFormat = OutputFormat.CSV

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "command", Command(self.command))
        except ValueError:
            names = ", ".join(c.value for c in Command)
            raise InputError(f"unknown command {self.command!r} (expected one of {names})") from None
        try:
            object.__setattr__(self, "fmt", OutputFormat(self.fmt))
        except ValueError:
            raise InputError(f"unknown output format {self.fmt!r} (expected csv or json)") from None
        if not 0 <= int(self.seed) < SEED_LIMIT:
            raise InputError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @property
    def path(self) -> Path:
        if self.output is not None:
            return Path(self.output)
        return Path("results") / f"{self.command.value}.{self.fmt.value}"

    def header(self) -> dict[str, Any]:
        """Header block of every output file: tool, version, spec echo, seed."""
        return {
            "tool": TOOL_NAME,
            "version": __version__,
            "schema": SCHEMA_VERSION,
            "command": self.command.value,
            "seed": int(self.seed),
            "spec": {key: _echo(value) for key, value in sorted(self.params.items())},
        }


def _echo(value: Any) -> Any:
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, list | tuple):
        return [_echo(v) for v in value]
    return value


def _items(text: str) -> list[str]:
    return [part.strip() for part in str(text).split(",") if part.strip()]


def parse_int_list(text: str, what: str) -> list[int]:
    """``2,4,8`` or a range ``lo:hi`` (inclusive) or powers ``2^lo:hi``."""
    raw = str(text).strip()
    try:
        if raw.startswith("2^") and ":" in raw:
            lo, hi = raw[2:].split(":")
            return [2**e for e in range(int(lo), int(hi) + 1)]
        if ":" in raw:
            lo, hi = raw.split(":")
            return list(range(int(lo), int(hi) + 1))
        values = [int(part) for part in _items(raw)]
    except ValueError as exc:
        raise InputError(f"cannot read {what} {text!r}: use 2,4,8 or lo:hi or 2^lo:hi") from exc
    if not values:
        raise InputError(f"{what} is empty")
    return values


def parse_float_list(text: str, what: str) -> list[float]:
    try:
        values = [float(part) for part in _items(text)]
    except ValueError as exc:
        raise InputError(f"cannot read {what} {text!r}: expected comma-separated numbers") from exc
    if not values:
        raise InputError(f"{what} is empty")
    return values


def parse_point(text: str, b: int, what: str, fill: float = 0.0) -> TorusPoint:
    """Comma-separated coordinates (decimal or frequency descriptors); empty means all ``fill``."""
    parts = _items(text)
    if not parts:
        return TorusPoint.of([fill] * b)
    if len(parts) != b:
        raise InputError(f"{what} needs {b} coordinates, got {len(parts)}")
    return TorusPoint(tuple(parse_frequency(part).word for part in parts))


def parse_polynomial(text: str) -> RealPolynomial:
    """Coefficients ``c0,c1,...`` (constant first), each a frequency descriptor taken mod 1."""
    parts = _items(text)
    if not parts:
        raise InputError("polynomial coefficients are empty")
    return RealPolynomial.of([parse_frequency(part) for part in parts])


def parse_amplitudes(text: str) -> tuple[tuple[int, complex], ...]:
    """``site:amplitude`` pairs such as ``0:1,1:0.5j``."""
    pairs = []
    for part in _items(text):
        site, sep, amp = part.partition(":")
        if not sep:
            raise InputError(f"initial state entry {part!r} needs the form site:amplitude")
        try:
            pairs.append((int(site), complex(amp.replace(" ", ""))))
        except ValueError as exc:
            raise InputError(f"cannot read initial state entry {part!r}") from exc
    if not pairs:
        raise InputError("initial state is empty")
    return tuple(pairs)
