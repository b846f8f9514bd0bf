"""Frequency descriptors: ``surd:(a+b*sqrt(d))/c``, ``dec:<digits>`` or a bare number."""
from __future__ import annotations

import re
from fractions import Fraction

import mpmath

from app.utils.errors import InputError
from app.utils.fixedpoint import ONE, to_word

from .types import TorusScalar

# Enough digits that every surd is exact to well below 2**-256.
_SURD_DPS = 100

_PAREN_OVER = re.compile(r"\((?P<body>.+)\)/(?P<den>\d+)")
_PAREN = re.compile(r"\((?P<body>.+)\)")
_TERM = re.compile(r"[+-]?[^+-]+")
_SQRT_TERM = re.compile(r"(?P<sign>[+-]?)(?:(?P<coef>\d+)\*?)?sqrt\((?P<rad>\d+)\)")
_INT_TERM = re.compile(r"(?P<sign>[+-]?)(?P<num>\d+)")


def _surd_value(expr: str) -> mpmath.mpf:
    text = expr.replace(" ", "")
    den = 1
    if match := _PAREN_OVER.fullmatch(text):
        body, den = match.group("body"), int(match.group("den"))
    elif match := _PAREN.fullmatch(text):
        body = match.group("body")
    else:
        body = text
    if den == 0:
        raise InputError(f"surd descriptor {expr!r} divides by zero")

    total = mpmath.mpf(0)
    terms = _TERM.findall(body)
    if not terms:
        raise InputError(f"empty surd descriptor {expr!r}")
    for term in terms:
        if match := _SQRT_TERM.fullmatch(term):
            sign = -1 if match.group("sign") == "-" else 1
            coef = int(match.group("coef") or 1)
            total += sign * coef * mpmath.sqrt(int(match.group("rad")))
        elif match := _INT_TERM.fullmatch(term):
            sign = -1 if match.group("sign") == "-" else 1
            total += sign * int(match.group("num"))
        else:
            raise InputError(
                f"cannot read term {term!r} in {expr!r}; expected surd:(a+b*sqrt(d))/c"
            )
    return total / den


def parse_frequency(text: str) -> TorusScalar:
    """Parse a frequency descriptor into an exact point of T (value reduced mod 1)."""
    raw = text.strip()
    if not raw:
        raise InputError("empty frequency descriptor")
    kind, sep, rest = raw.partition(":")
    kind = kind.strip().lower() if sep else ""
    if kind == "surd":
        with mpmath.workdps(_SURD_DPS):
            word = to_word(_surd_value(rest))
        return TorusScalar(word, raw)
    body = rest if kind == "dec" else raw
    if sep and kind not in {"dec", "surd"}:
        raise InputError(f"unknown frequency kind {kind!r}; use surd:(a+b*sqrt(d))/c or dec:<digits>")
    try:
        value = Fraction(body.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed frequency descriptor {text!r}: {exc}") from exc
    return TorusScalar(to_word(value), raw)


def scaled_frequency(alpha: TorusScalar, p: int, q: int) -> TorusScalar:
    """The point ``α·p/q mod 1`` rounded to the fixed-point grid."""
    if q <= 0:
        raise InputError("q must be positive")
    word = round(Fraction(alpha.word * p, q)) % ONE
    return TorusScalar(word, f"({alpha})*{p}/{q}")


GOLDEN = "surd:(sqrt(5)-1)/2"
SILVER = "surd:sqrt(2)-1"
