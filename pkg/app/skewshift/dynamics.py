"""The skew-shift map ``f(x) = (x_1 + ω, x_2 + x_1, ..., x_b + x_{b-1})`` on T^b."""
from __future__ import annotations

import logging
import math
from collections.abc import Iterator
from fractions import Fraction

import numpy as np

from app.utils.errors import InputError
from app.utils.fixedpoint import MASK, to_float, word_to_fraction

from .types import PolyVector, RealPolynomial, SkewShiftSystem, TorusPoint

logger = logging.getLogger(__name__)

MAX_CLOSED_FORM_N = 10**9


def _check_dim(x: TorusPoint, sys: SkewShiftSystem) -> None:
    if x.dim != sys.b:
        raise InputError(f"point has dimension {x.dim}, system has b={sys.b}")


def _step_words(words: list[int], omega: int) -> list[int]:
    shifted = [omega, *words[:-1]]
    return [(w + s) & MASK for w, s in zip(words, shifted)]


def step(x: TorusPoint, sys: SkewShiftSystem) -> TorusPoint:
    _check_dim(x, sys)
    return TorusPoint(tuple(_step_words(list(x.words), sys.omega.word)))


def step_inverse(y: TorusPoint, sys: SkewShiftSystem) -> TorusPoint:
    _check_dim(y, sys)
    words: list[int] = []
    previous = sys.omega.word
    for w in y.words:
        recovered = (w - previous) & MASK
        words.append(recovered)
        previous = recovered
    return TorusPoint(tuple(words))


def iterate(x: TorusPoint, sys: SkewShiftSystem, n: int) -> TorusPoint:
    """``f^n x`` by repeated stepping; negative n steps backwards."""
    _check_dim(x, sys)
    point = x
    move = step if n >= 0 else step_inverse
    for _ in range(abs(n)):
        point = move(point, sys)
    return point


def binomial(n: int, j: int) -> int:
    """C(n, j) for any integer n, with the generalised value for n < 0."""
    if j < 0:
        return 0
    if n >= 0:
        return math.comb(n, j)
    return (-1) ** j * math.comb(-n + j - 1, j)


def closed_form(x: TorusPoint, sys: SkewShiftSystem, n: int) -> TorusPoint:
    """``(f^n x)_i = x_i + C(n,1) x_{i-1} + ... + C(n,i) ω mod 1`` in one shot.

    Binomials are exact integers and each term is reduced mod 1 on the word
    grid, so the result equals n-fold stepping bit for bit.
    """
    _check_dim(x, sys)
    if abs(n) > MAX_CLOSED_FORM_N:
        raise InputError(f"|n| must be at most {MAX_CLOSED_FORM_N}, got {n}")
    z = (sys.omega.word, *x.words)
    coeffs = [binomial(n, j) & MASK for j in range(sys.b + 1)]
    words = tuple(
        sum(coeffs[j] * z[i - j] for j in range(i + 1)) & MASK
        for i in range(1, sys.b + 1)
    )
    return TorusPoint(words)


def orbit(x: TorusPoint, sys: SkewShiftSystem, N: int) -> Iterator[TorusPoint]:
    """Yield ``f^1 x, ..., f^N x``."""
    _check_dim(x, sys)
    if N < 1:
        raise InputError("orbit length N must be at least 1")
    words = list(x.words)
    omega = sys.omega.word
    for _ in range(N):
        words = _step_words(words, omega)
        yield TorusPoint(tuple(words))


def orbit_array(x: TorusPoint, sys: SkewShiftSystem, N: int, start: int = 1) -> np.ndarray:
    """Float coordinates of ``f^n x`` for n = start..start+N-1, shape (N, b)."""
    _check_dim(x, sys)
    if N < 1:
        raise InputError("orbit length N must be at least 1")
    words = list(closed_form(x, sys, start).words)
    omega = sys.omega.word
    out = np.empty((N, sys.b), dtype=np.float64)
    for row in range(N):
        out[row] = [to_float(w) for w in words]
        words = _step_words(words, omega)
    return out


def _falling_factorial_poly(j: int) -> list[Fraction]:
    """Coefficients of ``C(n, j) = n(n-1)...(n-j+1) / j!`` as a polynomial in n."""
    coeffs = [Fraction(1)]
    for r in range(j):
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for power, c in enumerate(coeffs):
            nxt[power + 1] += c
            nxt[power] -= r * c
        coeffs = nxt
    scale = math.factorial(j)
    return [c / scale for c in coeffs]


def as_poly_vector(sys: SkewShiftSystem, x: TorusPoint) -> PolyVector:
    """Polynomials with ``P_i(n) mod 1 = (f^n x)_i``; ``deg P_i = i``, leading coefficient ω/i!."""
    _check_dim(x, sys)
    z = (sys.omega.exact, *(word_to_fraction(w) for w in x.words))
    basis = [_falling_factorial_poly(j) for j in range(sys.b + 1)]
    polys = []
    for i in range(1, sys.b + 1):
        coeffs = [Fraction(0)] * (i + 1)
        for j in range(i + 1):
            for power, c in enumerate(basis[j]):
                coeffs[power] += c * z[i - j]
        polys.append(RealPolynomial(tuple(coeffs)))
    vector = PolyVector(tuple(polys))
    if sys.omega.word == 0:
        logger.warning("ω = 0: the polynomial vector has no degree chain")
    return vector
