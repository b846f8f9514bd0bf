"""Skew-shift package: torus points, the map, its closed form and polynomial encoding."""
from .dump import ORBIT_DIGITS, read_orbit_csv, write_orbit_csv
from .dynamics import (
    as_poly_vector,
    binomial,
    closed_form,
    iterate,
    orbit,
    orbit_array,
    step,
    step_inverse,
)
from .types import MAX_DIM, PolyVector, RealPolynomial, SkewShiftSystem, TorusPoint

__all__ = [
    "MAX_DIM",
    "ORBIT_DIGITS",
    "PolyVector",
    "RealPolynomial",
    "SkewShiftSystem",
    "TorusPoint",
    "as_poly_vector",
    "binomial",
    "closed_form",
    "iterate",
    "orbit",
    "orbit_array",
    "read_orbit_csv",
    "step",
    "step_inverse",
    "write_orbit_csv",
]
