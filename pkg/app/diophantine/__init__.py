"""Diophantine package: frequencies, continued fractions, min-sum estimates."""
from .estimates import (
    MAX_DEPTH,
    as_scalar,
    circle_distance,
    continued_fraction,
    dc_constant,
    dc_curve,
    dcweyl_bound,
    diophantine_profile,
    factorial_scaled_constants,
    find_denominator,
    min_sum,
    rational_min_sum_bound,
    scaled_dc_check,
    torus_norm,
)
from .frequency import GOLDEN, SILVER, parse_frequency, scaled_frequency
from .types import DiophantineProfile, RationalApproximant, TorusScalar

__all__ = [
    "GOLDEN",
    "SILVER",
    "MAX_DEPTH",
    "DiophantineProfile",
    "RationalApproximant",
    "TorusScalar",
    "as_scalar",
    "circle_distance",
    "continued_fraction",
    "dc_constant",
    "dc_curve",
    "dcweyl_bound",
    "diophantine_profile",
    "factorial_scaled_constants",
    "find_denominator",
    "min_sum",
    "parse_frequency",
    "rational_min_sum_bound",
    "scaled_dc_check",
    "scaled_frequency",
    "torus_norm",
]
