"""Semi-algebraic targets, ε-balls, Fejér majorants and orbit hit counting."""
from .cover import MeasureEstimate, grid_cover, measure_estimate
from .hits import ball_hit_report, contains, fejer_bound, fourier_mass, hit_count, majorant_count
from .kernel import ball_majorant, fejer_kernel, fejer_radius, fejer_series
from .types import (
    SCHEMA_VERSION,
    SIGN_TOL,
    Constraint,
    EpsBall,
    HitReport,
    Monomial,
    Relation,
    SemiAlgebraicSet,
    load_set,
)

__all__ = [
    "SCHEMA_VERSION",
    "SIGN_TOL",
    "Constraint",
    "EpsBall",
    "HitReport",
    "MeasureEstimate",
    "Monomial",
    "Relation",
    "SemiAlgebraicSet",
    "ball_hit_report",
    "ball_majorant",
    "contains",
    "fejer_bound",
    "fejer_kernel",
    "fejer_radius",
    "fejer_series",
    "fourier_mass",
    "grid_cover",
    "hit_count",
    "load_set",
    "majorant_count",
    "measure_estimate",
]
