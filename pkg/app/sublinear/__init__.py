"""Sublinear hit-count experiments, theoretical exponents and the measure regime."""
from .experiment import (
    DEFAULT_BALL_SCALE,
    DEFAULT_SLACK,
    CoupledBallTarget,
    ExponentReport,
    FixedTarget,
    OrbitSource,
    fit_slope,
    geometric_grid,
    run_experiment,
)
from .exponents import (
    ExponentRow,
    Mode,
    PriorDeltas,
    exponent_table,
    prior_deltas,
    psi,
    regime_check,
    resolve_mode,
    selected_exponent,
    theoretical_delta,
    vino_exponent,
    weyl_exponent,
)

__all__ = [
    "DEFAULT_BALL_SCALE",
    "DEFAULT_SLACK",
    "CoupledBallTarget",
    "ExponentReport",
    "ExponentRow",
    "FixedTarget",
    "Mode",
    "OrbitSource",
    "PriorDeltas",
    "exponent_table",
    "fit_slope",
    "geometric_grid",
    "prior_deltas",
    "psi",
    "regime_check",
    "resolve_mode",
    "run_experiment",
    "selected_exponent",
    "theoretical_delta",
    "vino_exponent",
    "weyl_exponent",
]
