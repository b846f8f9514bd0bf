"""Exponential sums over polynomial phases, Weyl differencing and lattice shells."""
from .lattice import MAX_LATTICE_POINTS, LatticeShell, lattice_points, lattice_shells
from .phase import MAX_PHASE_DEGREE, difference_registers, eval_phase, phase_drift, phase_series
from .sums import ExpSumResult, exp_sum, geometric_sum_bound, vector_exp_sum
from .weyl import (
    MAX_WEYL_TERMS,
    RatioRow,
    is_diophantine_like,
    weyl_ratio,
    weyl_rhs,
    weyl_row,
    weyl_sweep,
)

__all__ = [
    "MAX_LATTICE_POINTS",
    "MAX_PHASE_DEGREE",
    "MAX_WEYL_TERMS",
    "ExpSumResult",
    "LatticeShell",
    "RatioRow",
    "difference_registers",
    "eval_phase",
    "exp_sum",
    "geometric_sum_bound",
    "is_diophantine_like",
    "lattice_points",
    "lattice_shells",
    "phase_drift",
    "phase_series",
    "vector_exp_sum",
    "weyl_ratio",
    "weyl_rhs",
    "weyl_row",
    "weyl_sweep",
]
