"""Finite-volume long-range operators with skew-shift potentials: moments, Abel means, growth fits."""
from .dump import MOMENT_COLUMNS, write_moment_csv
from .evolution import (
    BOUNDARY_MASS_TOL,
    Propagator,
    abel_mean,
    abel_mean_quadrature,
    evolve,
    moment,
    moment_series,
    weighted_mass,
)
from .fit import GrowthFit, GrowthModel, free_lattice_oracle, free_moment_oracle, growth_fit
from .operator import Spectrum, build_operator, diagonalize, potential_samples, spectrum_of
from .types import MAX_HALF_WIDTH, Kernel, KernelProfile, MomentSeries, Potential, TransportConfig

__all__ = [
    "BOUNDARY_MASS_TOL",
    "MAX_HALF_WIDTH",
    "MOMENT_COLUMNS",
    "GrowthFit",
    "GrowthModel",
    "Kernel",
    "KernelProfile",
    "MomentSeries",
    "Potential",
    "Propagator",
    "Spectrum",
    "TransportConfig",
    "abel_mean",
    "abel_mean_quadrature",
    "build_operator",
    "diagonalize",
    "evolve",
    "free_lattice_oracle",
    "free_moment_oracle",
    "growth_fit",
    "moment",
    "moment_series",
    "potential_samples",
    "spectrum_of",
    "weighted_mass",
    "write_moment_csv",
]
