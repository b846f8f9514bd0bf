"""Shared utilities: errors, fixed-point torus words, worker pool, report files, Qt env."""
from .errors import (
    DepthError,
    EigensolverError,
    HypothesisError,
    InfeasibleSizeError,
    InputError,
    SkewShiftLabError,
    check_size,
)
from .qt_env import bootstrap_qt_runtime
from .workers import WORKERS_ENV, parallel_map, worker_count

__all__ = [
    "WORKERS_ENV",
    "DepthError",
    "EigensolverError",
    "HypothesisError",
    "InfeasibleSizeError",
    "InputError",
    "SkewShiftLabError",
    "bootstrap_qt_runtime",
    "check_size",
    "parallel_map",
    "worker_count",
]
