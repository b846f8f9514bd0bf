"""Vinogradov systems: exact counts, shifted counts, divisor bounds and the mean-value RHS."""
from .counting import (
    MAX_TUPLES,
    MultiplicityMap,
    bdg_ratio,
    max_shift,
    multiplicity_map,
    naive_vinogradov_count,
    shifted_count_R2,
    shifted_counts_R2,
    vinogradov_count,
)
from .divisors import divisor_power_table, ordered_factorizations, sums_constant
from .s2b import s2b_ratio, s2b_rhs, shift_min_sum
from .types import PowerSumKey, VinogradovCount

__all__ = [
    "MAX_TUPLES",
    "MultiplicityMap",
    "PowerSumKey",
    "VinogradovCount",
    "bdg_ratio",
    "divisor_power_table",
    "max_shift",
    "multiplicity_map",
    "naive_vinogradov_count",
    "ordered_factorizations",
    "s2b_ratio",
    "s2b_rhs",
    "shift_min_sum",
    "shifted_count_R2",
    "shifted_counts_R2",
    "sums_constant",
    "vinogradov_count",
]
