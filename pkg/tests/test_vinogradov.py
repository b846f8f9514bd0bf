from __future__ import annotations

import math

import pytest
from sympy import divisor_count

from app.diophantine import GOLDEN, parse_frequency
from app.skewshift import RealPolynomial
from app.utils.errors import InfeasibleSizeError, InputError
from app.vinogradov import (
    PowerSumKey,
    bdg_ratio,
    divisor_power_table,
    max_shift,
    naive_vinogradov_count,
    ordered_factorizations,
    s2b_ratio,
    s2b_rhs,
    shifted_count_R2,
    shifted_counts_R2,
    sums_constant,
    vinogradov_count,
)


def test_power_sum_key() -> None:
    assert PowerSumKey.of([1, 2, 3], 3).sums == (6, 14, 36)


@pytest.mark.parametrize("N", [1, 5, 17])
def test_single_variable_count_is_diagonal(N: int) -> None:
    assert vinogradov_count(N, 2, 1).J == N


def test_count_small_example() -> None:
    count = vinogradov_count(2, 2, 2)
    assert count.J == 6
    assert count.J >= count.diagonal


@pytest.mark.parametrize("N", [1, 2, 3, 7, 12, 30])
def test_quadratic_pairs_match_multisets(N: int) -> None:
    assert vinogradov_count(N, 2, 2).J == 2 * N * N - N


@pytest.mark.parametrize("N", [1, 2, 4, 6])
@pytest.mark.parametrize("rho", [1, 2])
@pytest.mark.parametrize("b", [1, 2, 3, 4])
def test_multiplicity_count_matches_naive_pairs(N: int, rho: int, b: int) -> None:
    assert vinogradov_count(N, b, rho).J == naive_vinogradov_count(N, b, rho)


def test_count_is_independent_of_the_worker_count() -> None:
    assert vinogradov_count(9, 3, 3, workers=4).J == vinogradov_count(9, 3, 3, workers=1).J


def test_count_rejects_infeasible_sizes() -> None:
    with pytest.raises(InfeasibleSizeError):
        vinogradov_count(1000, 3, 3)
    with pytest.raises(InputError):
        vinogradov_count(0, 2, 2)


def test_bdg_ratio_examples() -> None:
    count = vinogradov_count(16, 2, 2)
    assert count.J == 496
    assert bdg_ratio(count, 0.1) == pytest.approx(496 / (16**2.1 + 16**1.1))
    assert bdg_ratio(vinogradov_count(1, 2, 2), 0.1) == pytest.approx(0.5)


def test_bdg_ratio_stays_bounded() -> None:
    ratios = [bdg_ratio(vinogradov_count(N, 2, 2), 0.1) for N in (4, 8, 16, 32)]
    # J / N^{2+ε} tends to 2 N^{-ε}; the small-N rise flattens out by N = 16.
    assert max(ratios) <= 1.5
    assert ratios[-1] <= ratios[-2]


@pytest.mark.parametrize(("M", "n", "count"), [(6, 2, 4), (4, 3, 6), (1, 1, 1), (1, 5, 1), (1, 8, 1), (12, 2, 6)])
def test_ordered_factorizations(M: int, n: int, count: int) -> None:
    assert ordered_factorizations(M, n) == count


def test_ordered_factorizations_are_multiplicative() -> None:
    for n in range(1, 5):
        for m1 in range(1, 40):
            for m2 in range(1, 25):
                if math.gcd(m1, m2) == 1:
                    product = ordered_factorizations(m1 * m2, n)
                    assert product == ordered_factorizations(m1, n) * ordered_factorizations(m2, n)


def test_divisor_table_matches_factorisation() -> None:
    table = divisor_power_table(3, 2000)
    assert table[0] == 0
    for M in range(1, 2001):
        assert table[M] == ordered_factorizations(M, 3)
    two = divisor_power_table(2, 1000)
    assert all(two[M] == divisor_count(M) for M in range(1, 1001))


@pytest.mark.parametrize("eps", [0.3, 0.5])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_sums_constant_is_finite(eps: float, n: int) -> None:
    value, M = sums_constant(n, eps, 10**6)
    assert math.isfinite(value)
    assert value >= 1.0
    assert ordered_factorizations(M, n) / M**eps == pytest.approx(value)


def test_shifted_count_examples() -> None:
    assert shifted_count_R2(1, 3, 1, 0) == 3
    assert shifted_count_R2(1, 3, 1, 5) == 0
    assert shifted_count_R2(2, 3, 2, 0) == 66 == vinogradov_count(6, 2, 2).J


@pytest.mark.parametrize(("N", "b", "rho"), [(2, 3, 2), (2, 4, 2), (3, 3, 2)])
def test_shifted_counts_peak_at_zero(N: int, b: int, rho: int) -> None:
    H = 2 * rho * N ** (b - 1)
    counts = shifted_counts_R2(N, b, rho, range(-H, H + 1))
    assert counts[0] == vinogradov_count(3 * N, b - 1, rho).J
    assert all(value <= counts[0] for value in counts.values())
    assert all(counts[h] == counts[-h] for h in range(H + 1))


def test_s2b_rhs_examples() -> None:
    assert max_shift(1, 3, 1) == 6
    assert s2b_rhs(1, 3, 1, GOLDEN) == pytest.approx(39.0)
    values = [s2b_rhs(N, 3, 1, GOLDEN) for N in (1, 2, 3)]
    assert values == sorted(values)
    with pytest.raises(InputError):
        s2b_rhs(2, 2, 1, GOLDEN)


def test_s2b_ratio_regression_baseline() -> None:
    P = RealPolynomial.of([0, 0, 0, parse_frequency(GOLDEN).exact])
    for N in range(1, 9):
        assert 0 <= s2b_ratio(P, 3, N) <= 1.0
