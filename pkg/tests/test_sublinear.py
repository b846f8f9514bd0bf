from __future__ import annotations

import math

import pytest

from app.diophantine import GOLDEN, TorusScalar, parse_frequency
from app.setgeom import EpsBall, SemiAlgebraicSet
from app.skewshift import SkewShiftSystem, TorusPoint, as_poly_vector
from app.sublinear import (
    CoupledBallTarget,
    FixedTarget,
    Mode,
    OrbitSource,
    exponent_table,
    fit_slope,
    geometric_grid,
    prior_deltas,
    psi,
    regime_check,
    run_experiment,
    selected_exponent,
    theoretical_delta,
    vino_exponent,
    weyl_exponent,
)
from app.utils.errors import InputError

GRID = geometric_grid(10, 16)


def _golden_source(b: int = 2) -> OrbitSource:
    return OrbitSource.of_skew_shift(SkewShiftSystem(b, parse_frequency(GOLDEN)), TorusPoint.zeros(b))


@pytest.mark.parametrize(("b", "value"), [(2, 2), (3, 4), (5, 16), (6, 30), (12, 132)])
def test_psi(b: int, value: int) -> None:
    assert psi(b) == value


def test_psi_rejects_small_b() -> None:
    with pytest.raises(InputError):
        psi(1)


def test_theoretical_delta() -> None:
    assert theoretical_delta(2, 1.5) == pytest.approx(1 / 6)
    assert theoretical_delta(6, 2.0) == pytest.approx(1 / 360)
    assert theoretical_delta(3, 1.0) == pytest.approx(1 / 12)


def test_exponents() -> None:
    assert weyl_exponent(2, 2, 2.0) == pytest.approx(0.875)
    assert vino_exponent(6, 6, 2.0) == pytest.approx(1 - 1 / 360)


@pytest.mark.parametrize("tau", [1.0, 1.5, 3.0])
def test_selected_exponent_matches_the_main_delta(tau: float) -> None:
    for b in range(2, 13):
        assert selected_exponent(Mode.AUTO, b, b, tau) == pytest.approx(1 - theoretical_delta(b, tau))


def test_improvement_over_earlier_exponents() -> None:
    rows = exponent_table()
    assert [row.b for row in rows] == list(range(2, 13))
    assert all(row.improves for row in rows)
    for b in range(2, 13):
        deltas = prior_deltas(b, 1.0)
        assert deltas.current >= max(deltas.discrepancy, deltas.weyl_plain)


def test_regime_check_examples() -> None:
    assert regime_check(1, 10**4, 1e-2, Mode.WEYL, 2, 2.0)
    assert regime_check(4, 10**6, 1e-300, Mode.WEYL, 2, 2.0)
    N, m, tau = 4096, 3, 1.5
    boundary = N ** (-1 / (tau * 2 ** (m - 1)))
    assert not regime_check(1, N, boundary, Mode.WEYL, m, tau)
    assert regime_check(1, N, boundary * 0.99, Mode.WEYL, m, tau)
    assert not regime_check(1, N, 1.0, Mode.VINO, 3, 2.0)
    assert not regime_check(10**9, 100, 1e-9, Mode.WEYL, 2, 2.0)
    assert regime_check(10**9, 100, 1e-9, Mode.WEYL, 2, 2.0, c0=5.0)


def test_fit_slope() -> None:
    assert fit_slope([10, 100, 1000], [5, 50, 500]) == pytest.approx(1.0)
    assert fit_slope([10, 100], [0, 0]) == 0.0
    with pytest.raises(InputError):
        fit_slope([10], [3])


def test_coupled_ball_experiment_is_sublinear() -> None:
    tau = 2.0
    target = CoupledBallTarget(TorusPoint.of([0.3, 0.6]), tau)
    report = run_experiment(_golden_source(), target, GRID, tau=tau)
    assert report.N_grid == GRID
    assert all(report.in_regime)
    assert report.theoretical_exponent == pytest.approx(0.875)
    assert report.fitted_slope <= 0.875 + 0.1
    assert report.passed
    assert all(math.isfinite(e) for e in report.epsilons)


def test_coupled_ball_near_the_smallest_diophantine_exponent() -> None:
    tau = 1.001
    target = CoupledBallTarget(TorusPoint.of([0.3, 0.6]), tau)
    report = run_experiment(_golden_source(), target, GRID, tau=tau)
    assert report.N_grid == [2**k for k in range(10, 17)]
    assert all(report.in_regime)
    assert report.theoretical_exponent == pytest.approx(weyl_exponent(2, 2, tau))
    assert report.fitted_slope <= weyl_exponent(2, 2, tau) + 0.1
    assert report.passed


def test_full_cube_violates_the_measure_regime() -> None:
    report = run_experiment(_golden_source(), FixedTarget(SemiAlgebraicSet.cube(2)), GRID)
    assert report.counts == GRID
    assert report.fitted_slope == pytest.approx(1.0)
    assert not report.passed
    assert "regime_violated" in report.flags


def test_empty_set_passes_with_zero_slope() -> None:
    report = run_experiment(_golden_source(), FixedTarget(SemiAlgebraicSet.empty(2)), GRID)
    assert report.counts == [0] * len(GRID)
    assert report.fitted_slope == 0.0
    assert report.passed


def test_constant_orbit_is_flagged() -> None:
    source = OrbitSource.of_skew_shift(SkewShiftSystem(2, TorusScalar.of(0)), TorusPoint.zeros(2))
    target = FixedTarget(EpsBall(TorusPoint.zeros(2), 0.01))
    report = run_experiment(source, target, GRID)
    assert report.fitted_slope == pytest.approx(1.0)
    assert not report.passed
    assert "non_diophantine_leading" in report.flags


def test_fixed_ball_calibration_has_unit_slope() -> None:
    target = FixedTarget(EpsBall(TorusPoint.of([0.3, 0.6]), 0.1))
    report = run_experiment(_golden_source(), target, geometric_grid(12, 17), enforce_regime=False)
    assert report.fitted_slope == pytest.approx(1.0, abs=0.05)


def test_polynomial_vector_source_matches_the_skew_shift() -> None:
    sys = SkewShiftSystem(2, parse_frequency(GOLDEN))
    target = CoupledBallTarget(TorusPoint.of([0.3, 0.6]), 2.0)
    from_vector = run_experiment(OrbitSource.of_vector(as_poly_vector(sys, TorusPoint.zeros(2))), target, GRID[:4])
    from_map = run_experiment(_golden_source(), target, GRID[:4])
    assert from_vector.counts == from_map.counts


def test_report_is_independent_of_the_worker_count() -> None:
    target = CoupledBallTarget(TorusPoint.of([0.3, 0.6]), 2.0)
    serial = run_experiment(_golden_source(), target, GRID, workers=1)
    pooled = run_experiment(_golden_source(), target, GRID, workers=4)
    assert serial.to_json() == pooled.to_json()
