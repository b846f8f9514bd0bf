from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from app.diophantine import GOLDEN, TorusScalar, parse_frequency
from app.setgeom import (
    EpsBall,
    Relation,
    SemiAlgebraicSet,
    ball_hit_report,
    ball_majorant,
    contains,
    fejer_bound,
    fejer_kernel,
    fejer_radius,
    fejer_series,
    grid_cover,
    hit_count,
    load_set,
    majorant_count,
    measure_estimate,
)
from app.skewshift import SkewShiftSystem, TorusPoint, orbit, orbit_array
from app.utils.errors import InputError

SETS_DIR = Path(__file__).resolve().parents[1] / "config" / "sets"


def _disk_or_far_right() -> SemiAlgebraicSet:
    return SemiAlgebraicSet.from_expressions(2, [[("x1**2 + x2**2 - 0.25", "<=")], [("x1 - 0.9", ">=")]])


@pytest.mark.parametrize(("x", "R", "value"), [(0.0, 5, 5.0), (0.5, 2, 0.0), (0.25, 2, 1.0), (3.0, 4, 4.0)])
def test_fejer_kernel_examples(x: float, R: int, value: float) -> None:
    assert fejer_kernel(x, R) == pytest.approx(value, abs=1e-12)


@pytest.mark.parametrize("R", [1, 2, 7, 20])
def test_fejer_kernel_matches_its_fourier_series(R: int) -> None:
    xs = np.linspace(-1.0, 1.0, 1000)
    closed = fejer_kernel(xs, R)
    assert (closed >= 0).all()
    assert np.allclose(closed, fejer_series(xs, R), rtol=0, atol=1e-10)


def test_fejer_kernel_near_the_singularity() -> None:
    assert fejer_kernel(1e-12, 6) == pytest.approx(6.0, rel=1e-9)


def test_fejer_radius() -> None:
    assert fejer_radius(0.1) == 1
    assert fejer_radius(0.05) == 2
    assert fejer_radius(0.01) == 10
    with pytest.raises(InputError):
        fejer_radius(0.2)


@pytest.mark.parametrize("b", [1, 2, 3])
@pytest.mark.parametrize("eps", [0.1, 0.09, 0.05, 0.02, 0.01])
def test_ball_majorant_dominates_the_indicator(b: int, eps: float) -> None:
    rng = np.random.default_rng(100 * b + int(1 / eps))
    # Half the samples near the centre so the indicator is actually exercised.
    points = np.concatenate([rng.random((5000, b)), rng.uniform(-2 * eps, 2 * eps, (5000, b)) % 1.0])
    inside = EpsBall(TorusPoint.zeros(b), eps).contains_array(points)
    assert inside.any()
    assert (inside <= ball_majorant(points, eps) + 1e-12).all()


def test_contains_examples() -> None:
    assert contains(EpsBall(TorusPoint.of([0.0]), 0.1), TorusPoint.of([0.95]))
    half = SemiAlgebraicSet.from_expressions(2, [[("x1 - 1/2", ">=")]])
    assert not contains(half, TorusPoint.of([0.3, 0.8]))
    assert contains(_disk_or_far_right(), TorusPoint.of([0.1, 0.1]))
    assert contains(_disk_or_far_right(), TorusPoint.of([0.95, 0.9]))
    assert not contains(_disk_or_far_right(), TorusPoint.of([0.6, 0.6]))


def test_contains_rejects_dimension_mismatch() -> None:
    with pytest.raises(InputError):
        contains(_disk_or_far_right(), TorusPoint.of([0.1, 0.1, 0.1]))


def test_equality_uses_the_tolerance_band() -> None:
    line = SemiAlgebraicSet.from_expressions(1, [[("x1 - 0.25", "=")]])
    assert contains(line, TorusPoint.of([0.25]))
    assert not contains(line, TorusPoint.of([0.2500001]))


def test_degree_accounting() -> None:
    S = load_set(SETS_DIR / "corners.json")
    assert (S.s, S.d, S.degree_bound) == (5, 2, 10)


def test_hit_count_examples() -> None:
    ball = EpsBall(TorusPoint.of([0.0]), 0.1)
    points = (np.arange(10) * 0.1 + 0.05).reshape(-1, 1)
    assert hit_count(points, ball, 10).count == 2
    assert hit_count(np.zeros((7, 2)), EpsBall(TorusPoint.zeros(2), 0.05), 7).count == 7
    assert hit_count(np.random.default_rng(0).random((50, 2)), SemiAlgebraicSet.empty(2), 50).count == 0


def test_hit_count_reads_orbit_streams() -> None:
    sys = SkewShiftSystem(2, parse_frequency(GOLDEN))
    stream = orbit(TorusPoint.zeros(2), sys, 300)
    report = hit_count(stream, SemiAlgebraicSet.cube(2), 200)
    assert (report.N, report.count) == (200, 200)
    with pytest.raises(InputError):
        hit_count(orbit(TorusPoint.zeros(2), sys, 5), SemiAlgebraicSet.cube(2), 6)


def test_hit_count_is_additive_over_disjoint_clauses() -> None:
    left = SemiAlgebraicSet.from_expressions(2, [[("x1 - 0.3", "<=")]])
    right = SemiAlgebraicSet.from_expressions(2, [[("x1 - 0.6", ">=")]])
    both = SemiAlgebraicSet(2, left.clauses + right.clauses)
    points = orbit_array(TorusPoint.of([0.1, 0.2]), SkewShiftSystem(2, parse_frequency(GOLDEN)), 2000)
    assert hit_count(points, both, 2000).count == (
        hit_count(points, left, 2000).count + hit_count(points, right, 2000).count
    )


def test_fejer_bound_trivial_cases() -> None:
    N = 40
    assert fejer_bound(np.zeros((N, 2)), 0.05) == pytest.approx(N * 9.0)
    assert fejer_bound(np.array([[0.37, 0.81]]), 0.05) >= 1.0
    with pytest.raises(InputError):
        fejer_bound(np.zeros((3, 2)), 0.2)


@pytest.mark.parametrize("eps", [0.05, 0.02])
def test_fejer_bound_dominates_skew_shift_hits(eps: float) -> None:
    sys = SkewShiftSystem(2, parse_frequency(GOLDEN))
    points = orbit_array(TorusPoint.zeros(2), sys, 1000)
    center = TorusPoint.of([0.3, 0.6])
    hits = hit_count(points, EpsBall(center, eps), 1000).count
    middle = majorant_count(points, eps, center)
    bound = fejer_bound(points, eps, center)
    assert hits <= middle + 1e-9
    assert middle <= bound + 1e-9


@pytest.mark.slow
@pytest.mark.parametrize("eps", [0.01, 0.05, 0.09])
def test_fejer_bound_dominates_hits_on_random_orbits(eps: float) -> None:
    rng = np.random.default_rng(int(1000 * eps))
    N = 1000
    for trial in range(20):
        b = 2 + trial % 2
        sys = SkewShiftSystem(b, TorusScalar.of(float(rng.random())))
        points = orbit_array(TorusPoint.of(rng.random(b).tolist()), sys, N)
        center = TorusPoint.of(rng.random(b).tolist())
        report = ball_hit_report(points, EpsBall(center, eps))
        assert report.count <= report.bound + 1e-9


def test_fejer_bound_is_independent_of_the_worker_count() -> None:
    points = np.random.default_rng(4).random((300, 3))
    assert fejer_bound(points, 0.02, workers=1) == fejer_bound(points, 0.02, workers=4)


def test_grid_cover_examples() -> None:
    point = SemiAlgebraicSet.from_expressions(2, [[("x1 - 0.3", "="), ("x2 - 0.7", "=")]])
    assert 1 <= len(grid_cover(point, 0.1)) <= 4
    assert grid_cover(SemiAlgebraicSet.empty(2), 0.1) == []
    half = SemiAlgebraicSet.from_expressions(2, [[("x1 - 1/4", "<=")]])
    eps = 1 / 8
    area_over_cells = 0.25 / eps**2
    assert area_over_cells / 2 <= len(grid_cover(half, eps)) <= 2 * area_over_cells


def test_grid_cover_limits() -> None:
    with pytest.raises(InputError):
        grid_cover(SemiAlgebraicSet.cube(4), 0.1)
    with pytest.raises(InputError):
        grid_cover(SemiAlgebraicSet.cube(2), 1e-4)


@pytest.mark.parametrize("name", ["disk.json", "parabola_band.json", "corners.json"])
def test_grid_cover_contains_sampled_members(name: str) -> None:
    S = load_set(SETS_DIR / name)
    eps = 0.05
    balls = grid_cover(S, eps)
    centers = np.array([ball.center.coords for ball in balls])
    samples = np.random.default_rng(21).random((10_000, S.b))
    members = samples[S.contains_array(samples)]
    assert members.size
    for chunk in np.array_split(members, max(1, len(members) // 500)):
        diff = chunk[:, None, :] - centers[None, :, :]
        diff -= np.rint(diff)
        covered = (np.abs(diff) < eps).all(axis=2).any(axis=1)
        assert covered.all()


def test_measure_estimate_examples() -> None:
    full = measure_estimate(SemiAlgebraicSet.cube(2), 5000, seed=1)
    assert (full.value, full.stderr) == (1.0, 0.0)
    assert measure_estimate(SemiAlgebraicSet.empty(3), 5000, seed=1).value == 0.0
    ball = measure_estimate(EpsBall(TorusPoint.of([0.5]), 0.1), 200_000, seed=3)
    assert abs(ball.value - 0.2) <= 3 * ball.stderr + 1e-12
    with pytest.raises(InputError):
        measure_estimate(SemiAlgebraicSet.cube(2), 10, seed=1)


def test_measure_estimate_is_reproducible(monkeypatch: pytest.MonkeyPatch) -> None:
    S = load_set(SETS_DIR / "disk.json")
    first = measure_estimate(S, 150_000, seed=9)
    monkeypatch.setenv("SKEWSHIFT_WORKERS", "4")
    assert measure_estimate(S, 150_000, seed=9) == first
    assert first.value == pytest.approx(np.pi / 16, abs=4 * first.stderr)


def test_set_json_round_trip(tmp_path: Path) -> None:
    S = _disk_or_far_right()
    path = tmp_path / "set.json"
    path.write_text(json.dumps(S.to_json()), encoding="utf-8")
    loaded = load_set(path)
    points = np.random.default_rng(2).random((500, 2))
    assert np.array_equal(loaded.contains_array(points), S.contains_array(points))


@pytest.mark.parametrize(
    "payload",
    [
        {"schema": 2, "b": 1, "clauses": []},
        {"schema": 1, "b": 1, "clauses": [[{"expr": "sin(x1)", "relation": "<="}]]},
        {"schema": 1, "b": 1, "clauses": [[{"expr": "x1", "relation": "<"}]]},
        {"schema": 1, "clauses": []},
    ],
)
def test_malformed_set_definitions(tmp_path: Path, payload: dict) -> None:
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    with pytest.raises(InputError):
        load_set(path)


def test_relation_parsing() -> None:
    assert Relation.parse("≥") is Relation.GE
    assert Relation.parse("==") is Relation.EQ
