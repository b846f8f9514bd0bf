"""One handler per command: resolved parameters in, a report table out."""
from __future__ import annotations

import logging
from collections.abc import Callable
from pathlib import Path
from typing import Any, NamedTuple

from app.diophantine import (
    GOLDEN,
    dcweyl_bound,
    diophantine_profile,
    find_denominator,
    min_sum,
    parse_frequency,
)
from app.expsum import exp_sum, weyl_sweep
from app.setgeom import (
    EpsBall,
    SemiAlgebraicSet,
    ball_hit_report,
    hit_count,
    load_set,
    majorant_count,
    measure_estimate,
)
from app.skewshift import ORBIT_DIGITS, SkewShiftSystem, orbit_array
from app.sublinear import (
    DEFAULT_BALL_SCALE,
    DEFAULT_SLACK,
    CoupledBallTarget,
    FixedTarget,
    OrbitSource,
    geometric_grid,
    run_experiment,
)
from app.transport import GrowthModel, Kernel, KernelProfile, Potential, TransportConfig, growth_fit, moment_series
from app.utils.errors import HypothesisError, InputError
from app.vinogradov import bdg_ratio, vinogradov_count

from .spec import (
    ExperimentSpec,
    parse_amplitudes,
    parse_float_list,
    parse_int_list,
    parse_point,
    parse_polynomial,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_REGIME = 2

LARGE_COUPLING = 10.0
LARGE_COUPLING_SLOPE = 0.5
MEASURE_SAMPLES = 200_000


class Table(NamedTuple):
    columns: list[str]
    rows: list[list[Any]]
    summary: dict[str, Any]
    code: int = EXIT_OK
    digits: int = 12


_ORBIT = {"b": 2, "omega": GOLDEN, "x0": ""}

DEFAULTS: dict[str, dict[str, Any]] = {
    "orbit": {**_ORBIT, "n": 100},
    "dioph": {"alpha": GOLDEN, "tau": 1.001, "k": 100_000, "depth": 40, "n_grid": "10,100,1000,10000", "h_grid": ""},
    "expsum": {"coeffs": f"0,0,{GOLDEN}", "n_grid": "10,100,1000,10000"},
    "weyl": {"coeffs": f"0,0,{GOLDEN}", "n_grid": "16,32,64,128,256,512"},
    "vinogradov": {"b": 2, "rho": 2, "n_grid": "2,4,8,16", "epsilon": 0.1},
    "fejer": {**_ORBIT, "n": 1000, "center": "", "eps": 0.05, "set": ""},
    "sublinear": {
        **_ORBIT,
        "mode": "auto",
        "tau": 1.001,
        "target": "coupled",
        "center": "",
        "eps": 0.1,
        "ball_scale": DEFAULT_BALL_SCALE,
        "set": "",
        "n_grid": "2^10:16",
        "slack": DEFAULT_SLACK,
        "c0": 1.0,
        "enforce_regime": True,
    },
    "transport": {
        **_ORBIT,
        "x0": "0.1,0.2",
        "half_width": 100,
        "kernel": KernelProfile.NEAREST.value,
        "amplitude": 1.0,
        "decay": 1.0,
        "coupling": 0.0,
        "potential": "",
        "phi": "0:1",
        "p": 2.0,
        "t_grid": "1,2,3,5,8,13,20,30,50,75,100",
        "averaged": False,
        "model": GrowthModel.POLY.value,
    },
    "report": {"inputs": "", "bs": "2:8", "taus": "1.001,2"},
}


def _system(params: dict[str, Any]) -> tuple[SkewShiftSystem, Any]:
    system = SkewShiftSystem(int(params["b"]), parse_frequency(str(params["omega"])))
    return system, parse_point(params["x0"], system.b, "x0")


def run_orbit(spec: ExperimentSpec, workers: int | None) -> Table:
    params = dict(spec.params)
    system, x0 = _system(params)
    points = orbit_array(x0, system, int(params["n"]))
    columns = ["n", *(f"x_{i}" for i in range(1, system.b + 1))]
    rows = [[n, *row] for n, row in enumerate(points.tolist(), start=1)]
    return Table(columns, rows, {"points": len(rows)}, digits=ORBIT_DIGITS)


def run_dioph(spec: ExperimentSpec, workers: int | None) -> Table:
    params = dict(spec.params)
    alpha, tau = str(params["alpha"]), float(params["tau"])
    profile = diophantine_profile(alpha, tau, int(params["k"]), int(params["depth"]))
    code = EXIT_OK
    rows: list[list[Any]] = []
    for N in parse_int_list(params["n_grid"], "n_grid"):
        lower = (profile.gamma_emp * N) ** (1 / tau)
        try:
            q = find_denominator(profile, N)
        except HypothesisError as exc:
            logger.warning("N=%d: %s", N, exc)
            rows.append([N, "", lower, False])
            code = EXIT_REGIME
            continue
        rows.append([N, q, lower, lower < q <= N])
    summary: dict[str, Any] = {
        "alpha": alpha,
        "tau": tau,
        "gamma_emp": profile.gamma_emp,
        "terminated": profile.terminated,
        "convergents": [[c.p, c.q, c.exact] for c in profile.approximants],
    }
    if str(params["h_grid"]).strip():
        grid = []
        for H in parse_int_list(params["h_grid"], "h_grid"):
            for N, *_ in rows:
                value = min_sum(alpha, H, N)
                bound = dcweyl_bound(profile.gamma_emp, tau, H, N)
                grid.append({"H": H, "N": N, "min_sum": value, "bound": bound, "ratio": value / bound})
        summary["min_sum_grid"] = grid
        summary["max_ratio"] = max(row["ratio"] for row in grid)
    return Table(["N", "q", "lower", "ok"], rows, summary, code)


def run_expsum(spec: ExperimentSpec, workers: int | None) -> Table:
    params = dict(spec.params)
    P = parse_polynomial(params["coeffs"])
    rows = []
    for N in parse_int_list(params["n_grid"], "n_grid"):
        result = exp_sum(P, N)
        rows.append([N, result.value.real, result.value.imag, result.magnitude])
    return Table(["N", "real", "imag", "magnitude"], rows, {"degree": P.degree, "coeffs": params["coeffs"]})


def run_weyl(spec: ExperimentSpec, workers: int | None) -> Table:
    params = dict(spec.params)
    P = parse_polynomial(params["coeffs"])
    sweep = weyl_sweep(P, parse_int_list(params["n_grid"], "n_grid"), workers)
    rows = [list(row) for row in sweep]
    diophantine = all(row.diophantine for row in sweep)
    summary = {"degree": P.degree, "max_ratio": max(row.ratio for row in sweep), "diophantine": diophantine}
    if not diophantine:
        summary["flags"] = ["non_diophantine_leading"]
    return Table(["N", "magnitude", "rhs", "ratio", "diophantine"], rows, summary, EXIT_OK if diophantine else EXIT_REGIME)


def run_vinogradov(spec: ExperimentSpec, workers: int | None) -> Table:
    params = dict(spec.params)
    b, rho, epsilon = int(params["b"]), int(params["rho"]), float(params["epsilon"])
    rows = []
    for N in parse_int_list(params["n_grid"], "n_grid"):
        count = vinogradov_count(N, b, rho, workers)
        rows.append([N, count.J, count.diagonal, bdg_ratio(count, epsilon)])
    summary = {"b": b, "rho": rho, "epsilon": epsilon, "max_ratio": max(row[3] for row in rows)}
    return Table(["N", "J", "diagonal", "bdg_ratio"], rows, summary)


def run_fejer(spec: ExperimentSpec, workers: int | None) -> Table:
    params = dict(spec.params)
    system, x0 = _system(params)
    N = int(params["n"])
    points = orbit_array(x0, system, N)
    set_path = str(params["set"]).strip()
    if set_path:
        S = load_set(Path(set_path))
        if S.b != system.b:
            raise InputError(f"set {set_path} lives in dimension {S.b}, the orbit in {system.b}")
        report = hit_count(points, S, N)
        estimate = measure_estimate(S, MEASURE_SAMPLES, spec.seed, workers)
        rows = [[N, report.count, estimate.value, estimate.stderr]]
        summary = {"set": S.name, "s": S.s, "d": S.d, "hit_fraction": report.count / N}
        return Table(["N", "count", "measure", "measure_stderr"], rows, summary)
    ball = EpsBall(parse_point(params["center"], system.b, "center", fill=0.5), float(params["eps"]))
    report = ball_hit_report(points, ball, workers)
    majorant = majorant_count(points, ball.eps, ball.center)
    rows = [[N, report.count, majorant, report.bound, report.ratio]]
    summary = {"eps": ball.eps, "measure": ball.measure, "within_bound": report.count <= report.bound}
    return Table(["N", "count", "majorant", "bound", "ratio"], rows, summary)


def _sublinear_target(spec: ExperimentSpec, b: int) -> Any:
    params = dict(spec.params)
    kind = str(params["target"]).strip().lower()
    if kind == "coupled":
        center = parse_point(params["center"], b, "center", fill=0.5)
        return CoupledBallTarget(center, float(params["tau"]), float(params["ball_scale"]))
    if kind == "ball":
        center = parse_point(params["center"], b, "center", fill=0.5)
        return FixedTarget(EpsBall(center, float(params["eps"])), spec.seed)
    if kind == "cube":
        return FixedTarget(SemiAlgebraicSet.cube(b), spec.seed)
    if kind == "set":
        return FixedTarget(load_set(Path(str(params["set"]))), spec.seed)
    raise InputError(f"unknown sublinear target {kind!r} (expected coupled, ball, cube or set)")


def run_sublinear(spec: ExperimentSpec, workers: int | None) -> Table:
    params = dict(spec.params)
    system, x0 = _system(params)
    grid = parse_int_list(params["n_grid"], "n_grid") if str(params["n_grid"]).strip() else geometric_grid(10, 16)
    report = run_experiment(
        OrbitSource.of_skew_shift(system, x0),
        _sublinear_target(spec, system.b),
        grid,
        mode=str(params["mode"]),
        tau=float(params["tau"]),
        slack=float(params["slack"]),
        c0=float(params["c0"]),
        enforce_regime=bool(params["enforce_regime"]),
        workers=workers,
    )
    summary = {
        key: value
        for key, value in report.to_json().items()
        if key not in {"N_grid", "counts", "in_regime", "etas", "epsilons"}
    }
    violated = "regime_violated" in report.flags or "non_diophantine_leading" in report.flags
    if violated:
        summary["note"] = "hypothesis regime violated; counts are reported but the exponent check does not apply"
    rows = [list(row) for row in report.rows()]
    return Table(["N", "count", "in_regime", "eta", "eps"], rows, summary, EXIT_REGIME if violated else EXIT_OK)


def run_transport(spec: ExperimentSpec, workers: int | None) -> Table:
    params = dict(spec.params)
    system, x0 = _system(params)
    profile = KernelProfile.parse(str(params["kernel"]))
    kernel = Kernel(profile, float(params["amplitude"]), float(params["decay"]))
    potential = Potential(str(params["potential"]), system.b) if str(params["potential"]).strip() else None
    cfg = TransportConfig(
        int(params["half_width"]), system, x0, kernel, float(params["coupling"]), potential, parse_amplitudes(params["phi"])
    )
    p = float(params["p"])
    series = moment_series(cfg, parse_float_list(params["t_grid"], "t_grid"), p, bool(params["averaged"]), workers)
    summary: dict[str, Any] = {"config": cfg.to_json()}
    try:
        fit = growth_fit(series, str(params["model"]))
    except ValueError as exc:
        summary["fit"] = None
        summary["fit_note"] = str(exc)
    else:
        summary["fit"] = fit.to_json()
        if fit.model is GrowthModel.POLY and cfg.coupling >= LARGE_COUPLING and p == 2.0:
            summary["large_coupling_slope_ok"] = fit.slope <= LARGE_COUPLING_SLOPE
            summary["caveat"] = "descriptive only: the coupling threshold of the localization theorem is not constructive"
    rows = [[*row, mass] for row, mass in zip(series.rows(), series.boundary_mass)]
    return Table(["T", "value", "p", "averaged", "boundary_mass"], rows, summary)


HANDLERS: dict[str, Callable[[ExperimentSpec, int | None], Table]] = {
    "orbit": run_orbit,
    "dioph": run_dioph,
    "expsum": run_expsum,
    "weyl": run_weyl,
    "vinogradov": run_vinogradov,
    "fejer": run_fejer,
    "sublinear": run_sublinear,
    "transport": run_transport,
}
