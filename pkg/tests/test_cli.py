from __future__ import annotations

from pathlib import Path

import pytest

from app import TOOL_NAME, __version__
from app.cli import (
    Command,
    ExperimentSpec,
    coerce,
    load_config,
    main,
    merge_params,
    parse_amplitudes,
    parse_int_list,
    parse_point,
    parse_polynomial,
)
from app.sublinear import psi, theoretical_delta
from app.utils.errors import InputError
from app.utils.storage import load_report

GOLDEN = "surd:(sqrt(5)-1)/2"


def _rows(path: Path) -> list[dict[str, str]]:
    report = load_report(path)
    assert report is not None
    return report["data"]["rows"]


def test_orbit_writes_points_with_header(tmp_path: Path) -> None:
    out = tmp_path / "orbit.csv"
    assert main(["orbit", "--b", "2", "--omega", GOLDEN, "--n", "100", "--output", str(out)]) == 0
    report = load_report(out)
    assert report is not None
    assert len(report["data"]["rows"]) == 100
    header = report["header"]
    assert header["tool"] == TOOL_NAME
    assert header["version"] == __version__
    assert header["command"] == "orbit"
    assert header["seed"] == 0
    assert header["spec"]["omega"] == GOLDEN
    assert header["spec"]["n"] == 100
    assert report["data"]["rows"][0]["n"] == "1"


def test_orbit_json_format(tmp_path: Path) -> None:
    out = tmp_path / "orbit.json"
    assert main(["orbit", "--n", "5", "--seed", "42", "--output", str(out)]) == 0
    report = load_report(out)
    assert report is not None
    assert report["header"]["seed"] == 42
    assert report["data"]["columns"] == ["n", "x_1", "x_2"]
    assert len(report["data"]["rows"]) == 5


def test_vinogradov_counts_match_closed_form(tmp_path: Path) -> None:
    out = tmp_path / "vino.csv"
    assert main(["vinogradov", "--b", "2", "--rho", "2", "--n-grid", "2,4,8,16", "--output", str(out)]) == 0
    rows = _rows(out)
    assert [int(r["J"]) for r in rows] == [2 * N * N - N for N in (2, 4, 8, 16)]


def test_sublinear_full_cube_is_a_regime_violation(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    out = tmp_path / "sub.csv"
    code = main(
        ["sublinear", "--mode", "weyl", "--b", "2", "--tau", "1.001", "--target", "cube",
         "--n-grid", "64,128,256", "--output", str(out)]
    )
    assert code == 2
    assert out.exists()
    assert "regime" in capsys.readouterr().err
    report = load_report(out)
    assert report is not None
    assert "regime_violated" in report["header"]["summary"]["flags"]


def test_sublinear_fixed_ball_reports_slope(tmp_path: Path) -> None:
    out = tmp_path / "sub.json"
    code = main(
        ["sublinear", "--target", "ball", "--eps", "0.1", "--center", "0.3,0.6",
         "--n-grid", "2^10:15", "--no-enforce-regime", "--output", str(out)]
    )
    assert code == 0
    summary = load_report(out)["header"]["summary"]
    assert summary["fitted_slope"] == pytest.approx(1.0, abs=0.1)
    assert "theoretical_exponent" in summary


def test_transport_run(tmp_path: Path) -> None:
    out = tmp_path / "transport.csv"
    code = main(["transport", "--L", "60", "--t-grid", "1,2,3,4,5,6,7,8", "--output", str(out)])
    assert code == 0
    report = load_report(out)
    assert report is not None
    assert [r["T"] for r in report["data"]["rows"]][:3] == ["1", "2", "3"]
    fit = report["header"]["summary"]["fit"]
    assert fit["slope"] == pytest.approx(2.0, abs=0.05)
    assert "large_coupling_slope_ok" not in report["header"]["summary"]


def test_transport_large_coupling_reports_a_caveated_slope(tmp_path: Path) -> None:
    out = tmp_path / "localized.csv"
    assert main(["transport", "--lambda", "10", "--p", "2", "--t-grid", "1,2,3,5,8,13,20,30,50,75,100",
                 "--output", str(out)]) == 0
    summary = load_report(out)["header"]["summary"]
    assert summary["config"]["lambda"] == 10.0
    assert summary["fit"]["model"] == "poly"
    assert summary["fit"]["slope"] <= 0.5
    assert summary["large_coupling_slope_ok"] is True
    assert "not constructive" in summary["caveat"]


def test_dioph_and_fejer_runs(tmp_path: Path) -> None:
    dioph = tmp_path / "dioph.csv"
    assert main(["dioph", "--k", "10000", "--n-grid", "10,100,1000", "--output", str(dioph)]) == 0
    assert all(r["ok"] == "true" for r in _rows(dioph))
    fejer = tmp_path / "fejer.csv"
    assert main(["fejer", "--n", "500", "--eps", "0.05", "--output", str(fejer)]) == 0
    assert load_report(fejer)["header"]["summary"]["within_bound"] is True


def test_weyl_flags_rational_leading_coefficient(tmp_path: Path) -> None:
    out = tmp_path / "weyl.csv"
    assert main(["weyl", "--coeffs", "0,0,dec:0.5", "--n-grid", "8,16", "--output", str(out)]) == 2
    assert out.exists()


DETERMINISM_ARGS = {
    "orbit": ["--n", "200"],
    "dioph": ["--k", "10000", "--n-grid", "10,100,1000"],
    "expsum": ["--n-grid", "10,100,1000"],
    "weyl": ["--n-grid", "16,32,64"],
    "vinogradov": ["--n-grid", "2,4,8"],
    "fejer": ["--n", "500", "--eps", "0.05"],
    "sublinear": ["--target", "ball", "--eps", "0.1", "--n-grid", "2^10:15", "--no-enforce-regime"],
    "transport": ["--L", "40", "--coupling", "2", "--t-grid", "1,2,3,4,5,6,7,8"],
}


@pytest.mark.parametrize("command", sorted(DETERMINISM_ARGS))
def test_outputs_are_byte_identical_across_runs_and_workers(tmp_path: Path, command: str) -> None:
    paths = []
    for run, workers in enumerate(("1", "1", "4")):
        out = tmp_path / f"{command}-{run}.csv"
        assert main([command, *DETERMINISM_ARGS[command], "--workers", workers, "--output", str(out)]) == 0
        paths.append(out)
    first = paths[0].read_bytes()
    assert all(p.read_bytes() == first for p in paths[1:])


@pytest.mark.parametrize(
    "argv",
    [
        ["orbit", "--omega", "poly:1"],
        ["orbit", "--b", "1"],
        ["nonsense"],
        ["vinogradov", "--n-grid", "10000", "--rho", "3"],
        ["orbit", "--n", "many"],
        ["transport", "--phi", "0"],
    ],
)
def test_input_errors_exit_with_one(tmp_path: Path, argv: list[str], capsys: pytest.CaptureFixture[str]) -> None:
    assert main([*argv, "--output", str(tmp_path / "out.csv")]) == 1
    assert capsys.readouterr().err.strip()


def test_infeasible_size_message(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    main(["vinogradov", "--n-grid", "10000", "--rho", "3", "--output", str(tmp_path / "v.csv")])
    assert "exceeds" in capsys.readouterr().err


def test_config_sections_and_flag_precedence(tmp_path: Path) -> None:
    ini = tmp_path / "run.ini"
    ini.write_text("[vinogradov]\nb=2\nrho=2\nn_grid=2,3\nepsilon=oops\n", encoding="utf-8")
    sections = load_config(ini)
    assert sections["vinogradov"]["n_grid"] == "2,3"
    out = tmp_path / "vino.csv"
    assert main(["vinogradov", "--config", str(ini), "--rho", "1", "--output", str(out)]) == 0
    header = load_report(out)["header"]
    assert header["spec"]["rho"] == 1
    assert header["spec"]["n_grid"] == "2,3"
    assert header["spec"]["epsilon"] == 0.1


def test_missing_config_is_an_input_error(tmp_path: Path) -> None:
    assert main(["orbit", "--config", str(tmp_path / "none.ini"), "--output", str(tmp_path / "o.csv")]) == 1


def test_coerce_is_tolerant() -> None:
    assert coerce("7", 1, "k") == 7
    assert coerce("x", 1, "k") == 1
    assert coerce("2.5", 1.0, "k") == 2.5
    assert coerce("yes", False, "k") is True
    assert coerce("off", True, "k") is False
    assert coerce("maybe", True, "k") is True


def test_merge_params_precedence() -> None:
    defaults = {"n": 10, "tau": 2.0}
    merged = merge_params(defaults, {"n": "20", "stray": "1"}, {"tau": 3.0, "n": None}, "orbit")
    assert merged == {"n": 20, "tau": 3.0}


def test_report_aggregates_runs(tmp_path: Path) -> None:
    runs = tmp_path / "runs"
    assert main(["vinogradov", "--n-grid", "2,4", "--output", str(runs / "vino.csv")]) == 0
    assert main(
        ["sublinear", "--target", "ball", "--eps", "0.1", "--n-grid", "2^10:15", "--no-enforce-regime",
         "--output", str(runs / "sub.json")]
    ) == 0
    out = tmp_path / "report.json"
    assert main(["report", str(runs), "--bs", "2:8", "--taus", "1.001,2", "--output", str(out)]) == 0
    data = load_report(out)["data"]
    commands = sorted(run["command"] for run in data["runs"])
    assert commands == ["sublinear", "vinogradov"]
    sub = next(run for run in data["runs"] if run["command"] == "sublinear")
    assert "fitted_slope" in sub and "theoretical_exponent" in sub
    table = {(row["b"], row["tau"]): row for row in data["exponents"]}
    assert len(table) == 14
    for b in range(2, 9):
        for tau in (1.001, 2.0):
            assert table[(b, tau)]["psi"] == psi(b)
            assert table[(b, tau)]["delta"] == theoretical_delta(b, tau)


def test_report_without_inputs_fails(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["report", "--output", str(tmp_path / "r.json")]) == 1
    assert "run outputs" in capsys.readouterr().err
    empty = tmp_path / "empty"
    empty.mkdir()
    assert main(["report", str(empty), "--output", str(tmp_path / "r.json")]) == 1


def test_experiment_spec_validation() -> None:
    with pytest.raises(InputError):
        ExperimentSpec("plot")
    with pytest.raises(InputError):
        ExperimentSpec(Command.ORBIT, seed=-1)
    with pytest.raises(InputError):
        ExperimentSpec(Command.ORBIT, fmt="xml")
    assert ExperimentSpec(Command.WEYL, fmt="json").path == Path("results") / "weyl.json"


def test_text_parsers() -> None:
    assert parse_int_list("2,4,8", "n") == [2, 4, 8]
    assert parse_int_list("3:6", "n") == [3, 4, 5, 6]
    assert parse_int_list("2^10:12", "n") == [1024, 2048, 4096]
    with pytest.raises(InputError):
        parse_int_list("a,b", "n")
    assert parse_point("", 3, "x0").coords == (0.0, 0.0, 0.0)
    assert parse_point("0.25,0.5", 2, "x0").coords == (0.25, 0.5)
    with pytest.raises(InputError):
        parse_point("0.1", 2, "x0")
    assert parse_polynomial("0,dec:0.5,1.25").degree == 2
    assert parse_amplitudes("0:1, 2:0.5j") == ((0, 1 + 0j), (2, 0.5j))
