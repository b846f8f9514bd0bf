"""``skewshift`` command line: parse flags, merge the INI config, run, write the report."""
from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from app import TOOL_NAME, __version__
from app.utils.errors import HypothesisError, InputError, SkewShiftLabError
from app.utils.qt_env import bootstrap_qt_runtime
from app.utils.storage import round_floats, write_csv, write_json

from .commands import DEFAULTS, EXIT_INPUT, EXIT_OK, EXIT_REGIME, HANDLERS
from .config import load_config, merge_params
from .report import build_report
from .spec import Command, ExperimentSpec, OutputFormat, parse_float_list, parse_int_list

logger = logging.getLogger(__name__)

FLAG_HELP = {
    "b": "torus dimension b (2..12)",
    "omega": "frequency descriptor, e.g. surd:(sqrt(5)-1)/2 or dec:0.375",
    "alpha": "frequency descriptor",
    "x0": "start point, comma-separated coordinates (default: origin)",
    "n": "number of orbit points",
    "tau": "Diophantine exponent τ",
    "k": "search depth K for the empirical constant γ",
    "depth": "continued-fraction depth",
    "n_grid": "sizes N: 2,4,8 or lo:hi or 2^lo:hi",
    "h_grid": "H values for the min-sum check (optional)",
    "coeffs": "polynomial coefficients c0,c1,... (frequency descriptors)",
    "rho": "number of variables ρ on each side",
    "epsilon": "ε in the mean-value ratio",
    "center": "ball centre, comma-separated (default: all 1/2)",
    "eps": "ball radius ε (sup norm)",
    "set": "semi-algebraic set JSON file",
    "mode": "weyl, vino or auto",
    "target": "coupled, ball, cube or set",
    "ball_scale": "radius prefactor of the coupled ball",
    "slack": "allowed excess of the fitted slope over the exponent",
    "c0": "complexity constant in log B ≤ c0 log N",
    "enforce_regime": "fit only sizes inside the measure regime",
    "half_width": "lattice half-width L (sites -L..L)",
    "kernel": "nearest or exponential",
    "amplitude": "kernel amplitude C",
    "decay": "kernel decay rate c",
    "coupling": "coupling λ",
    "potential": "sampling function in x1..xb (default cos(2*pi*xb))",
    "phi": "initial state as site:amplitude pairs",
    "p": "moment order",
    "t_grid": "times T, comma-separated",
    "averaged": "Abel-averaged moments",
    "model": "growth model: poly or loglog",
    "bs": "dimensions for the exponent table",
    "taus": "τ values for the exponent table",
}


# INI keys are case-insensitive; the single-letter spellings live on as flag aliases only.
FLAG_ALIASES = {"coupling": ("--lambda",), "half_width": ("--L",), "amplitude": ("--C",), "decay": ("--c",)}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise InputError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="skewshift", description=f"{TOOL_NAME} experiments", allow_abbrev=False)
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for command in Command:
        cmd = sub.add_parser(command.value, allow_abbrev=False)
        cmd.add_argument("--config", type=Path, help="INI file; the section named after the command is read")
        cmd.add_argument("--seed", type=int, default=0, help="64-bit seed recorded in the output header")
        cmd.add_argument("--output", type=Path, help="report path (default results/<command>.<format>)")
        cmd.add_argument("--format", choices=[f.value for f in OutputFormat], help="csv or json")
        cmd.add_argument("--workers", type=int, help="worker threads (default $SKEWSHIFT_WORKERS or 1)")
        cmd.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
        for key, default in DEFAULTS[command.value].items():
            if key == "inputs":
                cmd.add_argument("inputs", nargs="*", type=Path, help="run outputs or directories")
                continue
            flag = "--" + key.replace("_", "-")
            names = [flag, *FLAG_ALIASES.get(key, ())]
            if isinstance(default, bool):
                cmd.add_argument(*names, dest=key, action=argparse.BooleanOptionalAction, default=None,
                                 help=FLAG_HELP.get(key))
            else:
                cmd.add_argument(*names, dest=key, type=type(default), default=None,
                                 help=FLAG_HELP.get(key))
    return parser


def spec_from_args(args: argparse.Namespace) -> ExperimentSpec:
    command = args.command
    section: dict[str, str] = {}
    if args.config is not None:
        section = load_config(args.config).get(command, {})
    flags = {key: getattr(args, key, None) for key in DEFAULTS[command]}
    if command == Command.REPORT.value:
        flags["inputs"] = ",".join(str(p) for p in args.inputs) or None
    params = merge_params(DEFAULTS[command], section, flags, command)
    fmt = args.format
    if fmt is None:
        suffix = args.output.suffix.lower().lstrip(".") if args.output is not None else ""
        fmt = suffix if suffix in {f.value for f in OutputFormat} else OutputFormat.CSV.value
    if command == Command.REPORT.value:
        fmt = OutputFormat.JSON.value
    return ExperimentSpec(Command(command), params, args.seed, args.output, OutputFormat(fmt))


def _write(spec: ExperimentSpec, header: dict[str, Any], columns: list[str], rows: list[list[Any]],
           digits: int) -> Path:
    path = spec.path
    if spec.fmt is OutputFormat.JSON:
        write_json(path, header, {"columns": columns, "rows": rows})
    else:
        write_csv(path, header, columns, rows, digits)
    return path


def run(spec: ExperimentSpec, workers: int | None = None) -> int:
    """Execute one experiment and write its report; returns the exit code."""
    if spec.command is Command.REPORT:
        return report(spec)
    table = HANDLERS[spec.command.value](spec, workers)
    header = {**spec.header(), "summary": round_floats(table.summary, table.digits)}
    path = _write(spec, header, table.columns, table.rows, table.digits)
    logger.info("%s: wrote %d rows to %s", spec.command.value, len(table.rows), path)
    if table.code == EXIT_REGIME:
        note = table.summary.get("note") or "hypothesis regime violated"
        print(f"{spec.command.value}: {note} (data written to {path})", file=sys.stderr)
    return table.code


def report(spec: ExperimentSpec) -> int:
    params = dict(spec.params)
    inputs = [Path(p) for p in str(params["inputs"]).split(",") if p.strip()]
    bs = parse_int_list(params["bs"], "bs")
    taus = parse_float_list(params["taus"], "taus")
    summary = build_report(inputs, bs, taus)
    path = spec.path
    write_json(path, spec.header(), summary)
    logger.info("report: %d runs summarised in %s", len(summary["runs"]), path)
    return EXIT_OK


def _configure_logging(verbose: bool) -> None:
    root = logging.getLogger()
    if not root.handlers:
        logging.basicConfig(stream=sys.stderr, format="[%(levelname)s] %(name)s: %(message)s")
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)


def main(argv: Sequence[str] | None = None) -> int:
    bootstrap_qt_runtime()
    try:
        args = build_parser().parse_args(argv)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _configure_logging(args.verbose)
    try:
        return run(spec_from_args(args), args.workers)
    except HypothesisError as exc:
        print(f"{args.command}: hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SkewShiftLabError, OSError) as exc:
        print(f"{args.command} failed: {exc}", file=sys.stderr)
        return EXIT_INPUT
