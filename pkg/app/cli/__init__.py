"""Command-line front end: reproducible experiment runs with CSV/JSON reports."""
from .commands import DEFAULTS, EXIT_INPUT, EXIT_OK, EXIT_REGIME, HANDLERS, Table
from .config import coerce, load_config, merge_params
from .main import build_parser, main, report, run, spec_from_args
from .report import build_report, exponent_rows
from .spec import (
    Command,
    ExperimentSpec,
    OutputFormat,
    parse_amplitudes,
    parse_float_list,
    parse_int_list,
    parse_point,
    parse_polynomial,
)

__all__ = [
    "DEFAULTS",
    "EXIT_INPUT",
    "EXIT_OK",
    "EXIT_REGIME",
    "HANDLERS",
    "Command",
    "ExperimentSpec",
    "OutputFormat",
    "Table",
    "build_parser",
    "build_report",
    "coerce",
    "exponent_rows",
    "load_config",
    "main",
    "merge_params",
    "parse_amplitudes",
    "parse_float_list",
    "parse_int_list",
    "parse_point",
    "parse_polynomial",
    "report",
    "run",
    "spec_from_args",
]
