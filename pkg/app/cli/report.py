"""Summary report: collect run outputs and add the exponent table."""
from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

from app.sublinear import exponent_table, prior_deltas, psi, theoretical_delta, vino_exponent, weyl_exponent
from app.utils.errors import InputError
from app.utils.storage import load_report

logger = logging.getLogger(__name__)

REPORT_SUFFIXES = (".csv", ".json")
_SUMMARY_KEYS = ("fitted_slope", "theoretical_exponent", "pass", "max_ratio", "flags", "fit", "within_bound")


def _expand(inputs: Iterable[Path]) -> list[Path]:
    files: list[Path] = []
    for path in inputs:
        if path.is_dir():
            files.extend(sorted(p for p in path.iterdir() if p.suffix.lower() in REPORT_SUFFIXES))
        else:
            files.append(path)
    return files


def _run_entry(loaded: dict[str, Any]) -> dict[str, Any]:
    header = loaded["header"]
    summary = header.get("summary", {}) if isinstance(header.get("summary"), dict) else {}
    entry: dict[str, Any] = {
        "path": loaded["path"],
        "command": header.get("command", ""),
        "seed": header.get("seed"),
        "version": header.get("version", ""),
    }
    entry.update({key: summary[key] for key in _SUMMARY_KEYS if key in summary})
    return entry


def exponent_rows(bs: Sequence[int], taus: Sequence[float]) -> list[dict[str, Any]]:
    """ψ(b), δ and both sublinear exponents (with m = b) for every (b, τ)."""
    rows = []
    for b in bs:
        for tau in taus:
            priors = prior_deltas(b, tau)
            rows.append(
                {
                    "b": b,
                    "tau": tau,
                    "psi": psi(b),
                    "delta": theoretical_delta(b, tau),
                    "weyl_exponent": weyl_exponent(b, b, tau),
                    "vino_exponent": vino_exponent(b, b, tau),
                    "delta_discrepancy": priors.discrepancy,
                    "delta_weyl_plain": priors.weyl_plain,
                    "delta_long_range_prior": priors.long_range_prior,
                }
            )
    return rows


def build_report(inputs: Sequence[Path], bs: Sequence[int], taus: Sequence[float]) -> dict[str, Any]:
    """Aggregate every readable run output; raises when none is found."""
    if not inputs:
        raise InputError("report needs run outputs: pass one or more *.csv / *.json files or directories holding them")
    files = _expand(inputs)
    runs: list[dict[str, Any]] = []
    skipped: list[str] = []
    for path in files:
        loaded = load_report(path)
        if loaded is None or loaded["header"].get("command") in (None, "report"):
            skipped.append(str(path))
            continue
        runs.append(_run_entry(loaded))
    if not runs:
        expected = ", ".join(str(p) for p in files) or ", ".join(str(p) for p in inputs)
        raise InputError(f"no run outputs found; expected readable report files among: {expected}")
    if skipped:
        logger.warning("skipped %d unreadable inputs", len(skipped))
    return {
        "runs": runs,
        "skipped": skipped,
        "exponents": exponent_rows(bs, taus),
        "improvement": [row._asdict() for row in exponent_table(list(bs))],
    }
