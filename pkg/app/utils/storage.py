"""Report files: CSV series and JSON documents, both with a header block."""
from __future__ import annotations

import csv
import io
import json
import math
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

SCHEMA_VERSION = 1
HEADER_PREFIX = "# "


def format_value(value: Any, digits: int = 12) -> str:
    """Deterministic text for a table cell."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.{digits}g}"
    return str(value)


def _jsonable(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return format_value(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_jsonable(v) for v in value]
    return value


def round_floats(value: Any, digits: int = 12) -> Any:
    """Floats rounded to ``digits`` significant digits, recursively; other values unchanged."""
    if isinstance(value, float) and math.isfinite(value):
        return float(f"{value:.{digits}g}")
    if isinstance(value, dict):
        return {k: round_floats(v, digits) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [round_floats(v, digits) for v in value]
    return value


def dumps_json(payload: dict[str, Any]) -> str:
    return json.dumps(_jsonable(payload), ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def render_csv(
    header: dict[str, Any],
    columns: Sequence[str],
    rows: Iterable[Sequence[Any]],
    digits: int = 12,
) -> str:
    buffer = io.StringIO()
    for key in sorted(header):
        value = header[key]
        text = json.dumps(_jsonable(value), ensure_ascii=False, sort_keys=True) if isinstance(value, dict) else format_value(value)
        buffer.write(f"{HEADER_PREFIX}{key}={text}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(cell, digits) for cell in row])
    return buffer.getvalue()


def write_text(path: Path, text: str) -> None:
    """Write a report; creates the parent directory. Failures propagate to the caller."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        f.write(text)


def write_csv(
    path: Path,
    header: dict[str, Any],
    columns: Sequence[str],
    rows: Iterable[Sequence[Any]],
    digits: int = 12,
) -> None:
    write_text(path, render_csv(header, columns, rows, digits))


def write_json(path: Path, header: dict[str, Any], data: dict[str, Any]) -> None:
    write_text(path, dumps_json({"header": header, "data": data}))


def _parse_header_value(raw: str) -> Any:
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def load_report(path: Path) -> dict[str, Any] | None:
    """Load a JSON or CSV report. Returns None when missing or malformed."""
    if not path.exists():
        return None
    try:
        text = path.read_text(encoding="utf-8")
    except OSError:
        return None
    if path.suffix.lower() == ".json":
        try:
            parsed = json.loads(text)
        except json.JSONDecodeError:
            return None
        if not isinstance(parsed, dict) or "header" not in parsed:
            return None
        return {"header": parsed.get("header", {}), "data": parsed.get("data", {}), "path": str(path)}

    header: dict[str, Any] = {}
    body: list[str] = []
    for raw in text.splitlines():
        if raw.startswith(HEADER_PREFIX):
            key, sep, value = raw[len(HEADER_PREFIX):].partition("=")
            if sep:
                header[key.strip()] = _parse_header_value(value.strip())
            continue
        if raw.strip():
            body.append(raw)
    if not body:
        return None
    reader = csv.DictReader(body)
    rows = [dict(row) for row in reader]
    return {"header": header, "data": {"rows": rows}, "path": str(path)}
