"""INI experiment configuration: one section per command, read through QSettings."""
from __future__ import annotations

import logging
from collections.abc import Mapping
from pathlib import Path
from typing import Any

from PySide6.QtCore import QSettings

from app.utils.errors import InputError

logger = logging.getLogger(__name__)

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _as_text(raw: Any) -> str:
    # QSettings splits "2,4,8" into a list; the parsers downstream want the text back.
    if isinstance(raw, list | tuple):
        return ",".join(str(part).strip() for part in raw)
    return "" if raw is None else str(raw).strip()


def load_config(path: Path) -> dict[str, dict[str, str]]:
    """``{section: {key: text}}`` from an INI file; keys outside a section land in ``general``."""
    path = Path(path)
    if not path.is_file():
        raise InputError(f"config file {path} does not exist")
    settings = QSettings(str(path), QSettings.Format.IniFormat)
    if settings.status() != QSettings.Status.NoError:
        raise InputError(f"config file {path} is not a readable INI file")
    sections: dict[str, dict[str, str]] = {}
    general = {key: _as_text(settings.value(key)) for key in settings.childKeys()}
    if general:
        sections["general"] = general
    for group in settings.childGroups():
        settings.beginGroup(group)
        sections[group] = {key: _as_text(settings.value(key)) for key in settings.childKeys()}
        settings.endGroup()
    return sections


def coerce(raw: str, default: Any, key: str) -> Any:
    """Parse ``raw`` like ``default``; unreadable values fall back to the default."""
    text = raw.strip()
    if isinstance(default, bool):
        lowered = text.lower()
        if lowered in _TRUE:
            return True
        if lowered in _FALSE:
            return False
        logger.warning("config %s=%r is not a boolean; keeping %s", key, raw, default)
        return default
    if isinstance(default, int):
        try:
            return int(text)
        except (TypeError, ValueError):
            logger.warning("config %s=%r is not an integer; keeping %s", key, raw, default)
            return default
    if isinstance(default, float):
        try:
            return float(text)
        except (TypeError, ValueError):
            logger.warning("config %s=%r is not a number; keeping %s", key, raw, default)
            return default
    return text


def merge_params(
    defaults: Mapping[str, Any],
    section: Mapping[str, str],
    flags: Mapping[str, Any],
    command: str,
) -> dict[str, Any]:
    """Flags override config keys, config keys override defaults."""
    params = dict(defaults)
    for key, raw in section.items():
        name = key.replace("-", "_")
        if name not in defaults:
            logger.warning("ignoring unknown key %r in [%s]", key, command)
            continue
        params[name] = coerce(raw, defaults[name], f"{command}/{key}")
    for name, value in flags.items():
        if name in defaults and value is not None:
            params[name] = value
    return params
