from __future__ import annotations

import os


def bootstrap_qt_runtime() -> None:
    """Headless QtCore only: keep Qt quiet and immune to polluted shells."""
    # Data files and stdout must stay byte-stable; Qt chatter goes nowhere.
    os.environ["QT_LOGGING_RULES"] = "*.debug=false;*.info=false;qt.*=false"
    # Guard against Qt runtime pollution from external environments (conda/homebrew).
    for key in ("QT_PLUGIN_PATH", "QT_QPA_PLATFORM_PLUGIN_PATH", "DYLD_LIBRARY_PATH", "DYLD_FRAMEWORK_PATH"):
        os.environ.pop(key, None)
    os.environ.setdefault("QT_QPA_PLATFORM", "offscreen")
