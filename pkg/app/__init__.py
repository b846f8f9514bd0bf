from __future__ import annotations

TOOL_NAME = "SkewShiftLab"
__version__ = "v0.1.0"
