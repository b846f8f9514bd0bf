from __future__ import annotations

import sys

from app.utils.qt_env import bootstrap_qt_runtime

bootstrap_qt_runtime()

from app.cli import main

if __name__ == "__main__":
    sys.exit(main())
