"""Worker pool for embarrassingly parallel sweeps (QThreadPool + QRunnable)."""
from __future__ import annotations

import logging
import os
from collections.abc import Callable, Iterable
from typing import Any, TypeVar

from PySide6.QtCore import QRunnable, QThreadPool

T = TypeVar("T")
R = TypeVar("R")

WORKERS_ENV = "SKEWSHIFT_WORKERS"

logger = logging.getLogger(__name__)


def worker_count(requested: int | None = None) -> int:
    """Resolve the pool size: explicit argument, then the environment, then 1."""
    if requested is not None:
        return max(1, int(requested))
    raw = os.environ.get(WORKERS_ENV, "").strip()
    if not raw:
        return 1
    try:
        return max(1, min(256, int(raw)))
    except (TypeError, ValueError):
        logger.warning("ignoring %s=%r (not an integer)", WORKERS_ENV, raw)
        return 1


class _Task(QRunnable):
    def __init__(
        self,
        fn: Callable[[Any], Any],
        index: int,
        item: Any,
        results: list[Any],
        errors: dict[int, BaseException],
    ) -> None:
        super().__init__()
        self.fn = fn
        self.index = index
        self.item = item
        self.results = results
        self.errors = errors
        self.setAutoDelete(False)

    def run(self) -> None:
        try:
            self.results[self.index] = self.fn(self.item)
        except Exception as exc:  # noqa: BLE001
            self.errors[self.index] = exc


def parallel_map(
    fn: Callable[[T], R],
    items: Iterable[T],
    workers: int | None = None,
) -> list[R]:
    """Apply ``fn`` to every item; results come back in input order.

    The first failing item (by position) re-raises its exception in the caller.
    """
    todo = list(items)
    count = worker_count(workers)
    if count <= 1 or len(todo) <= 1:
        return [fn(item) for item in todo]

    results: list[Any] = [None] * len(todo)
    errors: dict[int, BaseException] = {}
    pool = QThreadPool()
    pool.setMaxThreadCount(min(count, len(todo)))
    # Keep Python references alive until the pool has drained.
    tasks = [_Task(fn, index, item, results, errors) for index, item in enumerate(todo)]
    for task in tasks:
        pool.start(task)
    pool.waitForDone()
    if errors:
        raise errors[min(errors)]
    return results
