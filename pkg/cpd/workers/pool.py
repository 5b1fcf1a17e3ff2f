"""
Thread-pool scan worker.

Evaluates a pure function over a grid of inputs (typically times t) with a
bounded pool of threads, keeps results in input order so that output is
deterministic, and records processing metrics.
"""

import threading
import time
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Generic, TypeVar

from cpd.config import get_logger, get_settings

logger = get_logger(__name__)

In = TypeVar("In")
Out = TypeVar("Out")


class ScanMetrics:
    """Track scan performance metrics. Safe to update from worker threads."""

    def __init__(self) -> None:
        self.points_processed = 0
        self.points_failed = 0
        self.total_processing_time = 0.0
        self.start_time = time.perf_counter()
        self._lock = threading.Lock()

    def record_success(self, duration: float) -> None:
        """Record a successfully evaluated grid point."""
        with self._lock:
            self.points_processed += 1
            self.total_processing_time += duration

    def record_failure(self) -> None:
        """Record a grid point that raised."""
        with self._lock:
            self.points_failed += 1

    @property
    def average_processing_time(self) -> float:
        """Average evaluation time per point in seconds."""
        if self.points_processed == 0:
            return 0.0
        return self.total_processing_time / self.points_processed

    @property
    def elapsed(self) -> float:
        """Wall time since the metrics were created."""
        return time.perf_counter() - self.start_time

    def to_dict(self) -> dict[str, Any]:
        """Convert metrics to dictionary."""
        return {
            "points_processed": self.points_processed,
            "points_failed": self.points_failed,
            "average_processing_time_ms": round(
                self.average_processing_time * 1000, 3
            ),
            "elapsed_seconds": round(self.elapsed, 3),
        }


class ScanWorker(Generic[In, Out]):
    """
    Evaluate a function over a grid in parallel.

    Example:
        >>> worker = ScanWorker(lambda t: t * t, name="squares")
        >>> worker.map([1.0, 2.0, 3.0])
        [1.0, 4.0, 9.0]
    """

    def __init__(
        self,
        fn: Callable[[In], Out],
        name: str = "scan",
        threads: int | None = None,
    ) -> None:
        """
        Initialize the worker.

        Args:
            fn: Pure function evaluated at each grid point
            name: Label used in log events
            threads: Pool size (default: settings.threads)
        """
        self.fn = fn
        self.name = name
        self.threads = threads or get_settings().threads
        self._metrics = ScanMetrics()

    def _evaluate(self, item: In) -> Out:
        start = time.perf_counter()
        try:
            result = self.fn(item)
        except Exception:
            self._metrics.record_failure()
            raise
        self._metrics.record_success(time.perf_counter() - start)
        return result

    def map(self, items: Iterable[In]) -> list[Out]:
        """
        Evaluate the function at every item, preserving input order.

        Raises:
            Exception: The first exception raised by the function
        """
        grid: Sequence[In] = list(items)
        self._metrics = ScanMetrics()

        if self.threads == 1 or len(grid) <= 1:
            results = [self._evaluate(item) for item in grid]
        else:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                results = list(pool.map(self._evaluate, grid))

        logger.debug(
            "Scan finished",
            scan=self.name,
            threads=self.threads,
            metrics=self._metrics.to_dict(),
        )
        return results

    @property
    def metrics(self) -> dict[str, Any]:
        """Metrics of the most recent map() call."""
        return self._metrics.to_dict()
