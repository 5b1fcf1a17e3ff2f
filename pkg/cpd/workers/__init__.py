"""Parallel evaluation of scans over time grids."""

from .pool import ScanMetrics, ScanWorker

__all__ = ["ScanMetrics", "ScanWorker"]
