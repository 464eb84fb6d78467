"""Utility modules for the workbench."""

from .performance import (
    OperationStats,
    PerformanceTimer,
    ProgressManager,
    format_duration,
    measure_time,
)

__all__ = [
    "OperationStats",
    "PerformanceTimer",
    "ProgressManager",
    "format_duration",
    "measure_time",
]
