"""
Timing and progress for batch decisions.

Progress bars and summaries go to stderr; JSON written to stdout stays
byte-identical between runs.
"""

import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Tuple, Type

from rich.console import Console
from rich.progress import (
    BarColumn,
    MofNCompleteColumn,
    Progress,
    SpinnerColumn,
    TaskID,
    TextColumn,
    TimeElapsedColumn,
)

logger = logging.getLogger(__name__)
console = Console(stderr=True)

OK = "ok"
LIMIT = "limit"
ERROR = "error"


@dataclass
class OperationStats:
    """Aggregated timings of one operation, usually one logic."""

    calls: int = 0
    total: float = 0.0
    worst: float = 0.0
    limit_hits: int = 0
    errors: int = 0

    @property
    def mean(self) -> float:
        return self.total / self.calls if self.calls else 0.0


@dataclass
class Timing:
    duration: float = 0.0
    outcome: str = OK


class PerformanceTimer:
    """Collects ``OperationStats`` keyed by operation name."""

    def __init__(self) -> None:
        self.stats: Dict[str, OperationStats] = {}

    def record(self, operation: str, duration: float, outcome: str = OK) -> None:
        entry = self.stats.setdefault(operation, OperationStats())
        entry.calls += 1
        entry.total += duration
        entry.worst = max(entry.worst, duration)
        if outcome == LIMIT:
            entry.limit_hits += 1
        elif outcome == ERROR:
            entry.errors += 1

    def log_summary(self) -> None:
        if not self.stats:
            logger.debug("No timings recorded")
            return
        for operation, entry in sorted(self.stats.items()):
            logger.info(
                f"{operation}: {entry.calls} calls, mean {format_duration(entry.mean)}, "
                f"worst {format_duration(entry.worst)}, {entry.limit_hits} over budget"
            )

    def display_summary(self) -> None:
        if not self.stats:
            return
        console.print("\n[bold cyan]Timing:[/bold cyan]")
        for operation, entry in sorted(self.stats.items()):
            line = (
                f"  [cyan]{operation}[/cyan]: {entry.calls} runs, "
                f"{format_duration(entry.total)} total, {format_duration(entry.worst)} worst"
            )
            if entry.limit_hits:
                line += f", [yellow]{entry.limit_hits} over budget[/yellow]"
            console.print(line)


@contextmanager
def measure_time(
    operation: str,
    timer: Optional[PerformanceTimer] = None,
    limit_errors: Tuple[Type[BaseException], ...] = (),
) -> Iterator[Timing]:
    """
    Time a block and record it under ``operation``.

    Exceptions propagate. One of ``limit_errors`` is recorded as a budget hit,
    anything else as an error.

    Example:
        >>> with measure_time("K4h", timer, (ResourceLimitError,)) as timing:
        ...     decide(LogicId.K4H, a)
        >>> timing.outcome
        'ok'
    """
    timing = Timing()
    start = time.perf_counter()
    try:
        yield timing
    except limit_errors:
        timing.outcome = LIMIT
        raise
    except Exception:
        timing.outcome = ERROR
        raise
    finally:
        timing.duration = time.perf_counter() - start
        if timer is not None:
            timer.record(operation, timing.duration, timing.outcome)


class ProgressManager:
    """Progress bar for corpus runs; rendered only when enabled."""

    def __init__(self, enabled: bool = True):
        self.enabled = enabled
        self.progress: Optional[Progress] = None

    def _build(self) -> Progress:
        return Progress(
            SpinnerColumn(),
            TextColumn("[bold blue]{task.description}"),
            BarColumn(),
            MofNCompleteColumn(),
            TimeElapsedColumn(),
            console=console,
            disable=not self.enabled,
        )

    @contextmanager
    def task(self, description: str, total: Optional[int] = None) -> Iterator[TaskID]:
        if self.progress is None:
            self.progress = self._build()
        with self.progress:
            yield self.progress.add_task(description, total=total)

    def advance(self, task_id: TaskID) -> None:
        if self.progress is not None:
            self.progress.update(task_id, advance=1)


def format_duration(seconds: float) -> str:
    """
    Short duration text: milliseconds below a second, minutes above one.

    Example:
        >>> format_duration(0.0042)
        '4ms'
        >>> format_duration(125.5)
        '2m 5s'
    """
    if seconds < 1:
        return f"{round(seconds * 1000)}ms"
    if seconds < 60:
        return f"{seconds:.1f}s"
    return f"{int(seconds // 60)}m {int(seconds % 60)}s"
