"""Per-operation execution-time accounting."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field


@dataclass
class OperationStats:
    count: int = 0
    total_seconds: float = 0.0
    max_seconds: float = 0.0

    @property
    def mean_seconds(self) -> float:
        return self.total_seconds / self.count if self.count else 0.0


@dataclass
class OperationTimings:
    stats: dict[str, OperationStats] = field(default_factory=dict)

    def record(self, operation: str, duration: float) -> None:
        if duration < 0:
            raise ValueError("duration must be >= 0")
        entry = self.stats.setdefault(operation, OperationStats())
        entry.count += 1
        entry.total_seconds += duration
        entry.max_seconds = max(entry.max_seconds, duration)

    @contextmanager
    def timed(self, operation: str):
        start = time.perf_counter()
        try:
            yield
        finally:
            self.record(operation, time.perf_counter() - start)

    def report(self) -> dict:
        return {
            name: {
                "count": s.count,
                "mean_seconds": s.mean_seconds,
                "max_seconds": s.max_seconds,
            }
            for name, s in sorted(self.stats.items())
        }
