"""
Performance Monitoring Module

Wall time per verification step, error counts by scenario and exception type,
and the resident set size of the process. Reports carry the peak RSS; the
per-step table is logged at the end of a run.
"""

import functools
import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Tuple

import psutil
import structlog

logger = structlog.get_logger(__name__)

MEMORY_WARNING_MB = 4096.0


@dataclass
class OperationStats:
    """Running totals for one named operation."""

    count: int = 0
    total: float = 0.0
    longest: float = 0.0

    def add(self, seconds: float) -> None:
        self.count += 1
        self.total += seconds
        self.longest = max(self.longest, seconds)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "count": self.count,
            "total_seconds": round(self.total, 3),
            "longest_seconds": round(self.longest, 3),
        }


@dataclass
class PerformanceMetrics:
    operations: Dict[str, OperationStats] = field(default_factory=lambda: defaultdict(OperationStats))
    error_counts: Dict[str, int] = field(default_factory=lambda: defaultdict(int))
    memory_samples: int = 0
    memory_current: float = 0.0
    memory_peak: float = 0.0


class PerformanceMonitor:
    """Collects step timings, error counts and RSS samples for one process."""

    def __init__(self, memory_warning_mb: float = MEMORY_WARNING_MB):
        self.memory_warning_mb = memory_warning_mb
        self.metrics = PerformanceMetrics()
        self._start_time = time.perf_counter()
        self._process = psutil.Process()
        self._warned = False

    @property
    def peak_memory_mb(self) -> float:
        return round(self.metrics.memory_peak, 2)

    def sample_memory(self) -> float:
        """Record the current resident set size and return it in MB."""
        memory_mb = self._process.memory_info().rss / 1024 / 1024
        self.metrics.memory_samples += 1
        self.metrics.memory_current = memory_mb
        self.metrics.memory_peak = max(self.metrics.memory_peak, memory_mb)
        if memory_mb > self.memory_warning_mb and not self._warned:
            # warn once per run
            self._warned = True
            logger.warning("high memory usage", rss_mb=round(memory_mb, 1), limit_mb=self.memory_warning_mb)
        return memory_mb

    def record_operation_time(self, operation: str, duration: float) -> None:
        self.metrics.operations[operation].add(duration)

    def record_error(self, error_type: str) -> None:
        self.metrics.error_counts[error_type] += 1

    def slowest(self, n: int = 5) -> List[Tuple[str, float]]:
        """The n operations with the largest total time, longest first."""
        ranked = sorted(self.metrics.operations.items(), key=lambda item: (-item[1].total, item[0]))
        return [(name, round(stats.total, 3)) for name, stats in ranked[:n]]

    def reset(self) -> None:
        self.metrics = PerformanceMetrics()
        self._start_time = time.perf_counter()
        self._warned = False

    def get_stats(self) -> Dict[str, Any]:
        self.sample_memory()
        return {
            "elapsed_seconds": round(time.perf_counter() - self._start_time, 2),
            "memory": {
                "current_mb": round(self.metrics.memory_current, 2),
                "peak_mb": self.peak_memory_mb,
                "samples": self.metrics.memory_samples,
            },
            "operations": {name: stats.to_dict() for name, stats in sorted(self.metrics.operations.items())},
            "errors": dict(self.metrics.error_counts),
        }


def timing_decorator(operation_name: str, monitor: PerformanceMonitor):
    """Decorator to time function execution"""

    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            try:
                return func(*args, **kwargs)
            except Exception as e:
                monitor.record_error(f"{operation_name}_{type(e).__name__}")
                raise
            finally:
                monitor.record_operation_time(operation_name, time.perf_counter() - start_time)
                monitor.sample_memory()

        return wrapper

    return decorator


# Global instance
performance_monitor = PerformanceMonitor()
