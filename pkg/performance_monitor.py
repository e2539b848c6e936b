"""
Stage timing for verification, reduction and file loading.

Library functions are wrapped with ``monitor.track(stage)``; ad hoc blocks
use ``with monitor.stage(name)``. The CLI resets the monitor per command and
reports ``get_stats()`` in its timing table and JSON ``timings`` field.
"""
import time
from contextlib import contextmanager
from functools import wraps
from typing import Callable, Dict, Optional


class PerformanceMonitor:
    """Accumulated wall-clock time per named stage."""

    def __init__(self):
        self.metrics = {}

    def track(self, name: str):
        """Decorator to time every call of a function under stage ``name``."""
        def decorator(func: Callable):
            @wraps(func)
            def wrapper(*args, **kwargs):
                with self.stage(name):
                    return func(*args, **kwargs)

            return wrapper

        return decorator

    @contextmanager
    def stage(self, name: str):
        """Time a block; a raised exception counts as a failed call."""
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            self._record(name, time.perf_counter() - start, success=False)
            raise
        self._record(name, time.perf_counter() - start, success=True)

    def _record(self, name: str, elapsed: float, success: bool):
        metric = self.metrics.setdefault(name, {
            'count': 0,
            'total_time': 0.0,
            'min_time': float('inf'),
            'max_time': 0.0,
            'failures': 0,
        })
        metric['count'] += 1
        metric['total_time'] += elapsed
        metric['min_time'] = min(metric['min_time'], elapsed)
        metric['max_time'] = max(metric['max_time'], elapsed)
        if not success:
            metric['failures'] += 1

    def get_stats(self, name: Optional[str] = None) -> Optional[Dict]:
        """Statistics for one stage, or for every stage keyed by name."""
        if name is None:
            return {stage: self.get_stats(stage) for stage in sorted(self.metrics)}
        metric = self.metrics.get(name)
        if metric is None:
            return None
        return {
            'name': name,
            'avg_time': metric['total_time'] / metric['count'],
            'min_time': metric['min_time'],
            'max_time': metric['max_time'],
            'total_time': metric['total_time'],
            'total_calls': metric['count'],
            'failure_rate': metric['failures'] / metric['count'],
        }

    def reset(self):
        self.metrics.clear()


# Global monitor instance
monitor = PerformanceMonitor()
