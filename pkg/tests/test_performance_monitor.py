"""
Tests for stage timing.
"""
import pytest

from constructions import load_source, simplex_rep
from performance_monitor import PerformanceMonitor, monitor
from sggi import verify


def test_track_counts_calls_and_failures():
    local = PerformanceMonitor()

    @local.track("square")
    def square(x):
        if x < 0:
            raise ValueError("negative")
        return x * x

    assert square(3) == 9
    assert square(4) == 16
    with pytest.raises(ValueError):
        square(-1)

    stats = local.get_stats("square")
    assert stats["total_calls"] == 3
    assert stats["failure_rate"] == pytest.approx(1 / 3)
    assert stats["min_time"] <= stats["avg_time"] <= stats["max_time"]
    assert square.__name__ == "square"


def test_stage_block():
    local = PerformanceMonitor()
    with local.stage("block"):
        pass
    assert local.get_stats()["block"]["total_calls"] == 1
    assert local.get_stats("missing") is None
    local.reset()
    assert local.get_stats() == {}


def test_library_stages_are_recorded():
    verify(simplex_rep(4))
    load_source("simplex6")
    stats = monitor.get_stats()
    assert "verify" in stats
    assert "load" in stats
    assert list(stats) == sorted(stats)
