"""Tests for step timing and memory tracking."""

import pytest

from sporadic_forge.core.performance import (
    OperationStats,
    PerformanceMonitor,
    timing_decorator,
)
from sporadic_forge.forge import ingest, run_scenario


class TestOperationStats:
    """Test the per-operation running totals."""

    def test_add(self):
        """Test count, total and longest accumulate."""
        stats = OperationStats()
        stats.add(0.5)
        stats.add(1.5)
        assert stats.count == 2
        assert stats.total == pytest.approx(2.0)
        assert stats.longest == 1.5
        assert stats.to_dict() == {"count": 2, "total_seconds": 2.0, "longest_seconds": 1.5}


class TestPerformanceMonitor:
    """Test the monitor itself."""

    def test_memory_sample(self):
        """Test a sample is positive and raises the peak."""
        monitor = PerformanceMonitor()
        rss = monitor.sample_memory()
        assert rss > 0
        assert monitor.peak_memory_mb == round(rss, 2)

    def test_memory_warning_does_not_raise(self):
        """Test crossing the warning line only logs."""
        monitor = PerformanceMonitor(memory_warning_mb=0.0)
        monitor.sample_memory()
        monitor.sample_memory()
        assert monitor.metrics.memory_samples == 2

    def test_slowest(self):
        """Test operations are ranked by total time."""
        monitor = PerformanceMonitor()
        monitor.record_operation_time("e5:orbit", 3.0)
        monitor.record_operation_time("a22:order", 1.0)
        monitor.record_operation_time("a22:order", 1.0)
        monitor.record_operation_time("m22-order:order", 0.1)
        assert monitor.slowest(2) == [("e5:orbit", 3.0), ("a22:order", 2.0)]

    def test_stats_and_reset(self):
        """Test the stats dictionary and that reset empties it."""
        monitor = PerformanceMonitor()
        monitor.record_operation_time("ingest", 0.25)
        monitor.record_error("ingest_DatasetError")
        stats = monitor.get_stats()
        assert stats["operations"]["ingest"]["count"] == 1
        assert stats["errors"] == {"ingest_DatasetError": 1}
        assert stats["memory"]["peak_mb"] > 0

        monitor.reset()
        assert monitor.slowest() == []
        assert monitor.get_stats()["errors"] == {}


class TestTimingDecorator:
    """Test the timing decorator."""

    def test_records_time_and_errors(self):
        """Test both successful and failing calls are timed."""
        monitor = PerformanceMonitor()

        @timing_decorator("parse", monitor)
        def parse(text):
            if not text:
                raise ValueError("empty")
            return text.upper()

        assert parse("v1") == "V1"
        with pytest.raises(ValueError):
            parse("")
        assert monitor.metrics.operations["parse"].count == 2
        assert monitor.metrics.error_counts["parse_ValueError"] == 1

    def test_scenario_steps_are_timed(self, tmp_path):
        """Test every step of a scenario lands in the monitor under its id."""
        monitor = PerformanceMonitor()
        run_scenario("toy-oracles", ingest(tmp_path), monitor=monitor)
        names = list(monitor.metrics.operations)
        assert names
        assert all(name.startswith("toy-oracles:") for name in names)
