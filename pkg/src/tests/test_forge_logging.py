"""
Tests for the structured logging setup

This module tests:
- Structured logger configuration
- The rotating JSON file log
- Check results and exceptions written to the file log
"""

import json
import logging
import sys
from pathlib import Path

import pytest
import structlog

from sporadic_forge.config.schema import LoggingConfig
from sporadic_forge.forge_logging import (
    get_logger,
    log_check_result,
    log_exception,
    setup_logging,
)
from sporadic_forge.forge_logging import logger as logger_module
from sporadic_forge.forge_logging.logger import JSONFileFormatter, StructuredLogger


def read_records(path: Path):
    for handler in logging.getLogger("json_file").handlers:
        handler.flush()
    return [json.loads(line) for line in path.read_text().splitlines() if line.strip()]


@pytest.fixture(autouse=True)
def reset_logging(monkeypatch):
    monkeypatch.setattr(logger_module, "_logger_instance", None)
    yield
    json_logger = logging.getLogger("json_file")
    for handler in list(json_logger.handlers):
        handler.close()
        json_logger.removeHandler(handler)
    structlog.reset_defaults()


class TestStructuredLogger:
    """Test structured logging framework."""

    def test_structured_logger_creation(self):
        """Test creating a structured logger."""
        config = LoggingConfig(level="INFO", format="structured")

        logger = StructuredLogger(config)
        assert logger.config == config
        assert not logger._configured

    def test_structured_logger_configuration(self, tmp_path):
        """Test logger configuration with a file log."""
        config = LoggingConfig(
            level="DEBUG", file=str(tmp_path / "logs" / "forge.log"), max_size_mb=1, backup_count=2
        )

        logger = StructuredLogger(config)
        logger.configure()

        assert logger._configured
        assert logger.logger is not None
        assert (tmp_path / "logs").is_dir()

    def test_configure_is_idempotent(self):
        """Test a second configure call keeps the first handlers."""
        logger = StructuredLogger(LoggingConfig())
        logger.configure()
        handlers = list(logging.getLogger().handlers)
        logger.configure()
        assert logging.getLogger().handlers == handlers

    def test_console_goes_to_stderr(self):
        """Test console records stay off stdout, where reports are printed."""
        StructuredLogger(LoggingConfig()).configure()
        assert logging.getLogger().handlers[0].stream is sys.stderr


class TestJSONFileFormatter:
    """Test the file log record format."""

    def make_record(self):
        record = logging.LogRecord("forge", logging.INFO, "", 0, "closed", (), None)
        record.structured_data = {"index": 88}
        return record

    def test_json_lines(self):
        """Test the structured payload is merged into the JSON object."""
        data = json.loads(JSONFileFormatter().format(self.make_record()))
        assert data["message"] == "closed"
        assert data["index"] == 88
        assert data["level"] == "INFO"

    def test_key_value(self):
        """Test the key=value variant."""
        line = JSONFileFormatter("key_value").format(self.make_record())
        assert "message=closed" in line
        assert "index=88" in line


class TestModuleFunctions:
    """Test the module-level logging helpers."""

    def test_get_logger_requires_setup(self):
        """Test get_logger refuses to run before setup_logging."""
        with pytest.raises(RuntimeError):
            get_logger("anything")

    def test_check_results_reach_file_log(self, tmp_path):
        """Test check outcomes are written with their status and locus."""
        log_file = tmp_path / "forge.log"
        setup_logging(LoggingConfig(file=str(log_file)))

        log_check_result("|M22|", "pass", scenario="m22-order", locus="M22 generator matrices")
        log_check_result("|E5|", "fail", scenario="e5")

        records = read_records(log_file)
        assert [r["message"] for r in records] == ["|M22|", "|E5|"]
        assert records[0]["status"] == "pass"
        assert records[0]["locus"] == "M22 generator matrices"
        assert records[1]["level"] == "WARNING"

    def test_check_results_without_setup(self):
        """Test check logging is a no-op before setup."""
        log_check_result("|M22|", "pass")

    def test_log_exception(self, tmp_path):
        """Test exceptions are written with their traceback."""
        log_file = tmp_path / "forge.log"
        setup_logging(LoggingConfig(file=str(log_file)))
        logger = get_logger("test")

        try:
            raise ValueError("bad matrix")
        except ValueError as e:
            log_exception(logger, "parse failed", e)

        records = read_records(log_file)
        assert records[-1]["exception_type"] == "ValueError"
        assert "bad matrix" in records[-1]["traceback"]
