"""
Sporadic Forge Logging Module

Structured logging for verification runs.
"""

from .logger import (
    StructuredLogger,
    get_logger,
    log_check_result,
    log_exception,
    setup_logging,
)

__all__ = [
    "StructuredLogger",
    "setup_logging",
    "get_logger",
    "log_exception",
    "log_check_result",
]
