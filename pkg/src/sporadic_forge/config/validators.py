"""
Configuration Validators

This module provides validation functions for toolkit configuration parameters.
"""

from pathlib import Path
from typing import Optional


def validate_boolean(value) -> bool:
    """Validate boolean value."""
    return isinstance(value, bool)


def validate_file_path(path: str) -> bool:
    """Validate file path format."""
    if not path:
        return False

    try:
        Path(path)
        return True
    except (TypeError, ValueError):
        return False


def validate_optional_path(path: Optional[str]) -> bool:
    """Validate an optional file path (None is accepted)."""
    return path is None or validate_file_path(path)


def validate_log_level(level: str) -> bool:
    """Validate log level."""
    valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
    return isinstance(level, str) and level.upper() in valid_levels


def validate_positive_int(value: int) -> bool:
    """Validate positive integer."""
    return isinstance(value, int) and not isinstance(value, bool) and value > 0


def validate_non_negative_int(value: int) -> bool:
    """Validate non-negative integer."""
    return isinstance(value, int) and not isinstance(value, bool) and value >= 0


def validate_seed(seed: int) -> bool:
    """Validate a random seed (any non-negative integer)."""
    return validate_non_negative_int(seed)
