"""
Sporadic Forge Configuration Module

Configuration schema, validation and loading.
"""

from .loader import ConfigLoader, load_config_from_file
from .schema import (
    CapsConfig,
    DataConfig,
    ForgeConfig,
    LoggingConfig,
    RunConfig,
    create_default_config,
)

__all__ = [
    "ConfigLoader",
    "load_config_from_file",
    "ForgeConfig",
    "CapsConfig",
    "RunConfig",
    "DataConfig",
    "LoggingConfig",
    "create_default_config",
]
