"""
Sporadic Forge Configuration Schema

Configuration sections for resource caps, run parameters, dataset location
and logging.
"""

from dataclasses import dataclass, field
from typing import Optional

from .validators import (
    validate_boolean,
    validate_file_path,
    validate_log_level,
    validate_optional_path,
    validate_positive_int,
    validate_seed,
)


@dataclass
class CapsConfig:
    """Resource caps for enumerations and randomized searches."""

    max_cosets: int = 4_000_000
    class_cap: int = 10_000_000
    enum_cap: int = 2**20
    meataxe_word_length: int = 8
    meataxe_retries: int = 200
    fingerprint_points: int = 8

    def __post_init__(self) -> None:
        """Validate caps configuration."""
        if not validate_positive_int(self.max_cosets):
            raise ValueError(f"Max cosets must be positive: {self.max_cosets}")

        if not validate_positive_int(self.class_cap):
            raise ValueError(f"Class cap must be positive: {self.class_cap}")

        if not validate_positive_int(self.enum_cap):
            raise ValueError(f"Enumeration cap must be positive: {self.enum_cap}")

        if not validate_positive_int(self.meataxe_word_length):
            raise ValueError(
                f"Meataxe word length must be positive: {self.meataxe_word_length}"
            )

        if not validate_positive_int(self.meataxe_retries):
            raise ValueError(
                f"Meataxe retries must be positive: {self.meataxe_retries}"
            )

        if not validate_positive_int(self.fingerprint_points):
            raise ValueError(
                f"Fingerprint points must be positive: {self.fingerprint_points}"
            )


@dataclass
class RunConfig:
    """Run parameters shared by every scenario."""

    seed: int = 1
    jobs: int = 1
    felsch: bool = False
    report_path: Optional[str] = None

    def __post_init__(self) -> None:
        """Validate run configuration."""
        if not validate_seed(self.seed):
            raise ValueError(f"Invalid seed: {self.seed}")

        if not validate_positive_int(self.jobs):
            raise ValueError(f"Jobs must be positive: {self.jobs}")

        if not validate_boolean(self.felsch):
            raise ValueError(f"Felsch must be boolean: {self.felsch}")

        if not validate_optional_path(self.report_path):
            raise ValueError(f"Invalid report path: {self.report_path}")


@dataclass
class DataConfig:
    """Dataset location and integrity settings."""

    directory: str = "data"
    manifest: str = "MANIFEST"
    verify_digests: bool = True

    def __post_init__(self) -> None:
        """Validate data configuration."""
        if not validate_file_path(self.directory):
            raise ValueError(f"Invalid data directory: {self.directory}")

        if not validate_file_path(self.manifest):
            raise ValueError(f"Invalid manifest name: {self.manifest}")

        if not validate_boolean(self.verify_digests):
            raise ValueError(
                f"Verify digests must be boolean: {self.verify_digests}"
            )


@dataclass
class LoggingConfig:
    """Logging configuration section."""

    level: str = "INFO"
    format: str = "detailed"
    file: Optional[str] = None
    max_size_mb: int = 100
    backup_count: int = 5
    structured_format: str = "json"

    def __post_init__(self) -> None:
        """Validate logging configuration."""
        if not validate_log_level(self.level):
            raise ValueError(f"Invalid log level: {self.level}")

        if self.format not in ["simple", "detailed", "structured"]:
            raise ValueError(f"Invalid log format: {self.format}")

        if not validate_optional_path(self.file):
            raise ValueError(f"Invalid log file path: {self.file}")

        if not validate_positive_int(self.max_size_mb):
            raise ValueError(f"Max size MB must be positive: {self.max_size_mb}")

        if not validate_positive_int(self.backup_count):
            raise ValueError(f"Backup count must be positive: {self.backup_count}")

        if self.structured_format not in ["json", "key_value"]:
            raise ValueError(
                f"Invalid structured format: {self.structured_format}"
            )


@dataclass
class ForgeConfig:
    """Main toolkit configuration."""

    caps: CapsConfig = field(default_factory=CapsConfig)
    run: RunConfig = field(default_factory=RunConfig)
    data: DataConfig = field(default_factory=DataConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)

    def __post_init__(self) -> None:
        """Validate cross-section constraints."""
        if self.caps.class_cap < self.caps.enum_cap:
            raise ValueError(
                f"Class cap must not be below the enumeration cap: {self.caps.class_cap}"
            )


def create_default_config() -> ForgeConfig:
    """Create a default configuration instance."""
    return ForgeConfig()
