"""Tests for the configuration schema module."""

import pytest

from sporadic_forge.config.schema import (
    CapsConfig,
    DataConfig,
    ForgeConfig,
    LoggingConfig,
    RunConfig,
    create_default_config,
)
from sporadic_forge.config.validators import (
    validate_log_level,
    validate_optional_path,
    validate_positive_int,
    validate_seed,
)


class TestValidationFunctions:
    """Test validation utility functions."""

    def test_validate_positive_int(self):
        """Test positive integer validation."""
        assert validate_positive_int(1) is True
        assert validate_positive_int(100) is True
        assert validate_positive_int(0) is False
        assert validate_positive_int(-1) is False
        assert validate_positive_int(True) is False

    def test_validate_seed(self):
        """Test seeds are non-negative integers."""
        assert validate_seed(0) is True
        assert validate_seed(2**40) is True
        assert validate_seed(-3) is False
        assert validate_seed("1") is False

    def test_validate_log_level(self):
        """Test log level validation."""
        assert validate_log_level("debug") is True
        assert validate_log_level("CRITICAL") is True
        assert validate_log_level("LOUD") is False

    def test_validate_optional_path(self):
        """Test None is an acceptable optional path."""
        assert validate_optional_path(None) is True
        assert validate_optional_path("report.json") is True
        assert validate_optional_path("") is False


class TestCapsConfig:
    """Test CapsConfig validation."""

    def test_valid_caps_config(self):
        """Test valid caps configuration."""
        config = CapsConfig(max_cosets=1000, class_cap=5000, enum_cap=100)
        assert config.max_cosets == 1000
        assert config.meataxe_retries == 200

    def test_invalid_max_cosets(self):
        """Test invalid coset cap."""
        with pytest.raises(ValueError, match="Max cosets must be positive"):
            CapsConfig(max_cosets=0)

    def test_invalid_class_cap(self):
        """Test invalid class cap."""
        with pytest.raises(ValueError, match="Class cap must be positive"):
            CapsConfig(class_cap=-5)

    def test_invalid_meataxe_retries(self):
        """Test invalid Meataxe retry count."""
        with pytest.raises(ValueError, match="Meataxe retries must be positive"):
            CapsConfig(meataxe_retries=0)


class TestRunConfig:
    """Test RunConfig validation."""

    def test_valid_run_config(self):
        """Test valid run configuration."""
        config = RunConfig(seed=0, jobs=4, felsch=True, report_path="out.json")
        assert config.jobs == 4
        assert config.felsch is True

    def test_invalid_seed(self):
        """Test negative seed."""
        with pytest.raises(ValueError, match="Invalid seed"):
            RunConfig(seed=-1)

    def test_invalid_jobs(self):
        """Test invalid jobs count."""
        with pytest.raises(ValueError, match="Jobs must be positive"):
            RunConfig(jobs=0)

    def test_invalid_felsch(self):
        """Test felsch must be a real boolean."""
        with pytest.raises(ValueError, match="Felsch must be boolean"):
            RunConfig(felsch="yes")


class TestDataConfig:
    """Test DataConfig validation."""

    def test_defaults(self):
        """Test default dataset location."""
        config = DataConfig()
        assert config.directory == "data"
        assert config.manifest == "MANIFEST"
        assert config.verify_digests is True

    def test_invalid_directory(self):
        """Test empty data directory."""
        with pytest.raises(ValueError, match="Invalid data directory"):
            DataConfig(directory="")


class TestLoggingConfig:
    """Test LoggingConfig validation."""

    def test_valid_logging_config(self):
        """Test valid logging configuration."""
        config = LoggingConfig(
            level="INFO",
            format="structured",
            file="logs/test.log",
            max_size_mb=50,
            backup_count=5,
        )
        assert config.level == "INFO"
        assert config.format == "structured"

    def test_invalid_log_level(self):
        """Test invalid log level."""
        with pytest.raises(ValueError, match="Invalid log level"):
            LoggingConfig(level="INVALID")

    def test_invalid_log_format(self):
        """Test invalid log format."""
        with pytest.raises(ValueError, match="Invalid log format"):
            LoggingConfig(format="invalid")


class TestForgeConfig:
    """Test main ForgeConfig validation."""

    def test_default_config(self):
        """Test default configuration creation."""
        config = create_default_config()
        assert isinstance(config, ForgeConfig)
        assert config.caps.class_cap >= config.caps.enum_cap

    def test_class_cap_below_enum_cap(self):
        """Test the class cap may not undercut the enumeration cap."""
        with pytest.raises(ValueError, match="Class cap must not be below"):
            ForgeConfig(caps=CapsConfig(class_cap=10, enum_cap=100))
