"""Tests for the configuration loader module."""

import json
import os
import tempfile

import pytest
import yaml

from sporadic_forge.config.loader import ConfigLoader, load_config_from_file
from sporadic_forge.config.schema import ForgeConfig, create_default_config


class TestConfigLoader:
    """Test ConfigLoader functionality."""

    def test_load_default_config(self):
        """Test loading default configuration without file."""
        loader = ConfigLoader()
        config = loader.load_config()

        assert isinstance(config, ForgeConfig)
        assert config.caps.max_cosets == 4_000_000
        assert config.run.seed == 1
        assert config.data.directory == "data"

    def test_load_yaml_config(self):
        """Test loading configuration from YAML file."""
        yaml_content = """
caps:
  max_cosets: 8000000
  class_cap: 20000000

run:
  seed: 7
  felsch: true

logging:
  level: "DEBUG"
  format: "structured"
"""

        with tempfile.NamedTemporaryFile(mode="w", suffix=".yaml", delete=False) as f:
            f.write(yaml_content)
            config_file = f.name

        try:
            loader = ConfigLoader(config_file)
            config = loader.load_config()

            assert config.caps.max_cosets == 8_000_000
            assert config.caps.class_cap == 20_000_000
            assert config.run.seed == 7
            assert config.run.felsch is True
            assert config.logging.level == "DEBUG"
        finally:
            os.unlink(config_file)

    def test_load_json_config(self):
        """Test loading configuration from JSON file."""
        json_content = {
            "run": {"jobs": 4, "report_path": "out/report.json"},
            "data": {"directory": "/srv/forge-data", "verify_digests": False},
        }

        with tempfile.NamedTemporaryFile(mode="w", suffix=".json", delete=False) as f:
            json.dump(json_content, f)
            config_file = f.name

        try:
            loader = ConfigLoader(config_file)
            config = loader.load_config()

            assert config.run.jobs == 4
            assert config.run.report_path == "out/report.json"
            assert config.data.directory == "/srv/forge-data"
            assert config.data.verify_digests is False
        finally:
            os.unlink(config_file)

    def test_file_not_found(self):
        """Test handling of non-existent configuration file."""
        loader = ConfigLoader("/non/existent/file.yaml")

        with pytest.raises(FileNotFoundError):
            loader.load_config()

    def test_invalid_yaml_file(self):
        """Test handling of invalid YAML file."""
        invalid_yaml = "invalid: yaml: content: ["

        with tempfile.NamedTemporaryFile(mode="w", suffix=".yaml", delete=False) as f:
            f.write(invalid_yaml)
            config_file = f.name

        try:
            loader = ConfigLoader(config_file)

            with pytest.raises(yaml.YAMLError):
                loader.load_config()
        finally:
            os.unlink(config_file)

    def test_invalid_json_file(self):
        """Test handling of invalid JSON file."""
        invalid_json = '{"invalid": json, "content":'

        with tempfile.NamedTemporaryFile(mode="w", suffix=".json", delete=False) as f:
            f.write(invalid_json)
            config_file = f.name

        try:
            loader = ConfigLoader(config_file)

            with pytest.raises(json.JSONDecodeError):
                loader.load_config()
        finally:
            os.unlink(config_file)

    def test_auto_format_detection(self):
        """Test automatic format detection for files without extension."""
        yaml_content = "caps:\n  enum_cap: 4096"

        with tempfile.NamedTemporaryFile(mode="w", delete=False) as f:
            f.write(yaml_content)
            config_file = f.name

        try:
            loader = ConfigLoader(config_file)
            config = loader.load_config()

            assert config.caps.enum_cap == 4096
        finally:
            os.unlink(config_file)

    def test_environment_variable_overrides(self, monkeypatch):
        """Test environment variable overrides."""
        monkeypatch.setenv("SPORADIC_FORGE_CAPS_MAX_COSETS", "5000000")
        monkeypatch.setenv("SPORADIC_FORGE_RUN_SEED", "42")
        monkeypatch.setenv("SPORADIC_FORGE_DATA_VERIFY_DIGESTS", "false")
        monkeypatch.setenv("SPORADIC_FORGE_LOGGING_LEVEL", "ERROR")

        config = ConfigLoader().load_config()

        assert config.caps.max_cosets == 5_000_000
        assert isinstance(config.caps.max_cosets, int)
        assert config.run.seed == 42
        assert config.data.verify_digests is False
        assert config.logging.level == "ERROR"

    def test_environment_ignores_unknown_sections(self, monkeypatch):
        """Test variables naming no configuration section are skipped."""
        monkeypatch.setenv("SPORADIC_FORGE_WEB_PORT", "8080")
        monkeypatch.setenv("SPORADIC_FORGE_X", "1")

        config = ConfigLoader().load_config()

        assert config == create_default_config()

    def test_config_validation_error(self):
        """Test handling of configuration validation errors."""
        invalid_config = """
caps:
  max_cosets: 0
"""

        with tempfile.NamedTemporaryFile(mode="w", suffix=".yaml", delete=False) as f:
            f.write(invalid_config)
            config_file = f.name

        try:
            loader = ConfigLoader(config_file)

            with pytest.raises(ValueError, match="Max cosets must be positive"):
                loader.load_config()
        finally:
            os.unlink(config_file)

    def test_unknown_key_rejected(self):
        """Test a misspelled key is reported instead of ignored."""
        with tempfile.NamedTemporaryFile(mode="w", suffix=".yaml", delete=False) as f:
            f.write("caps:\n  max_coset: 10\n")
            config_file = f.name

        try:
            with pytest.raises(ValueError, match="Unknown configuration key"):
                ConfigLoader(config_file).load_config()
        finally:
            os.unlink(config_file)

    def test_config_merge(self):
        """Test merging file config with defaults."""
        partial_config = """
caps:
  max_cosets: 123456

run:
  jobs: 3
"""

        with tempfile.NamedTemporaryFile(mode="w", suffix=".yaml", delete=False) as f:
            f.write(partial_config)
            config_file = f.name

        try:
            loader = ConfigLoader(config_file)
            config = loader.load_config()

            assert config.caps.max_cosets == 123456
            assert config.run.jobs == 3

            # Should keep default values for non-specified settings
            assert config.caps.class_cap == 10_000_000
            assert config.run.seed == 1
            assert config.data.manifest == "MANIFEST"

        finally:
            os.unlink(config_file)

    def test_convenience_function(self):
        """Test the convenience function for loading configuration."""
        config, loader = load_config_from_file()

        assert isinstance(config, ForgeConfig)
        assert isinstance(loader, ConfigLoader)
        assert loader.get_config() is config

    def test_get_config(self):
        """Test getting current configuration."""
        loader = ConfigLoader()

        # Before loading
        assert loader.get_config() is None

        # After loading
        config = loader.load_config()
        assert loader.get_config() == config
