"""Basic import tests to verify all dependencies are installed correctly."""


def test_numeric_imports():
    """Test that the numeric libraries can be imported."""
    import numpy as np
    import sympy

    assert np.zeros((2, 2), dtype=np.int64).sum() == 0
    assert sympy.factorint(443520) == {2: 7, 3: 2, 5: 1, 7: 1, 11: 1}


def test_logging_and_config_imports():
    """Test that logging and configuration libraries can be imported."""
    import psutil
    import structlog
    import yaml

    assert hasattr(structlog, "get_logger")
    assert hasattr(psutil, "Process")
    assert yaml.safe_load("a: 1") == {"a": 1}


def test_dev_tool_imports():
    """Test that development tools can be imported."""
    import click

    assert hasattr(click, "command")


def test_package_imports():
    """Test every subpackage imports and the scenarios register."""
    from sporadic_forge import chartab, extlocal, fpres, gflin, permcore  # noqa: F401
    from sporadic_forge.forge import SCENARIOS

    assert "toy-oracles" in SCENARIOS
    assert "co2-flagship" in SCENARIOS
