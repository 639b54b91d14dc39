"""Scenario definitions; importing this package registers every scenario."""

from . import co2, extensions, fi22, tables, toy

__all__ = ["co2", "extensions", "fi22", "tables", "toy"]
