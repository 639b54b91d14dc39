"""
Sporadic Forge Core Module

Shared error hierarchy, check records and performance tracking.
"""

from .checks import Check, CheckStatus
from .errors import (
    ConventionError,
    DatasetError,
    EnumerationCapError,
    FieldMismatchError,
    ForgeError,
    MeataxeInconclusiveError,
    MissingAssignmentError,
    NotInGroupError,
    ParseError,
    ShapeError,
    SingularMatrixError,
    TableInconsistencyError,
    UnknownScenarioError,
)
from .numbers import factorization, format_factored, parse_factored
from .performance import (
    OperationStats,
    PerformanceMetrics,
    PerformanceMonitor,
    performance_monitor,
    timing_decorator,
)

__all__ = [
    # Errors
    "ForgeError",
    "ShapeError",
    "SingularMatrixError",
    "FieldMismatchError",
    "ParseError",
    "MissingAssignmentError",
    "NotInGroupError",
    "EnumerationCapError",
    "MeataxeInconclusiveError",
    "ConventionError",
    "TableInconsistencyError",
    "UnknownScenarioError",
    "DatasetError",
    # Check records
    "Check",
    "CheckStatus",
    # Factored integers
    "parse_factored",
    "format_factored",
    "factorization",
    # Performance
    "OperationStats",
    "PerformanceMetrics",
    "PerformanceMonitor",
    "performance_monitor",
    "timing_decorator",
]
