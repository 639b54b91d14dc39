"""
Exception Hierarchy

Every error raised by the toolkit derives from ForgeError so the command line
surface can map failures to exit codes in one place.
"""

from typing import Optional


class ForgeError(Exception):
    """Base class for all toolkit errors."""


class ShapeError(ForgeError):
    """Matrix or module dimensions do not fit the operation."""


class SingularMatrixError(ForgeError):
    """A matrix that must be invertible is singular."""


class FieldMismatchError(ForgeError):
    """Operands live over different prime fields."""


class ParseError(ForgeError):
    """Malformed word, presentation or data file."""

    def __init__(self, message: str, position: Optional[int] = None, source: str = ""):
        self.position = position
        self.source = source
        location = ""
        if source:
            location += f" in {source}"
        if position is not None:
            location += f" at position {position}"
        super().__init__(f"{message}{location}")


class MissingAssignmentError(ForgeError):
    """A word references a generator with no assigned group element."""


class NotInGroupError(ForgeError):
    """An element that must lie in a group does not sift to the identity."""


class EnumerationCapError(ForgeError):
    """A group is too large for explicit element enumeration."""


class MeataxeInconclusiveError(ForgeError):
    """The randomized irreducibility search ran out of retries."""


class ConventionError(ForgeError):
    """An action convention failed its relator self-check."""


class TableInconsistencyError(ForgeError):
    """Character table or fusion data contradicts itself."""


class UnknownScenarioError(ForgeError):
    """A scenario id is not registered."""


class DatasetError(ForgeError):
    """Dataset file is missing, unreadable or fails its digest check."""
