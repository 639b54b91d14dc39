"""
Check Records

One record per verified claim. Construction modules return lists of these and
the forge layer collects them into reports.
"""

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, Optional


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"
    UNCHECKED = "unchecked"


@dataclass
class Check:
    """A claim with its computed and expected values."""

    claim: str
    status: CheckStatus
    computed: Any = None
    expected: Any = None
    locus: str = ""
    note: str = ""
    seconds: float = 0.0
    details: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def compare(cls, claim: str, computed: Any, expected: Any, locus: str = "", note: str = "") -> "Check":
        status = CheckStatus.PASS if computed == expected else CheckStatus.FAIL
        return cls(claim, status, computed, expected, locus, note)

    @classmethod
    def truth(cls, claim: str, holds: bool, locus: str = "", note: str = "") -> "Check":
        return cls(claim, CheckStatus.PASS if holds else CheckStatus.FAIL, holds, True, locus, note)

    @classmethod
    def skipped(cls, claim: str, note: str, locus: str = "", expected: Optional[Any] = None) -> "Check":
        return cls(claim, CheckStatus.SKIPPED, None, expected, locus, note)

    @classmethod
    def unchecked(cls, claim: str, locus: str = "", note: str = "asserted, not recomputed") -> "Check":
        return cls(claim, CheckStatus.UNCHECKED, None, None, locus, note)

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASS

    @property
    def failed(self) -> bool:
        return self.status is CheckStatus.FAIL

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["status"] = self.status.value
        return data
