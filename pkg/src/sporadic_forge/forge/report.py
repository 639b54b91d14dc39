"""
Verification reports.

A report is deterministic for a fixed dataset, seed and caps apart from its
timing and memory section, which comparison_body() leaves out. Rendered as
JSON for machines and as indented text for people; every failed check shows
its locus in both.
"""

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from ..core.checks import Check, CheckStatus

REPORT_VERSION = 1

_MARK = {
    CheckStatus.PASS: "PASS",
    CheckStatus.FAIL: "FAIL",
    CheckStatus.SKIPPED: "SKIP",
    CheckStatus.UNCHECKED: "ASRT",
}


@dataclass(frozen=True)
class Discrepancy:
    """A printed value that differs from the value the argument actually uses."""

    claim: str
    printed: str
    used: str
    locus: str = ""

    def to_dict(self) -> Dict[str, str]:
        return {"claim": self.claim, "printed": self.printed, "used": self.used, "locus": self.locus}


def check_from_dict(data: Dict[str, Any]) -> Check:
    return Check(
        data["claim"],
        CheckStatus(data["status"]),
        data.get("computed"),
        data.get("expected"),
        data.get("locus", ""),
        data.get("note", ""),
        float(data.get("seconds", 0.0)),
        dict(data.get("details") or {}),
    )


def _body(check: Check) -> Dict[str, Any]:
    data = check.to_dict()
    data.pop("seconds")
    return data


def _shown(value: Any) -> str:
    text = str(value)
    return text if len(text) <= 120 else text[:117] + "..."


@dataclass
class ScenarioReport:
    id: str
    title: str
    tier: int
    checks: List[Check] = field(default_factory=list)
    discrepancies: List[Discrepancy] = field(default_factory=list)
    records: Dict[str, Any] = field(default_factory=dict)
    seconds: float = 0.0
    gated: bool = False
    gate_reason: str = ""

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if c.failed]

    @property
    def incomplete(self) -> List[Check]:
        return [c for c in self.checks if c.status is CheckStatus.SKIPPED]

    @property
    def asserted(self) -> List[Check]:
        return [c for c in self.checks if c.status is CheckStatus.UNCHECKED]

    @property
    def passed(self) -> bool:
        """No failed and no cap-limited check; asserted items do not count against it."""
        return not self.gated and not self.failures and not self.incomplete

    @property
    def status(self) -> str:
        if self.gated:
            return "gated"
        if self.failures:
            return "fail"
        if self.incomplete:
            return "incomplete"
        return "pass"

    def body(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "title": self.title,
            "tier": self.tier,
            "status": self.status,
            "gated": self.gated,
            "gate_reason": self.gate_reason,
            "checks": [_body(c) for c in self.checks],
            "discrepancies": [d.to_dict() for d in self.discrepancies],
            "records": dict(self.records),
        }

    def timings(self) -> Dict[str, Any]:
        return {"seconds": round(self.seconds, 4), "checks": [round(c.seconds, 4) for c in self.checks]}

    @classmethod
    def from_dict(cls, body: Dict[str, Any], timings: Optional[Dict[str, Any]] = None) -> "ScenarioReport":
        timings = timings or {}
        checks = [check_from_dict(c) for c in body.get("checks", [])]
        for check, seconds in zip(checks, timings.get("checks", [])):
            check.seconds = float(seconds)
        return cls(
            body["id"],
            body["title"],
            int(body["tier"]),
            checks,
            [Discrepancy(**d) for d in body.get("discrepancies", [])],
            dict(body.get("records") or {}),
            float(timings.get("seconds", 0.0)),
            bool(body.get("gated", False)),
            body.get("gate_reason", ""),
        )


@dataclass
class VerificationReport:
    """Results of one verify run over a dataset."""

    seed: int
    scenarios: List[ScenarioReport] = field(default_factory=list)
    dataset: Dict[str, Any] = field(default_factory=dict)
    caps: Dict[str, Any] = field(default_factory=dict)
    performance: Dict[str, Any] = field(default_factory=dict)
    created_at: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))

    def __post_init__(self) -> None:
        self.scenarios.sort(key=lambda s: s.id)

    @property
    def checks(self) -> List[Check]:
        return [c for s in self.scenarios for c in s.checks]

    @property
    def asserted(self) -> List[Dict[str, str]]:
        return [
            {"scenario": s.id, "claim": c.claim, "locus": c.locus, "note": c.note}
            for s in self.scenarios
            for c in s.asserted
        ]

    @property
    def discrepancies(self) -> List[Dict[str, str]]:
        return [dict(d.to_dict(), scenario=s.id) for s in self.scenarios for d in s.discrepancies]

    @property
    def gated(self) -> List[ScenarioReport]:
        return [s for s in self.scenarios if s.gated]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.scenarios)

    @property
    def exit_code(self) -> int:
        """0 when everything passed, 2 when data was missing, 1 otherwise."""
        if self.gated:
            return 2
        return 0 if self.passed else 1

    def counts(self) -> Dict[str, int]:
        out = {status.value: 0 for status in CheckStatus}
        for check in self.checks:
            out[check.status.value] += 1
        return out

    def comparison_body(self) -> Dict[str, Any]:
        """Everything except timings, memory and the creation stamp."""
        return {
            "version": REPORT_VERSION,
            "seed": self.seed,
            "passed": self.passed,
            "counts": self.counts(),
            "caps": dict(self.caps),
            "dataset": dict(self.dataset),
            "scenarios": [s.body() for s in self.scenarios],
            "asserted": self.asserted,
            "discrepancies": self.discrepancies,
        }

    def to_dict(self) -> Dict[str, Any]:
        data = self.comparison_body()
        data["created_at"] = self.created_at
        data["timings"] = {s.id: s.timings() for s in self.scenarios}
        data["performance"] = dict(self.performance)
        return data

    def to_json(self, comparison: bool = False) -> str:
        data = self.comparison_body() if comparison else self.to_dict()
        return json.dumps(data, indent=2, sort_keys=True, default=str)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VerificationReport":
        timings = data.get("timings") or {}
        scenarios = [ScenarioReport.from_dict(body, timings.get(body["id"])) for body in data.get("scenarios", [])]
        return cls(
            int(data["seed"]),
            scenarios,
            dict(data.get("dataset") or {}),
            dict(data.get("caps") or {}),
            dict(data.get("performance") or {}),
            data.get("created_at", ""),
        )

    def write(self, path: Union[str, Path], fmt: str = "json") -> None:
        text = self.to_json() if fmt == "json" else self.render_text()
        Path(path).write_text(text + "\n", encoding="utf-8")

    def render_text(self) -> str:
        lines = [f"verification report  seed={self.seed}  created={self.created_at}"]
        root = self.dataset.get("root")
        if root:
            lines.append(
                f"dataset {root}: {self.dataset.get('ingested', 0)}/{self.dataset.get('files', 0)} files ingested"
            )
        for rel, reason in (self.dataset.get("failures") or {}).items():
            lines.append(f"  rejected {rel}: {reason}")
        for note in self.dataset.get("normalizations") or []:
            lines.append(f"  normalized {note}")
        for s in self.scenarios:
            lines.append("")
            lines.append(f"[{s.status.upper()}] {s.id}: {s.title} (tier {s.tier}, {s.seconds:.2f}s)")
            if s.gated:
                lines.append(f"    {s.gate_reason}")
                continue
            for c in s.checks:
                line = f"    {_MARK[c.status]} {c.claim}"
                if c.status in (CheckStatus.PASS, CheckStatus.FAIL):
                    line += f" = {_shown(c.computed)}"
                if c.failed:
                    line += f" (expected {_shown(c.expected)})"
                if c.failed or c.status is not CheckStatus.PASS:
                    if c.locus:
                        line += f" @ {c.locus}"
                if c.note:
                    line += f"  [{c.note}]"
                lines.append(line)
            for key, value in sorted(s.records.items()):
                lines.append(f"    record {key} = {_shown(value)}")
        if self.discrepancies:
            lines.append("")
            lines.append("flagged discrepancies:")
            for d in self.discrepancies:
                lines.append(f"  {d['claim']}: printed {d['printed']}, used {d['used']} @ {d['locus']}")
        counts = self.counts()
        lines.append("")
        lines.append(
            "summary: "
            + ", ".join(f"{counts[k]} {k}" for k in ("pass", "fail", "skipped", "unchecked"))
            + f", {len(self.gated)} gated"
        )
        peak = self.performance.get("memory_peak_mb")
        if peak:
            lines.append(f"peak resident memory: {peak:.1f} MB")
        lines.append("RESULT: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)
