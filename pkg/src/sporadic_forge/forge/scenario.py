"""
Scenario registry and runner.

A scenario is a named list of checks over declared dataset files. Runners
receive a ScenarioContext, add Check records step by step and may stash
expensive intermediate objects (affine representations, coset actions) in
the context cache for later steps.
"""

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import structlog

from ..config import CapsConfig
from ..core.checks import Check, CheckStatus
from ..core.errors import DatasetError, ForgeError, UnknownScenarioError
from ..core.numbers import format_factored
from ..core.performance import PerformanceMonitor, performance_monitor
from ..forge_logging import log_check_result
from ..gflin import MeataxeSettings, settings_from_caps
from .dataset import Dataset
from .report import Discrepancy, ScenarioReport

logger = structlog.get_logger(__name__)

Runner = Callable[["ScenarioContext"], None]


@dataclass(frozen=True)
class Scenario:
    """A named check list with the dataset files it needs."""

    id: str
    title: str
    tier: int
    requires: Tuple[str, ...]
    runner: Runner
    slow: bool = False


SCENARIOS: Dict[str, Scenario] = {}


def scenario(
    scenario_id: str, title: str, tier: int = 1, requires: Sequence[str] = (), slow: bool = False
) -> Callable[[Runner], Runner]:
    """Register a runner under a unique scenario id."""

    def register(runner: Runner) -> Runner:
        if scenario_id in SCENARIOS:
            raise ValueError(f"Duplicate scenario id: {scenario_id}")
        SCENARIOS[scenario_id] = Scenario(scenario_id, title, tier, tuple(requires), runner, slow)
        return runner

    return register


def get_scenario(scenario_id: str) -> Scenario:
    try:
        return SCENARIOS[scenario_id]
    except KeyError:
        known = ", ".join(sorted(SCENARIOS))
        raise UnknownScenarioError(f"Unknown scenario {scenario_id!r}; known: {known}") from None


def scenario_ids() -> List[str]:
    return sorted(SCENARIOS)


def gate(dataset: Dataset, scenario_id: str) -> List[str]:
    """Required files the dataset cannot provide; empty when the scenario can run."""
    return dataset.missing(get_scenario(scenario_id).requires)


@dataclass
class ScenarioContext:
    """Everything a runner needs: data, caps, seed and a place for its checks."""

    dataset: Dataset
    caps: CapsConfig = field(default_factory=CapsConfig)
    seed: int = 1
    felsch: bool = False
    monitor: PerformanceMonitor = field(default=performance_monitor)
    checks: List[Check] = field(default_factory=list)
    discrepancies: List[Discrepancy] = field(default_factory=list)
    records: Dict[str, Any] = field(default_factory=dict)
    cache: Dict[str, Any] = field(default_factory=dict)
    scenario_id: str = ""

    def get(self, path: str) -> Any:
        return self.dataset.get(path)

    @property
    def meataxe(self) -> MeataxeSettings:
        return settings_from_caps(self.caps)

    def memo(self, key: str, build: Callable[[], Any]) -> Any:
        if key not in self.cache:
            self.cache[key] = build()
        return self.cache[key]

    def add(self, *checks: Check, locus: str = "") -> None:
        for check in checks:
            if locus and not check.locus:
                check.locus = locus
            self.checks.append(check)

    def record(self, key: str, value: Any) -> None:
        """A derived value worth keeping in the report, such as a chosen start vector."""
        self.records[key] = value

    def flag(self, claim: str, printed: str, used: str, locus: str = "") -> None:
        self.discrepancies.append(Discrepancy(claim, printed, used, locus))
        logger.warning("printed value differs from the one used", claim=claim, printed=printed, used=used)

    @contextmanager
    def step(self, name: str) -> Iterator[None]:
        """Time a block; checks added inside it carry its wall time."""
        first = len(self.checks)
        started = time.perf_counter()
        try:
            yield
        finally:
            elapsed = time.perf_counter() - started
            self.monitor.record_operation_time(f"{self.scenario_id}:{name}", elapsed)
            self.monitor.sample_memory()
            for check in self.checks[first:]:
                if not check.seconds:
                    check.seconds = elapsed
            logger.debug("step finished", scenario=self.scenario_id, step=name, seconds=round(elapsed, 3))


def order_check(claim: str, computed: Optional[int], expected: int, locus: str = "", note: str = "") -> Check:
    """Compare group orders, keeping both factorizations in the record."""
    if computed is None:
        return Check.skipped(claim, note or "order not available", locus, expected)
    check = Check.compare(claim, computed, expected, locus, note)
    check.details["computed_factored"] = format_factored(computed) if computed > 0 else str(computed)
    check.details["expected_factored"] = format_factored(expected)
    return check


def run_scenario(
    scenario_id: str,
    dataset: Dataset,
    seed: int = 1,
    caps: Optional[CapsConfig] = None,
    felsch: bool = False,
    monitor: Optional[PerformanceMonitor] = None,
) -> ScenarioReport:
    """Run one scenario; gated scenarios report the files they lack."""
    entry = get_scenario(scenario_id)
    missing = dataset.missing(entry.requires)
    if missing:
        logger.warning("scenario gated", scenario=scenario_id, missing=missing)
        return ScenarioReport(entry.id, entry.title, entry.tier, gated=True, gate_reason=f"missing: {', '.join(missing)}")
    ctx = ScenarioContext(
        dataset,
        caps or CapsConfig(),
        seed,
        felsch,
        monitor or performance_monitor,
        scenario_id=scenario_id,
    )
    logger.info("scenario started", scenario=scenario_id, seed=seed)
    started = time.perf_counter()
    try:
        entry.runner(ctx)
    except DatasetError as e:
        ctx.add(Check(f"{scenario_id} inputs", CheckStatus.FAIL, note=str(e)))
    except (ForgeError, MemoryError, RecursionError) as e:
        # resource exhaustion fails this scenario only
        ctx.monitor.record_error(f"{scenario_id}_{type(e).__name__}")
        ctx.add(Check(f"{scenario_id} completed", CheckStatus.FAIL, note=f"{type(e).__name__}: {e}"))
        logger.error("scenario aborted", scenario=scenario_id, error=str(e))
    elapsed = time.perf_counter() - started
    report = ScenarioReport(
        entry.id,
        entry.title,
        entry.tier,
        checks=ctx.checks,
        discrepancies=ctx.discrepancies,
        records=ctx.records,
        seconds=elapsed,
    )
    for check in report.checks:
        log_check_result(check.claim, check.status.value, scenario=scenario_id, locus=check.locus)
    logger.info(
        "scenario finished",
        scenario=scenario_id,
        status=report.status,
        checks=len(report.checks),
        failed=len(report.failures),
        seconds=round(elapsed, 2),
    )
    return report
