"""
Sporadic Forge Verification Scenarios

Dataset ingestion, the scenario registry and verification reports.
"""

from . import stages
from .dataset import (
    Dataset,
    DatasetManifest,
    ManifestEntry,
    discover_manifest,
    file_digest,
    ingest,
    parse_manifest,
    write_manifest,
)
from .report import Discrepancy, ScenarioReport, VerificationReport
from .scenario import (
    SCENARIOS,
    Scenario,
    ScenarioContext,
    gate,
    get_scenario,
    run_scenario,
    scenario,
    scenario_ids,
)

__all__ = [
    # Dataset
    "Dataset",
    "DatasetManifest",
    "ManifestEntry",
    "discover_manifest",
    "file_digest",
    "ingest",
    "parse_manifest",
    "write_manifest",
    # Scenarios
    "SCENARIOS",
    "Scenario",
    "ScenarioContext",
    "gate",
    "get_scenario",
    "run_scenario",
    "scenario",
    "scenario_ids",
    "stages",
    # Reports
    "Discrepancy",
    "ScenarioReport",
    "VerificationReport",
]
