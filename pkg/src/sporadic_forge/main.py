"""
Sporadic Forge Command Line

    forge ingest data/
    forge verify all --data data/ --report report.json
    forge verify co2-flagship --max-cosets 8000000 --format text
    forge list-scenarios

Exit codes: 0 when every check passed, 1 when a check failed or could not
finish within its caps, 2 for unusable input (unknown scenario, unreadable
data directory, or a scenario gated off by missing files).
"""

import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, replace
from pathlib import Path
from typing import Any, Dict, List, Optional

import click
import yaml

from . import __version__
from .config import CapsConfig, ConfigLoader, ForgeConfig
from .core.errors import ForgeError
from .core.performance import performance_monitor
from .forge import (
    SCENARIOS,
    Dataset,
    ScenarioReport,
    VerificationReport,
    discover_manifest,
    file_digest,
    gate,
    get_scenario,
    ingest,
    run_scenario,
    scenario_ids,
    write_manifest,
)
from .forge_logging import get_logger, log_exception, setup_logging

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _load_config(config_path: Optional[str]) -> ForgeConfig:
    """Load configuration and set up logging before anything else runs."""
    try:
        config = ConfigLoader(config_path).load_config()
    except (FileNotFoundError, ValueError, yaml.YAMLError) as e:
        click.echo(f"Configuration error: {e}", err=True)
        sys.exit(EXIT_USAGE)
    setup_logging(config.logging)
    return config


def _run_in_worker(
    scenario_id: str, data_dir: str, manifest: str, verify_digests: bool, seed: int, caps: Dict[str, Any], felsch: bool
) -> ScenarioReport:
    # each worker ingests on its own; parsed objects are not shared across processes
    dataset = ingest(data_dir, manifest, verify_digests)
    return run_scenario(scenario_id, dataset, seed, CapsConfig(**caps), felsch)


def _run_all(ids: List[str], dataset: Dataset, config: ForgeConfig) -> List[ScenarioReport]:
    caps = config.caps
    run = config.run
    if run.jobs <= 1 or len(ids) <= 1:
        return [run_scenario(i, dataset, run.seed, caps, run.felsch, performance_monitor) for i in ids]
    runnable = [i for i in ids if not gate(dataset, i)]
    reports = [run_scenario(i, dataset, run.seed, caps, run.felsch) for i in ids if i not in runnable]
    with ProcessPoolExecutor(max_workers=run.jobs) as pool:
        futures = [
            pool.submit(
                _run_in_worker,
                i,
                str(dataset.root),
                config.data.manifest,
                config.data.verify_digests,
                run.seed,
                asdict(caps),
                run.felsch,
            )
            for i in runnable
        ]
        reports += [f.result() for f in futures]
    return sorted(reports, key=lambda r: r.id)


@click.group()
@click.version_option(version=__version__)
def cli() -> None:
    """Verify the Co2 and Fi22 constructions from transcribed data."""


@cli.command("ingest")
@click.argument("data_dir", type=click.Path(file_okay=False))
@click.option("--config", "-c", "config_path", default=None, help="Configuration file path")
@click.option(
    "--write-manifest",
    "write_manifest_flag",
    is_flag=True,
    help="Write a MANIFEST with fresh digests for every recognized file",
)
def ingest_command(data_dir: str, config_path: Optional[str], write_manifest_flag: bool) -> None:
    """Parse every data file and itemize what was rejected."""
    config = _load_config(config_path)
    logger = get_logger("sporadic_forge.cli")
    root = Path(data_dir)
    if write_manifest_flag:
        manifest = discover_manifest(root)
        for rel, entry in manifest.entries.items():
            entry.sha256 = file_digest(root / rel)
            entry.tier = 1
        target = root / config.data.manifest
        write_manifest(manifest, target)
        click.echo(f"wrote {target} with {len(manifest)} files")
    try:
        dataset = ingest(root, config.data.manifest, config.data.verify_digests)
    except ForgeError as e:
        log_exception(logger, "Ingestion failed", e)
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_USAGE)
    summary = dataset.summary()
    click.echo(f"{summary['ingested']}/{summary['files']} files ingested from {summary['root']}")
    if not summary["manifest_found"]:
        click.echo("no manifest found: files ingested without digest checks")
    for rel, reason in summary["failures"].items():
        click.echo(f"  rejected {rel}: {reason}")
    for note in summary["normalizations"]:
        click.echo(f"  normalized {note}")
    for sid in scenario_ids():
        missing = gate(dataset, sid)
        if missing:
            click.echo(f"  {sid} gated: missing {', '.join(missing)}")
    sys.exit(EXIT_USAGE if summary["failures"] else EXIT_PASS)


@cli.command("verify")
@click.argument("scenario_id")
@click.option("--data", "data_dir", default=None, help="Data directory (default from configuration)")
@click.option("--seed", type=int, default=None, help="Seed for every randomized routine")
@click.option("--max-cosets", type=int, default=None, help="Coset table size cap")
@click.option("--class-cap", type=int, default=None, help="Conjugacy class enumeration cap")
@click.option("--report", "report_path", default=None, help="Write the report to this file")
@click.option("--jobs", type=int, default=None, help="Run independent scenarios in parallel")
@click.option("--config", "-c", "config_path", default=None, help="Configuration file path")
@click.option("--felsch", is_flag=True, default=None, help="Felsch strategy for coset enumeration")
@click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text", help="Report format"
)
def verify_command(
    scenario_id: str,
    data_dir: Optional[str],
    seed: Optional[int],
    max_cosets: Optional[int],
    class_cap: Optional[int],
    report_path: Optional[str],
    jobs: Optional[int],
    config_path: Optional[str],
    felsch: Optional[bool],
    fmt: str,
) -> None:
    """Run one scenario, or all of them, and print the report."""
    config = _load_config(config_path)
    logger = get_logger("sporadic_forge.cli")
    try:
        config.caps = replace(
            config.caps,
            max_cosets=max_cosets or config.caps.max_cosets,
            class_cap=class_cap or config.caps.class_cap,
        )
        config.run = replace(
            config.run,
            seed=config.run.seed if seed is None else seed,
            jobs=jobs or config.run.jobs,
            felsch=bool(felsch) or config.run.felsch,
            report_path=report_path or config.run.report_path,
        )
        ids = scenario_ids() if scenario_id == "all" else [get_scenario(scenario_id).id]
        dataset = ingest(data_dir or config.data.directory, config.data.manifest, config.data.verify_digests)
    except (ForgeError, ValueError) as e:
        log_exception(logger, "Verification could not start", e)
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_USAGE)

    logger.info("verification started", scenarios=ids, seed=config.run.seed, jobs=config.run.jobs)
    reports = _run_all(ids, dataset, config)
    performance_monitor.sample_memory()
    logger.info("slowest steps", steps=performance_monitor.slowest())
    report = VerificationReport(
        config.run.seed,
        reports,
        dataset=dataset.summary(),
        caps=asdict(config.caps),
        performance={
            "memory_peak_mb": performance_monitor.peak_memory_mb,
            "seconds": round(sum(r.seconds for r in reports), 2),
        },
    )
    if config.run.report_path:
        report.write(config.run.report_path, "json" if config.run.report_path.endswith(".json") else fmt)
        logger.info("report written", path=config.run.report_path)
    click.echo(report.to_json() if fmt == "json" else report.render_text())
    logger.info("verification finished", passed=report.passed, exit_code=report.exit_code, **report.counts())
    sys.exit(report.exit_code)


@cli.command("list-scenarios")
def list_scenarios_command() -> None:
    """Show every scenario with its tier and the files it needs."""
    for sid in scenario_ids():
        entry = SCENARIOS[sid]
        flags = " (slow)" if entry.slow else ""
        click.echo(f"{sid:22} tier {entry.tier}{flags}  {entry.title}")
        if entry.requires:
            click.echo(f"{'':22} needs {', '.join(entry.requires)}")


if __name__ == "__main__":
    cli()
