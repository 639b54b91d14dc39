"""
Dataset ingestion.

The data directory holds one transcribed object per file, dispatched on the
file suffix, and a YAML manifest recording for every file its sha256 digest,
its transcription tier, the locus it was transcribed from and any
normalization applied on the way in:

    files:
      m22/V1.mod:
        sha256: 3f5a...
        tier: 1
        locus: "M22 generator matrices, lines 397-470"
        notes: []

Ingestion is partial by design: a file that is missing, fails its digest or
does not parse is itemized and only the scenarios needing it are gated off.
Without a manifest every recognized file on disk is ingested unverified; with
one, a file whose entry has no digest is rejected.
"""

import hashlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Union

import structlog
import yaml

from ..chartab import read_fusion, read_table
from ..core.errors import DatasetError, ForgeError
from ..core.performance import performance_monitor, timing_decorator
from ..extlocal import read_extension_spec, read_subgroup_specs, read_word_book
from ..fpres import Presentation, read_presentation
from ..gflin import read_mat, read_mod
from ..permcore import read_perm

logger = structlog.get_logger(__name__)

NUMBER_TAGS = ("tag:yaml.org,2002:int", "tag:yaml.org,2002:float")

PARSERS: Dict[str, Callable[[Path], Any]] = {
    ".mat": read_mat,
    ".mod": read_mod,
    ".perm": read_perm,
    ".cyc": read_perm,
    ".fp": read_presentation,
    ".ext": read_extension_spec,
    ".words": read_word_book,
    ".sub": read_subgroup_specs,
    ".ct": read_table,
    ".fuse": read_fusion,
}


def file_digest(path: Union[str, Path]) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass
class ManifestEntry:
    """Provenance of one data file."""

    path: str
    sha256: Optional[str] = None
    tier: int = 1
    locus: str = ""
    notes: List[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.tier not in (0, 1, 2, 3):
            raise ValueError(f"Invalid tier: {self.tier}")

    def to_dict(self) -> Dict[str, Any]:
        return {"sha256": self.sha256, "tier": self.tier, "locus": self.locus, "notes": list(self.notes)}


@dataclass
class DatasetManifest:
    """File list with digests, provenance tags and normalization notes."""

    entries: Dict[str, ManifestEntry] = field(default_factory=dict)
    source: str = ""

    def __contains__(self, path: str) -> bool:
        return path in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def digests(self) -> Dict[str, Optional[str]]:
        return {p: e.sha256 for p, e in sorted(self.entries.items())}

    def to_dict(self) -> Dict[str, Any]:
        return {"files": {p: e.to_dict() for p, e in sorted(self.entries.items())}}


class ManifestLoader(yaml.SafeLoader):
    """Safe loader that reads bare numbers as strings, so all-digit digests stay intact."""


ManifestLoader.yaml_implicit_resolvers = {
    first: [(tag, regexp) for tag, regexp in resolvers if tag not in NUMBER_TAGS]
    for first, resolvers in yaml.SafeLoader.yaml_implicit_resolvers.items()
}


def parse_manifest(text: str, source: str = "") -> DatasetManifest:
    try:
        raw = yaml.load(text, Loader=ManifestLoader) or {}
    except yaml.YAMLError as e:
        raise DatasetError(f"Manifest {source} is not valid YAML: {e}") from e
    files = raw.get("files") if isinstance(raw, dict) else None
    if files is None:
        files = {}
    if not isinstance(files, dict):
        raise DatasetError(f"Manifest {source} needs a 'files' mapping")
    entries: Dict[str, ManifestEntry] = {}
    for path, data in files.items():
        data = data or {}
        try:
            entries[str(path)] = ManifestEntry(
                str(path),
                sha256=None if data.get("sha256") is None else str(data["sha256"]),
                tier=int(data.get("tier", 1)),
                locus=str(data.get("locus", "")),
                notes=[str(n) for n in data.get("notes") or []],
            )
        except (TypeError, ValueError) as e:
            raise DatasetError(f"Manifest {source}: bad entry for {path}: {e}") from e
    return DatasetManifest(entries, source)


def discover_manifest(root: Path) -> DatasetManifest:
    """Unverified entries for every recognized data file under root."""
    entries = {}
    for path in sorted(root.rglob("*")):
        if path.is_file() and path.suffix in PARSERS:
            rel = path.relative_to(root).as_posix()
            entries[rel] = ManifestEntry(rel, tier=0)
    return DatasetManifest(entries, str(root))


def write_manifest(manifest: DatasetManifest, path: Union[str, Path]) -> None:
    Path(path).write_text(
        yaml.safe_dump(manifest.to_dict(), sort_keys=False, allow_unicode=True), encoding="utf-8"
    )


@dataclass
class Dataset:
    """Parsed objects keyed by their path relative to the data directory."""

    root: Path
    manifest: DatasetManifest
    objects: Dict[str, Any] = field(default_factory=dict)
    failures: Dict[str, str] = field(default_factory=dict)
    normalizations: List[str] = field(default_factory=list)
    manifest_found: bool = True

    def has(self, path: str) -> bool:
        return path in self.objects

    def missing(self, paths: Iterable[str]) -> List[str]:
        return [p for p in paths if p not in self.objects]

    def get(self, path: str) -> Any:
        if path not in self.objects:
            reason = self.failures.get(path, "not in the dataset")
            raise DatasetError(f"Required data file {path} unavailable: {reason}")
        return self.objects[path]

    def summary(self) -> Dict[str, Any]:
        return {
            "root": str(self.root),
            "manifest": self.manifest.source,
            "manifest_found": self.manifest_found,
            "files": len(self.manifest),
            "ingested": len(self.objects),
            "failures": dict(sorted(self.failures.items())),
            "normalizations": list(self.normalizations),
            "digests": self.manifest.digests(),
        }


@timing_decorator("ingest", performance_monitor)
def ingest(
    data_dir: Union[str, Path], manifest_name: str = "MANIFEST", verify_digests: bool = True
) -> Dataset:
    """Parse every manifest file, itemizing digest mismatches and parse failures."""
    root = Path(data_dir)
    if not root.is_dir():
        raise DatasetError(f"Data directory not found: {root}")
    manifest_path = root / manifest_name
    if manifest_path.is_file():
        manifest = parse_manifest(manifest_path.read_text(encoding="utf-8"), str(manifest_path))
        found = True
    else:
        manifest = discover_manifest(root)
        found = False
        logger.warning("no manifest, ingesting unverified files", directory=str(root), files=len(manifest))
    dataset = Dataset(root, manifest, manifest_found=found)
    for rel, entry in sorted(manifest.entries.items()):
        path = root / rel
        if not path.is_file():
            dataset.failures[rel] = "file missing"
            continue
        parser = PARSERS.get(path.suffix)
        if parser is None:
            dataset.failures[rel] = f"no parser for suffix {path.suffix!r}"
            continue
        if verify_digests and found and not entry.sha256:
            dataset.failures[rel] = "no digest in manifest"
            continue
        if verify_digests and entry.sha256:
            actual = file_digest(path)
            if actual != entry.sha256:
                dataset.failures[rel] = f"digest mismatch: expected {entry.sha256[:12]}, found {actual[:12]}"
                continue
        try:
            obj = parser(path)
        except (ForgeError, ValueError) as e:
            dataset.failures[rel] = f"parse failure: {e}"
            continue
        dataset.objects[rel] = obj
        dataset.normalizations += [f"{rel}: {note}" for note in entry.notes]
        if isinstance(obj, Presentation):
            dataset.normalizations += [f"{rel}: {note}" for note in obj.notes]
    for rel, reason in dataset.failures.items():
        logger.warning("data file rejected", file=rel, reason=reason)
    logger.info(
        "dataset ingested",
        directory=str(root),
        files=len(manifest),
        ingested=len(dataset.objects),
        failures=len(dataset.failures),
    )
    return dataset
