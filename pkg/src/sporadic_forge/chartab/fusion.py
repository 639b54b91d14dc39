"""
Class fusion from a subgroup's table into an overgroup's table.

Fusion file format:

    FUSE D_Fi22 -> H_Fi22
    map 1a 1a
    map 2a 2a 2c        # still ambiguous: either target is admissible
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterator, List, Mapping, Optional, Tuple, Union

import structlog
from sympy import divisors

from ..core.checks import Check
from ..core.errors import ParseError, TableInconsistencyError
from ..permcore import Perm
from .table import CharacterTable, class_representatives

logger = structlog.get_logger(__name__)


@dataclass
class FusionMap:
    """Candidate target classes for every source class; singletons are definite."""

    source: str
    target: str
    candidates: Dict[str, Tuple[str, ...]] = field(default_factory=dict)

    def ambiguous(self) -> Dict[str, Tuple[str, ...]]:
        return {c: t for c, t in self.candidates.items() if len(t) > 1}

    @property
    def definite(self) -> bool:
        return all(len(t) == 1 for t in self.candidates.values())

    def is_total(self, table: CharacterTable) -> bool:
        return all(self.candidates.get(name) for name in table.class_names)

    def choices(self) -> int:
        count = 1
        for targets in self.candidates.values():
            count *= len(targets)
        return count

    def image(self, name: str) -> str:
        targets = self.candidates[name]
        if len(targets) != 1:
            raise TableInconsistencyError(f"{self.source}: class {name} fuses ambiguously into {targets}")
        return targets[0]

    def override(self, other: "FusionMap") -> "FusionMap":
        merged = dict(self.candidates)
        merged.update(other.candidates)
        return FusionMap(self.source, self.target, merged)

    def indices(self, source: CharacterTable, target: CharacterTable) -> List[Tuple[int, ...]]:
        """Candidate target indices in source class order."""
        if not self.is_total(source):
            missing = [n for n in source.class_names if not self.candidates.get(n)]
            raise TableInconsistencyError(f"Fusion {self.source} -> {self.target} is not total: {missing}")
        return [tuple(target.class_index(t) for t in self.candidates[n]) for n in source.class_names]


def parse_fusion(text: str, source: str = "") -> FusionMap:
    fusion: Optional[FusionMap] = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        if keyword == "FUSE":
            src, arrow, dst = rest.partition("->")
            if fusion is not None or not arrow or not src.strip() or not dst.strip():
                raise ParseError("Expected one 'FUSE <src> -> <dst>' header", position=lineno, source=source)
            fusion = FusionMap(src.strip(), dst.strip())
        elif keyword == "map":
            if fusion is None:
                raise ParseError("map before FUSE header", position=lineno, source=source)
            tokens = rest.split()
            if len(tokens) < 2:
                raise ParseError("map needs a source class and at least one target", position=lineno, source=source)
            if tokens[0] in fusion.candidates:
                raise ParseError(f"Class {tokens[0]} mapped twice", position=lineno, source=source)
            fusion.candidates[tokens[0]] = tuple(tokens[1:])
        else:
            raise ParseError(f"Unknown keyword {keyword!r}", position=lineno, source=source)
    if fusion is None:
        raise ParseError("Missing FUSE header", source=source)
    return fusion


def read_fusion(path: Union[str, Path]) -> FusionMap:
    path = Path(path)
    return parse_fusion(path.read_text(encoding="utf-8"), source=str(path))


def cycle_fingerprint(x: Perm) -> Tuple[Tuple[int, ...], ...]:
    """Cycle types of x^k for every proper divisor k of the order of x."""
    n = x.order()
    return tuple((x**k).cycle_type() for k in divisors(n) if k < n)


def _refine_by_powers(
    candidates: Dict[str, set], source: CharacterTable, target: CharacterTable
) -> None:
    changed = True
    while changed:
        changed = False
        for record in source.classes:
            for p, image in record.powers.items():
                if image not in candidates:
                    continue
                allowed = candidates[image]
                keep = set()
                for t in candidates[record.name]:
                    powers = target.classes[target.class_index(t)].powers
                    if p not in powers or powers[p] in allowed:
                        keep.add(t)
                if keep != candidates[record.name]:
                    candidates[record.name] = keep
                    changed = True


def fingerprint_fusion(
    source: CharacterTable,
    target: CharacterTable,
    source_elements: Optional[Mapping[str, Perm]] = None,
    target_elements: Optional[Mapping[str, Perm]] = None,
) -> FusionMap:
    """Admissible targets per source class.

    A target must have the same element order and a centralizer order
    divisible by the source centralizer order. When both tables come with
    generator assignments in one permutation representation, the cycle types
    of g^k must also agree. Power maps then prune candidates to a fixed point.
    """
    source_reps = class_representatives(source, source_elements) if source_elements else {}
    target_reps = class_representatives(target, target_elements) if target_elements else {}
    source_prints = {n: cycle_fingerprint(x) for n, x in source_reps.items()}
    target_prints = {n: cycle_fingerprint(x) for n, x in target_reps.items()}
    candidates: Dict[str, set] = {}
    for record in source.classes:
        admissible = set()
        for t in target.classes:
            if t.element_order != record.element_order or t.centralizer % record.centralizer:
                continue
            if record.name in source_prints and t.name in target_prints:
                if source_prints[record.name] != target_prints[t.name]:
                    continue
            admissible.add(t.name)
        candidates[record.name] = admissible
    _refine_by_powers(candidates, source, target)
    empty = [n for n, c in candidates.items() if not c]
    if empty:
        raise TableInconsistencyError(f"No admissible class of {target.group} for {source.group} classes {empty}")
    order = {name: i for i, name in enumerate(target.class_names)}
    fusion = FusionMap(
        source.group,
        target.group,
        {n: tuple(sorted(c, key=order.__getitem__)) for n, c in candidates.items()},
    )
    logger.info(
        "fusion fingerprinted",
        source=source.group,
        target=target.group,
        ambiguous=len(fusion.ambiguous()),
        choices=fusion.choices(),
    )
    return fusion


def iterate_fusions(fusion: FusionMap, cap: int) -> Iterator[Dict[str, str]]:
    """Every definite fusion compatible with the candidate sets, up to cap of them."""
    names = list(fusion.candidates)
    if fusion.choices() > cap:
        raise TableInconsistencyError(f"{fusion.choices()} admissible fusions exceed cap {cap}")

    def walk(i: int, chosen: Dict[str, str]) -> Iterator[Dict[str, str]]:
        if i == len(names):
            yield dict(chosen)
            return
        for t in fusion.candidates[names[i]]:
            chosen[names[i]] = t
            yield from walk(i + 1, chosen)
        chosen.pop(names[i], None)

    yield from walk(0, {})


def check_fusion(fusion: FusionMap, source: CharacterTable, target: CharacterTable) -> List[Check]:
    """Order, centralizer and power-map consistency of every listed target."""
    locus = f"{source.group} -> {target.group}"
    bad: List[str] = []
    for name, targets in fusion.candidates.items():
        record = source.classes[source.class_index(name)]
        for t in targets:
            image = target.classes[target.class_index(t)]
            if image.element_order != record.element_order or image.centralizer % record.centralizer:
                bad.append(f"{name}->{t}")
                continue
            for p, power in record.powers.items():
                if p in image.powers and power in fusion.candidates:
                    if image.powers[p] not in fusion.candidates[power]:
                        bad.append(f"{name}->{t} at {p}P")
    return [
        Check.truth("fusion is total", fusion.is_total(source), locus),
        Check.truth("fusion respects orders, centralizers and power maps", not bad, locus, ", ".join(bad[:20])),
        _definiteness(fusion, locus),
    ]


def _definiteness(fusion: FusionMap, locus: str) -> Check:
    if fusion.definite:
        return Check.truth("fusion is definite", True, locus)
    return Check.unchecked(
        "fusion is definite",
        locus,
        f"{len(fusion.ambiguous())} ambiguous classes, {fusion.choices()} admissible fusions",
    )
