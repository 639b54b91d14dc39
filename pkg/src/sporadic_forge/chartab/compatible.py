"""
Compatible pairs of multiplicity-free faithful characters.

For overgroups H and E of a common subgroup D, a character sum nu of H and
omega of E are compatible when nu|D = omega|D as class functions of D.
Both sides are enumerated as sums of distinct irreducibles up to a degree
bound, restricted through the class fusions and matched.

Fusions may still carry several admissible targets per class. Every D-class
is then compared on the set of values its candidates give: a pair is
definite when each set is a singleton and the two sides agree, and possible
when the two sets always meet. A definite pair is compatible under every
admissible fusion, and a pair compatible under some admissible fusion is
always possible.
"""

from dataclasses import dataclass, field
from itertools import combinations
from math import lcm
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from ..core.errors import TableInconsistencyError
from .cyclotomic import (
    Cyclotomic,
    CyclotomicField,
    conjugate_coordinates,
    contract_products,
    coordinate_array,
    cyclotomic_field,
)
from .fusion import FusionMap
from .table import CharacterTable

logger = structlog.get_logger(__name__)

Profile = Tuple[FrozenSet[bytes], ...]


def label_key(label: str) -> Tuple[int, str]:
    """Numeric labels in numeric order, others after them."""
    return (int(label), "") if label.isdigit() else (1 << 62, label)


@dataclass(frozen=True)
class CharacterSum:
    """A multiplicity-free sum of irreducibles of one table."""

    labels: Tuple[str, ...]
    indices: Tuple[int, ...]
    degree: int

    def __str__(self) -> str:
        return " + ".join(f"chi_{label}" for label in self.labels)


@dataclass
class CompatiblePair:
    h_side: CharacterSum
    e_side: CharacterSum
    definite: bool
    restriction: Dict[str, int] = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return self.h_side.degree

    def to_dict(self) -> Dict[str, object]:
        return {
            "h": list(self.h_side.labels),
            "e": list(self.e_side.labels),
            "degree": self.degree,
            "definite": self.definite,
            "restriction": dict(self.restriction),
        }


@dataclass
class CompatibleSearch:
    pairs: List[CompatiblePair]
    h_sums: int
    e_sums: int
    max_degree: int
    ambiguous_classes: int = 0

    @property
    def definite_pairs(self) -> List[CompatiblePair]:
        return [p for p in self.pairs if p.definite]

    @property
    def minimal_degree(self) -> Optional[int]:
        degrees = [p.degree for p in self.definite_pairs]
        return min(degrees) if degrees else None

    @property
    def settled(self) -> bool:
        """Every possible pair is definite, so the result holds for all admissible fusions."""
        return all(p.definite for p in self.pairs)


def _common_field(*tables: CharacterTable) -> CyclotomicField:
    n = 1
    for t in tables:
        n = lcm(n, t.number_field.n)
    return cyclotomic_field(n)


def table_coordinates(table: CharacterTable, number_field: CyclotomicField) -> np.ndarray:
    """Character values as int64 coordinates in a field containing the table's."""
    coords = coordinate_array(table.characters, number_field)
    return coords.astype(np.int64)


def kernel_masks(table: CharacterTable) -> List[int]:
    """Bit c is set when character i takes its degree on class c."""
    return [sum(1 << c for c in table.kernel(i)) for i in range(len(table.characters))]


def multiplicity_free_sums(
    table: CharacterTable, max_degree: int, faithful: bool = True
) -> List[CharacterSum]:
    """Sums of distinct irreducibles of degree at most max_degree.

    With faithful set, only sums whose kernel is the identity class alone are
    kept. The identity class must come first in the table.
    """
    degrees = [table.degree(i) for i in range(len(table.characters))]
    masks = kernel_masks(table)
    order = sorted(range(len(degrees)), key=lambda i: (degrees[i], i))
    everything = (1 << len(table.classes)) - 1
    found: List[CharacterSum] = []

    def walk(start: int, chosen: List[int], degree: int, kernel: int) -> None:
        if chosen and (not faithful or kernel == 1):
            picked = tuple(sorted(chosen, key=lambda i: label_key(table.labels[i])))
            found.append(CharacterSum(tuple(table.labels[i] for i in picked), picked, degree))
        for pos in range(start, len(order)):
            i = order[pos]
            if degree + degrees[i] > max_degree:
                break
            chosen.append(i)
            walk(pos + 1, chosen, degree + degrees[i], kernel & masks[i])
            chosen.pop()

    walk(0, [], 0, everything)
    found.sort(key=lambda s: (s.degree, [label_key(x) for x in s.labels]))
    logger.debug("character sums enumerated", group=table.group, max_degree=max_degree, sums=len(found))
    return found


def restriction_profile(
    coords: np.ndarray, selected: Sequence[int], fusion: Sequence[Tuple[int, ...]]
) -> Profile:
    """Per subgroup class, the set of values the sum can take over admissible targets."""
    values = coords[list(selected)].sum(axis=0)
    return tuple(frozenset(values[t].tobytes() for t in targets) for targets in fusion)


def restrict(values: Sequence[Cyclotomic], fusion: Sequence[Tuple[int, ...]]) -> List[Cyclotomic]:
    """Restriction of a class function through a definite fusion."""
    out = []
    for targets in fusion:
        if len(targets) != 1:
            raise TableInconsistencyError(f"Restriction through an ambiguous fusion: {targets}")
        out.append(values[targets[0]])
    return out


def decompose(
    table: CharacterTable,
    values: np.ndarray,
    number_field: CyclotomicField,
    coords: Optional[np.ndarray] = None,
) -> Dict[str, int]:
    """Multiplicities of the irreducibles of table in a class function.

    values holds coordinates in number_field, one row per class of table.
    Raises TableInconsistencyError when the class function is not a
    character.
    """
    if coords is None:
        coords = table_coordinates(table, number_field)
    conj = conjugate_coordinates(number_field, coords).astype(object)
    sizes = np.array(table.sizes, dtype=object)
    weighted = values.astype(object) * sizes[:, None]
    # (1, k, degree) with the single left index from the leading axis
    products = contract_products(number_field, weighted[None], conj, 1, 0)[0]
    multiplicities: Dict[str, int] = {}
    for label, row in zip(table.labels, products):
        head = row[0]
        if any(row[1:]) or head % table.order or head < 0:
            raise TableInconsistencyError(f"Restriction to {table.group} is not a character at {label}")
        if head:
            multiplicities[label] = int(head // table.order)
    return multiplicities


def compatible_pairs(
    h_table: CharacterTable,
    e_table: CharacterTable,
    d_table: CharacterTable,
    fusion_h: FusionMap,
    fusion_e: FusionMap,
    max_degree: int,
) -> CompatibleSearch:
    """All compatible pairs of faithful multiplicity-free sums up to max_degree."""
    number_field = _common_field(h_table, e_table, d_table)
    into_h = fusion_h.indices(d_table, h_table)
    into_e = fusion_e.indices(d_table, e_table)
    h_coords = table_coordinates(h_table, number_field)
    e_coords = table_coordinates(e_table, number_field)
    h_sums = multiplicity_free_sums(h_table, max_degree)
    e_sums = multiplicity_free_sums(e_table, max_degree)
    e_profiles: Dict[int, List[Tuple[CharacterSum, Profile]]] = {}
    for s in e_sums:
        e_profiles.setdefault(s.degree, []).append((s, restriction_profile(e_coords, s.indices, into_e)))
    d_coords = table_coordinates(d_table, number_field)
    pairs: List[CompatiblePair] = []
    for h_sum in h_sums:
        h_profile = restriction_profile(h_coords, h_sum.indices, into_h)
        for e_sum, e_profile in e_profiles.get(h_sum.degree, []):
            if not all(a & b for a, b in zip(h_profile, e_profile)):
                continue
            definite = all(len(a) == 1 and a == b for a, b in zip(h_profile, e_profile))
            restriction: Dict[str, int] = {}
            if definite:
                values = np.stack([np.frombuffer(next(iter(a)), dtype=np.int64) for a in h_profile])
                restriction = decompose(d_table, values, number_field, d_coords)
            pairs.append(CompatiblePair(h_sum, e_sum, definite, restriction))
    pairs.sort(
        key=lambda p: (p.degree, [label_key(x) for x in p.h_side.labels], [label_key(x) for x in p.e_side.labels])
    )
    search = CompatibleSearch(
        pairs,
        len(h_sums),
        len(e_sums),
        max_degree,
        len(fusion_h.ambiguous()) + len(fusion_e.ambiguous()),
    )
    logger.info(
        "compatible pairs searched",
        h=h_table.group,
        e=e_table.group,
        d=d_table.group,
        h_sums=len(h_sums),
        e_sums=len(e_sums),
        pairs=len(pairs),
        definite=len(search.definite_pairs),
    )
    return search


def compatible_pairs_exhaustive(
    h_table: CharacterTable,
    e_table: CharacterTable,
    d_table: CharacterTable,
    h_fusion: Sequence[int],
    e_fusion: Sequence[int],
    max_degree: int,
) -> List[Tuple[Tuple[str, ...], Tuple[str, ...]]]:
    """Reference search over every subset pair for a definite fusion, with exact values."""
    def sums(table: CharacterTable) -> List[Tuple[Tuple[int, ...], List[Cyclotomic]]]:
        k = len(table.characters)
        out = []
        for r in range(1, k + 1):
            for subset in combinations(range(k), r):
                zero = table.number_field.zero()
                values = [sum((table.characters[i][c] for i in subset), zero) for c in range(k)]
                if values[0].rational() > max_degree:
                    continue
                if any(values[c] == values[0] for c in range(1, k)):
                    continue
                out.append((subset, values))
        return out

    result = []
    for h_subset, h_values in sums(h_table):
        for e_subset, e_values in sums(e_table):
            if all(h_values[h_fusion[c]] == e_values[e_fusion[c]] for c in range(len(d_table.classes))):
                result.append(
                    (tuple(h_table.labels[i] for i in h_subset), tuple(e_table.labels[i] for i in e_subset))
                )
    return sorted(result)
