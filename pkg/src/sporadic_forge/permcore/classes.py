"""
Subgroup constructions and conjugacy-class orbits on top of a verified BSGS.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from ..core.errors import EnumerationCapError, NotInGroupError
from .bsgs import BSGSGroup, schreier_sims
from .perm import Perm

logger = structlog.get_logger(__name__)

DEFAULT_ENUM_CAP = 2**20
DEFAULT_CLASS_CAP = 10_000_000


@dataclass
class ClassOrbitResult:
    """Size of a conjugacy class, or an overflow marker when the cap is hit."""

    size: int
    overflow: bool = False

    def __int__(self) -> int:
        return self.size


def class_orbit(
    group: BSGSGroup,
    x: Perm,
    cap: int = DEFAULT_CLASS_CAP,
    fingerprint_points: int = 8,
) -> ClassOrbitResult:
    """Breadth-first search over conjugates of x by the group's generators.

    Elements are stored by their base images, which determine them uniquely.
    The first few base images index a bucket and buckets hold full image
    tuples, so collisions are resolved by exact comparison.
    """
    if not group.contains(x):
        raise NotInGroupError("Class representative is not in the group")
    base = np.asarray(group.base, dtype=np.int64)
    width = min(fingerprint_points, len(base))
    gens = [g.image.astype(np.int64) for g in group.generators]
    gen_inverses = [g.inverse().image.astype(np.int64) for g in group.generators]
    # base images of x^g are g applied to x at these points
    preimages = np.concatenate([inv[base] for inv in gen_inverses] + [np.zeros(0, dtype=np.int64)])

    def images_of(element: Perm) -> Tuple[int, ...]:
        return tuple(int(i) for i in element.image[base])

    buckets: Dict[Tuple[int, ...], List[Tuple[int, ...]]] = {}

    def insert(images: Tuple[int, ...]) -> bool:
        bucket = buckets.setdefault(images[:width], [])
        if images in bucket:
            return False
        bucket.append(images)
        return True

    start = images_of(x)
    insert(start)
    size = 1
    queue = [start]
    while queue:
        images = queue.pop()
        values = group.points_under(images, preimages).reshape(len(gens), len(base))
        for g, at in zip(gens, values):
            conjugate = tuple(int(i) for i in g[at])
            if insert(conjugate):
                size += 1
                if size > cap:
                    logger.info("class orbit cap exceeded", cap=cap)
                    return ClassOrbitResult(size=cap, overflow=True)
                queue.append(conjugate)
    return ClassOrbitResult(size=size)


def enumerate_small(group: BSGSGroup, cap: int = DEFAULT_ENUM_CAP) -> List[Perm]:
    """Every element of a group of order at most cap."""
    if group.order() > cap:
        raise EnumerationCapError(f"Group order {group.order()} exceeds cap {cap}")
    elements = [np.arange(group.degree, dtype=np.int32)]
    for depth in reversed(range(len(group.base))):
        transversal = [group.transversal_element(depth, b).image for b in group.basic_orbit(depth)]
        elements = [u[e] for e in elements for u in transversal]
    return [Perm._trusted(e) for e in elements]


def subgroup_from_elements(
    elements: Sequence[Perm], degree: int, seed: int = 0
) -> BSGSGroup:
    """Group generated by the given elements, adding only those not yet contained."""
    gens: List[Perm] = []
    group = schreier_sims([], seed=seed, degree=degree)
    for e in elements:
        if e.is_identity() or group.contains(e):
            continue
        gens.append(e)
        group = schreier_sims(gens, seed=seed)
    return group


def center_small(group: BSGSGroup, cap: int = DEFAULT_ENUM_CAP, seed: int = 0) -> BSGSGroup:
    """Center of a group small enough to enumerate."""
    central = [
        e for e in enumerate_small(group, cap)
        if all(e * g == g * e for g in group.generators)
    ]
    return subgroup_from_elements(central, group.degree, seed)


def normal_closure(group: BSGSGroup, seeds: Sequence[Perm], seed: int = 0) -> BSGSGroup:
    """Smallest normal subgroup of group containing seeds."""
    for s in seeds:
        if not group.contains(s):
            raise NotInGroupError("Normal closure seed is not in the group")
    gens = [s for s in seeds if not s.is_identity()]
    closure = schreier_sims(gens, seed=seed, degree=group.degree)
    pending = list(gens)
    while pending:
        x = pending.pop()
        for g in group.generators:
            conjugate = x.conjugate(g)
            if not closure.contains(conjugate):
                gens.append(conjugate)
                pending.append(conjugate)
                closure = schreier_sims(gens, seed=seed)
    logger.debug("normal closure", order=closure.order(), generators=len(gens))
    return closure


def derived_subgroup(group: BSGSGroup, seed: int = 0) -> BSGSGroup:
    """Normal closure of the commutators of generator pairs."""
    gens = group.generators
    commutators = [
        gens[i].commutator(gens[j]) for i in range(len(gens)) for j in range(i + 1, len(gens))
    ]
    return normal_closure(group, commutators, seed)


def is_abelian(group: BSGSGroup) -> bool:
    gens = group.generators
    return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])


def exponent_divides(elements: Sequence[Perm], n: int) -> bool:
    return all((e ** n).is_identity() for e in elements)


def is_central(group: BSGSGroup, x: Perm) -> bool:
    return all(x * g == g * x for g in group.generators)


def centralizer_order_from_class(group: BSGSGroup, result: ClassOrbitResult) -> Optional[int]:
    if result.overflow:
        return None
    return group.order() // result.size
