"""
Base and strong generating sets by randomized Schreier-Sims.

Construction sifts random elements (product replacement) until a run of
consecutive sifts succeeds, then verifies the result deterministically by
sifting every Schreier generator of every level, bottom level first. A
failing Schreier generator is added as a strong generator and the procedure
repeats, so a BSGSGroup is only ever returned complete.

Transversals are Schreier vectors over the level's strong generators and
their inverses. Levels whose orbit is small enough also cache explicit
inverse transversal elements so sifting through them costs one product.
"""

import random
from dataclasses import dataclass
from math import prod
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from ..core.errors import NotInGroupError, ShapeError
from .perm import Perm

logger = structlog.get_logger(__name__)

# explicit transversals are cached while orbit length * degree stays below this
EXPLICIT_TRANSVERSAL_ENTRIES = 2**25
# consecutive successful random sifts that end the randomized phase
RANDOM_SIFT_STREAK = 30


def _identity(n: int) -> np.ndarray:
    return np.arange(n, dtype=np.int32)


def _inverse(image: np.ndarray) -> np.ndarray:
    inv = np.empty_like(image)
    inv[image] = np.arange(len(image), dtype=np.int32)
    return inv


def _is_identity(image: np.ndarray) -> bool:
    return bool(np.array_equal(image, np.arange(len(image), dtype=np.int32)))


class ProductReplacer:
    """Random group elements by the product replacement ("rattle") method."""

    def __init__(self, gens: Sequence[np.ndarray], degree: int, rng: random.Random,
                 accumulators: int = 5, extra_slots: int = 5, scramble: int = 30):
        self.rng = rng
        identity = _identity(degree)
        self.reservoir = [identity] * extra_slots + [g for g in gens]
        self.accumulators = [identity] * accumulators
        self.current = 0
        for _ in range(max(scramble, 4 * len(gens))):
            self.stir()

    def stir(self) -> np.ndarray:
        rng = self.rng
        i = rng.randrange(1, len(self.reservoir))
        j = rng.randrange(1, len(self.reservoir))
        p = self.reservoir[i]
        if rng.randrange(2):
            p = _inverse(p)
        c = p[self.reservoir[0]]
        self.reservoir[0] = c
        if rng.randrange(2):
            c = _inverse(c)
        q = c[self.reservoir[j]]
        self.reservoir[j] = q
        if rng.randrange(2):
            q = _inverse(q)
        self.current = (self.current + 1) % len(self.accumulators)
        r = q[self.accumulators[self.current]]
        self.accumulators[self.current] = r
        return r


@dataclass
class _Level:
    """One stabilizer-chain level: base point, generators and transversal."""

    point: int
    gens: List[int]
    labels: List[np.ndarray]
    label_inverses: List[np.ndarray]
    schreier: np.ndarray
    orbit: np.ndarray
    inverse_transversal: Optional[np.ndarray] = None
    rows: Optional[np.ndarray] = None

    @property
    def size(self) -> int:
        return len(self.orbit)

    def contains_point(self, b: int) -> bool:
        return self.schreier[b] != -1

    def parent(self, b: int) -> int:
        return int(self.label_inverses[self.schreier[b]][b])

    def to_base(self, x: np.ndarray, b: int) -> np.ndarray:
        """x * u_b^-1, where u_b maps the base point to b."""
        if self.inverse_transversal is not None:
            return self.inverse_transversal[self.rows[b]][x]
        while b != self.point:
            k = self.schreier[b]
            x = self.label_inverses[k][x]
            b = int(self.label_inverses[k][b])
        return x

    def path(self, b: int) -> List[int]:
        """Label indices whose product, in order, maps the base point to b."""
        labels = []
        while b != self.point:
            k = int(self.schreier[b])
            labels.append(k)
            b = int(self.label_inverses[k][b])
        return labels[::-1]

    def transversal(self, b: int) -> np.ndarray:
        u = _identity(len(self.schreier))
        for k in self.path(b):
            u = self.labels[k][u]
        return u


def _build_level(point: int, gens: List[int], strong: List[np.ndarray], n: int) -> _Level:
    labels: List[np.ndarray] = []
    label_inverses: List[np.ndarray] = []
    for index in gens:
        g = strong[index]
        g_inv = _inverse(g)
        labels.extend([g, g_inv])
        label_inverses.extend([g_inv, g])

    schreier = np.full(n, -1, dtype=np.int32)
    schreier[point] = -2
    layers = [np.array([point], dtype=np.int32)]
    frontier = layers[0]
    while frontier.size:
        found = []
        for k, label in enumerate(labels):
            images = label[frontier]
            fresh = images[schreier[images] == -1]
            if fresh.size:
                fresh = np.unique(fresh)
                schreier[fresh] = k
                found.append(fresh)
        frontier = np.concatenate(found) if found else np.zeros(0, dtype=np.int32)
        if frontier.size:
            layers.append(frontier)
    orbit = np.concatenate(layers)
    level = _Level(point, list(gens), labels, label_inverses, schreier, orbit)

    if len(orbit) * n <= EXPLICIT_TRANSVERSAL_ENTRIES:
        rows = np.full(n, -1, dtype=np.int64)
        rows[orbit] = np.arange(len(orbit))
        table = np.empty((len(orbit), n), dtype=np.int32)
        table[0] = _identity(n)
        for r in range(1, len(orbit)):
            b = int(orbit[r])
            k = schreier[b]
            parent = int(label_inverses[k][b])
            table[r] = table[rows[parent]][label_inverses[k]]
        level.inverse_transversal = table
        level.rows = rows
    return level


class BSGSGroup:
    """A permutation group with a verified base and strong generating set."""

    def __init__(self, degree: int, generators: Sequence[Perm]):
        self.degree = degree
        self.generators: List[Perm] = list(generators)
        self._strong: List[np.ndarray] = []
        self._generator_count = sum(1 for g in self.generators if not g.is_identity())
        self._levels: List[_Level] = []

    # -- construction ----------------------------------------------------------

    def _level_generators(self, depth: int) -> List[int]:
        fixed = [lev.point for lev in self._levels[:depth]]
        return [
            i for i, s in enumerate(self._strong) if all(s[p] == p for p in fixed)
        ]

    def _rebuild(self, upto: int) -> None:
        for depth in range(upto + 1):
            level = self._levels[depth]
            self._levels[depth] = _build_level(
                level.point, self._level_generators(depth), self._strong, self.degree
            )

    def _append_base_point(self, point: int) -> None:
        depth = len(self._levels)
        self._levels.append(
            _build_level(point, self._level_generators(depth), self._strong, self.degree)
        )

    def _sift(self, x: np.ndarray, start: int = 0) -> Tuple[np.ndarray, int]:
        for depth in range(start, len(self._levels)):
            level = self._levels[depth]
            b = int(x[level.point])
            if not level.contains_point(b):
                return x, depth
            x = level.to_base(x, b)
        return x, len(self._levels)

    def _add_strong(self, residue: np.ndarray, depth: int) -> None:
        self._strong.append(residue)
        if depth == len(self._levels):
            moved = np.flatnonzero(residue != _identity(self.degree))
            self._append_base_point(int(moved[0]))
            depth -= 1
        self._rebuild(min(depth, len(self._levels) - 1))

    def _random_phase(self, replacer: ProductReplacer, streak: int) -> None:
        run = 0
        while run < streak:
            residue, depth = self._sift(replacer.stir())
            if depth == len(self._levels) and _is_identity(residue):
                run += 1
                continue
            run = 0
            self._add_strong(residue, depth)

    def _verify(self) -> Optional[Tuple[np.ndarray, int]]:
        """First Schreier generator that fails to sift, checked bottom level first."""
        for depth in reversed(range(len(self._levels))):
            level = self._levels[depth]
            # the input generators alone generate the top level
            limit = self._generator_count if depth == 0 else len(self._strong)
            positions = [k for k, i in enumerate(level.gens) if i < limit]
            gen_images = [self._strong[level.gens[k]] for k in positions]
            gen_labels = [2 * k for k in positions]
            children: Dict[int, List[int]] = {}
            for b in level.orbit[1:]:
                children.setdefault(level.parent(int(b)), []).append(int(b))

            stack = [(level.point, _identity(self.degree))]
            while stack:
                b, u_b = stack.pop()
                for image, label in zip(gen_images, gen_labels):
                    c = int(image[b])
                    if level.schreier[c] == label and level.parent(c) == b:
                        continue
                    x = level.to_base(image[u_b], c)
                    residue, failed = self._sift(x, depth + 1)
                    if failed < len(self._levels) or not _is_identity(residue):
                        return residue, failed
                for child in children.get(b, []):
                    stack.append((child, level.labels[level.schreier[child]][u_b]))
        return None

    # -- queries -----------------------------------------------------------------

    @property
    def base(self) -> List[int]:
        return [lev.point for lev in self._levels]

    @property
    def strong_generators(self) -> List[Perm]:
        return [Perm._trusted(s.copy()) for s in self._strong]

    @property
    def orbit_lengths(self) -> List[int]:
        return [lev.size for lev in self._levels]

    def order(self) -> int:
        return prod(self.orbit_lengths)

    def stabilizer_order(self, depth: int) -> int:
        """Order of the pointwise stabilizer of the first depth base points."""
        return prod(self.orbit_lengths[depth:])

    def basic_orbit(self, depth: int) -> List[int]:
        return [int(b) for b in self._levels[depth].orbit]

    def sift(self, p: Perm) -> Tuple[Perm, int]:
        """Residue of p and the level where sifting stopped."""
        self._check_degree(p)
        residue, depth = self._sift(p.image)
        return Perm._trusted(residue.copy()), depth

    def contains(self, p: Perm) -> bool:
        if p.degree != self.degree:
            return False
        residue, depth = self._sift(p.image)
        return depth == len(self._levels) and _is_identity(residue)

    def base_images(self, p: Perm) -> Tuple[int, ...]:
        return tuple(int(p.image[b]) for b in self.base)

    def transversal_element(self, depth: int, point: int) -> Perm:
        level = self._levels[depth]
        if not level.contains_point(point):
            raise NotInGroupError(f"Point {point} is not in basic orbit {depth}")
        return Perm._trusted(level.transversal(point))

    def element_from_base_images(self, images: Sequence[int]) -> Perm:
        """The unique element with the given base images."""
        images = list(images)
        if len(images) != len(self._levels):
            raise ShapeError(f"Expected {len(self._levels)} base images, got {len(images)}")
        factors = []
        targets = np.asarray(images, dtype=np.int32)
        for depth, level in enumerate(self._levels):
            b = int(targets[depth])
            if not level.contains_point(b):
                raise NotInGroupError(f"No element has base image {b} at level {depth}")
            u = level.transversal(b)
            factors.append(u)
            targets = _inverse(u)[targets]
        element = _identity(self.degree)
        for u in reversed(factors):
            element = u[element]
        return Perm._trusted(element)

    def points_under(self, images: Sequence[int], points: Sequence[int]) -> np.ndarray:
        """Images of some points under the element with the given base images.

        Walks the Schreier vectors point-wise, so the element itself is never
        built; the cost grows with the number of points, not the degree.
        """
        if len(images) != len(self._levels):
            raise ShapeError(f"Expected {len(self._levels)} base images, got {len(images)}")
        targets = np.asarray(images, dtype=np.int64)
        paths = []
        for depth, level in enumerate(self._levels):
            b = int(targets[depth])
            if not level.contains_point(b):
                raise NotInGroupError(f"No element has base image {b} at level {depth}")
            path = level.path(b)
            paths.append((level, path))
            for k in reversed(path):
                targets = level.label_inverses[k][targets]
        values = np.asarray(points, dtype=np.int64)
        for level, path in reversed(paths):
            for k in path:
                values = level.labels[k][values]
        return values

    def random_element(self, rng: random.Random) -> Perm:
        """Uniformly random element, as a product of random transversal elements."""
        element = _identity(self.degree)
        for level in reversed(self._levels):
            b = int(level.orbit[rng.randrange(level.size)])
            element = level.transversal(b)[element]
        return Perm._trusted(element)

    def _check_degree(self, p: Perm) -> None:
        if p.degree != self.degree:
            raise ShapeError(f"Permutation of degree {p.degree} in a group of degree {self.degree}")

    def __repr__(self) -> str:
        return f"BSGSGroup(degree={self.degree}, order={self.order()}, base={self.base})"


def schreier_sims(
    gens: Sequence[Perm],
    seed: int = 0,
    base: Optional[Sequence[int]] = None,
    randomize_base: bool = False,
    degree: Optional[int] = None,
) -> BSGSGroup:
    """Verified BSGS for the group generated by gens.

    base gives an optional prefix of base points; randomize_base draws the
    prefix as a seeded shuffle of all points, for independent recomputations.
    """
    gens = list(gens)
    if not gens and degree is None:
        raise ShapeError("Need generators or an explicit degree")
    n = degree if degree is not None else gens[0].degree
    for g in gens:
        if g.degree != n:
            raise ShapeError(f"Generators of different degrees: {g.degree} and {n}")
    rng = random.Random(seed)

    group = BSGSGroup(n, gens)
    group._strong = [g.image for g in gens if not g.is_identity()]
    points = list(base or [])
    if randomize_base:
        shuffled = list(range(n))
        rng.shuffle(shuffled)
        points = shuffled[: min(n, 4)]
    for s in group._strong:
        if all(s[p] == p for p in points):
            points.append(int(np.flatnonzero(s != _identity(n))[0]))
    for p in points:
        group._append_base_point(p)
    if not group._strong:
        group._levels = []
        return group

    replacer = ProductReplacer(group._strong, n, rng)
    rounds = 0
    while True:
        rounds += 1
        group._random_phase(replacer, RANDOM_SIFT_STREAK)
        failure = group._verify()
        if failure is None:
            break
        residue, depth = failure
        logger.debug("schreier generator failed to sift", level=depth, round=rounds)
        group._add_strong(residue, depth)

    # drop levels whose orbit is a single point
    group._levels = [lev for lev in group._levels if lev.size > 1]
    logger.debug(
        "bsgs verified", degree=n, order=group.order(), base_length=len(group._levels), rounds=rounds
    )
    return group


def order(group: BSGSGroup) -> int:
    return group.order()


def contains(group: BSGSGroup, p: Perm) -> bool:
    return group.contains(p)
