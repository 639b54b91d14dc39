"""
Orbits and conversion of matrix actions into permutation actions.

An action is a batch map from an array of points to their images under one
generator. Perm actions move integer points; vector and projective actions
move row vectors over GF(q) (projective points are normalized so that the
first nonzero coordinate is 1). Orbits are computed breadth first with a
Schreier vector so every point carries a word from the start point.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import structlog

from ..core.errors import ShapeError
from ..gflin import linalg
from ..gflin.matrix import Mat, vectors_times
from .perm import Perm

logger = structlog.get_logger(__name__)


class PermAction:
    """Permutations acting on integer points."""

    def __init__(self, perms: Mapping[str, Perm]):
        self.names = list(perms)
        self.perms = [perms[n] for n in self.names]

    def start(self, point) -> np.ndarray:
        return np.asarray([int(point)], dtype=np.int64)

    def apply(self, k: int, points: np.ndarray) -> np.ndarray:
        return self.perms[k].image[points].astype(np.int64)

    def key(self, point) -> int:
        return int(point)


class VectorAction:
    """Matrices acting on row vectors by v -> v*g."""

    projective = False

    def __init__(self, mats: Mapping[str, Mat]):
        self.names = list(mats)
        self.mats = [mats[n] for n in self.names]
        qs = {m.q for m in self.mats}
        dims = {m.shape for m in self.mats}
        if len(qs) != 1 or len(dims) != 1:
            raise ShapeError("Action matrices must share field and shape")
        self.q = qs.pop()
        self.dim = self.mats[0].rows
        self.key_dtype = self.mats[0].field.dtype

    def normalize(self, vectors: np.ndarray) -> np.ndarray:
        return np.asarray(vectors, dtype=np.int64) % self.q

    def start(self, point) -> np.ndarray:
        v = self.normalize(np.asarray(point, dtype=np.int64).reshape(1, -1))
        if v.shape[1] != self.dim:
            raise ShapeError(f"Start vector has length {v.shape[1]}, expected {self.dim}")
        return v

    def apply(self, k: int, points: np.ndarray) -> np.ndarray:
        return self.normalize(vectors_times(points, self.mats[k]))

    def key(self, point) -> bytes:
        return np.asarray(point, dtype=self.key_dtype).tobytes()


class ProjectiveAction(VectorAction):
    """Matrices acting on 1-spaces, each represented by its normalized vector."""

    projective = True

    def normalize(self, vectors: np.ndarray) -> np.ndarray:
        return linalg.normalize_projective(vectors, self.q)

    def start(self, point) -> np.ndarray:
        v = super().start(point)
        if not v.any():
            raise ShapeError("The zero vector spans no 1-space")
        return v


Action = Union[PermAction, VectorAction]


@dataclass
class Orbit:
    """Points in discovery order with a Schreier vector back to the start."""

    action: Action
    points: np.ndarray
    parents: np.ndarray
    labels: np.ndarray
    index: Dict = field(repr=False, default_factory=dict)

    def __len__(self) -> int:
        return len(self.points)

    def position(self, point) -> int:
        return self.index[self.action.key(point)]

    def __contains__(self, point) -> bool:
        return self.action.key(point) in self.index

    def word(self, position: int) -> List[str]:
        """Generator names mapping the start point to the point at position."""
        names = []
        while position != 0:
            names.append(self.action.names[self.labels[position]])
            position = int(self.parents[position])
        return names[::-1]


def orbit(action: Action, start) -> Orbit:
    """Breadth-first orbit of start under every generator of the action."""
    first = action.start(start)
    points = [first]
    parents = [np.asarray([-1], dtype=np.int64)]
    labels = [np.asarray([-1], dtype=np.int64)]
    index = {action.key(first[0]): 0}
    frontier = first
    frontier_positions = np.asarray([0], dtype=np.int64)
    total = 1
    while len(frontier):
        new_points, new_parents, new_labels = [], [], []
        for k in range(len(action.names)):
            images = action.apply(k, frontier)
            for row, image in enumerate(images):
                key = action.key(image)
                if key in index:
                    continue
                index[key] = total
                total += 1
                new_points.append(image)
                new_parents.append(frontier_positions[row])
                new_labels.append(k)
        if not new_points:
            break
        frontier = np.asarray(new_points)
        frontier_positions = np.arange(total - len(new_points), total, dtype=np.int64)
        points.append(frontier)
        parents.append(np.asarray(new_parents, dtype=np.int64))
        labels.append(np.asarray(new_labels, dtype=np.int64))
    result = Orbit(
        action,
        np.concatenate(points),
        np.concatenate(parents),
        np.concatenate(labels),
        index,
    )
    logger.debug("orbit computed", size=len(result), generators=len(action.names))
    return result


def _sorted_points(points: np.ndarray) -> np.ndarray:
    points = np.asarray(points, dtype=np.int64)
    if points.ndim == 1:
        return np.sort(points)
    return points[np.lexsort(points.T[::-1])]


def permutations_on_points(action: Action, points: np.ndarray) -> Dict[str, Perm]:
    """Permutations induced on an invariant point list, indexed in sorted order."""
    ordered = _sorted_points(points)
    lookup = {action.key(p): i for i, p in enumerate(ordered)}
    if len(lookup) != len(ordered):
        raise ShapeError("Point list has repeated points")
    perms = {}
    for k, name in enumerate(action.names):
        images = action.apply(k, ordered)
        try:
            perms[name] = Perm([lookup[action.key(image)] for image in images])
        except KeyError as e:
            raise ShapeError(f"Point list is not invariant under {name}") from e
    return perms


def orbit_permutations(action: Action, start) -> Tuple[Dict[str, Perm], np.ndarray]:
    """Permutation action on the orbit of start, with the sorted point list."""
    found = orbit(action, start)
    ordered = _sorted_points(found.points)
    return permutations_on_points(action, ordered), ordered


def nonzero_vectors(q: int, dim: int) -> np.ndarray:
    """All nonzero vectors of GF(q)^dim, first coordinate most significant."""
    total = q**dim
    codes = np.arange(1, total, dtype=np.int64)
    powers = q ** np.arange(dim - 1, -1, -1, dtype=np.int64)
    return (codes[:, None] // powers) % q


def common_fixed_lines(mats: Sequence[Mat]) -> List[np.ndarray]:
    """Bases of the maximal common eigenspaces of a set of matrices.

    Each returned space is an intersection of one eigenspace of every matrix
    (for some choice of eigenvalues), so every vector in it spans a 1-space
    fixed by all of them.
    """
    if not mats:
        raise ShapeError("Need at least one matrix")
    q = mats[0].q
    n = mats[0].rows
    spaces = [np.eye(n, dtype=np.int64)]
    identity = np.eye(n, dtype=np.int64)
    for m in mats:
        refined = []
        for space in spaces:
            for eigenvalue in range(1, q):
                eigenspace = linalg.left_nullspace((m.entries - eigenvalue * identity) % q, q)
                if len(eigenspace) == 0:
                    continue
                common = linalg.intersect(space, eigenspace, q)
                if len(common):
                    refined.append(common)
        spaces = refined
        if not spaces:
            break
    return spaces


def common_fixed_line(mats: Sequence[Mat]) -> Optional[np.ndarray]:
    """Normalized vector spanning a 1-space fixed by every matrix, if one exists."""
    spaces = common_fixed_lines(mats)
    if not spaces:
        return None
    spaces.sort(key=lambda s: (len(s), s.tolist()))
    vector = spaces[0][0]
    return linalg.normalize_projective(vector.reshape(1, -1), mats[0].q)[0]
