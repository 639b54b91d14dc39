"""
G-modules given by generator matrices.

A GModule is a named generating set of invertible matrices acting on row
vectors from the right (v -> v*g). Derived modules (dual, tensor, exterior
power, restriction, sub- and quotient modules) keep generator names so that
modules for the same group can be compared name by name.
"""

import itertools
from math import comb
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import numpy as np
import structlog

from ..core.errors import FieldMismatchError, ShapeError, SingularMatrixError
from . import linalg
from .field import FieldSpec
from .matrix import Mat, _as_field

logger = structlog.get_logger(__name__)


class GModule:
    """Finite-dimensional right module given by named generator matrices."""

    def __init__(self, q, dim: int, generators: Mapping[str, Mat], name: str = ""):
        self.field: FieldSpec = _as_field(q)
        self.dim = dim
        self.name = name
        self.generators: Dict[str, Mat] = dict(generators)
        for gen_name, g in self.generators.items():
            if g.q != self.field.q:
                raise FieldMismatchError(
                    f"Generator {gen_name} lives over GF({g.q}), module over {self.field}"
                )
            if g.shape != (dim, dim):
                raise ShapeError(
                    f"Generator {gen_name} has shape {g.shape}, expected {dim}x{dim}"
                )

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def names(self) -> List[str]:
        return list(self.generators)

    def __getitem__(self, name: str) -> Mat:
        return self.generators[name]

    def __iter__(self):
        return iter(self.generators.items())

    def __len__(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"GModule{label}(GF({self.q}), dim={self.dim}, gens={self.names})"

    def check_invertible(self) -> None:
        for gen_name, g in self.generators.items():
            if not g.is_invertible():
                raise SingularMatrixError(f"Generator {gen_name} is singular")

    # -- constructions -------------------------------------------------------

    @classmethod
    def from_perms(
        cls, q, perms: Mapping[str, Sequence[int]], name: str = ""
    ) -> "GModule":
        """Permutation module: basis vector i maps to basis vector perm[i]."""
        gens = {n: Mat.from_permutation(q, images) for n, images in perms.items()}
        degrees = {len(images) for images in perms.values()}
        if len(degrees) != 1:
            raise ShapeError(f"Permutations of different degrees: {sorted(degrees)}")
        return cls(q, degrees.pop(), gens, name=name)

    def dual(self) -> "GModule":
        return GModule(
            self.field,
            self.dim,
            {n: g.dual() for n, g in self.generators.items()},
            name=f"{self.name}*" if self.name else "",
        )

    def restrict(self, names: Iterable[str]) -> "GModule":
        """Restriction to the subgroup generated by the named generators."""
        names = list(names)
        missing = [n for n in names if n not in self.generators]
        if missing:
            raise KeyError(f"Unknown generators: {missing}")
        return GModule(self.field, self.dim, {n: self.generators[n] for n in names})

    def with_generators(self, generators: Mapping[str, Mat]) -> "GModule":
        """Module over the same space with generators given as matrices."""
        return GModule(self.field, self.dim, generators, name=self.name)

    def tensor(self, other: "GModule") -> "GModule":
        _check_compatible(self, other)
        gens = {
            n: Mat(self.field, np.kron(self[n].entries, other[n].entries))
            for n in self.names
        }
        return GModule(self.field, self.dim * other.dim, gens)

    def exterior_power(self, k: int) -> "GModule":
        """k-th exterior power on the basis of increasing k-subsets (lex order)."""
        if not 0 <= k <= self.dim:
            raise ValueError(f"Exterior power {k} out of range for dimension {self.dim}")
        subsets = list(itertools.combinations(range(self.dim), k))
        gens = {
            n: Mat(self.field, _wedge_matrix(g.entries, subsets, self.q))
            for n, g in self.generators.items()
        }
        logger.debug("exterior power built", dim=len(subsets), k=k)
        return GModule(self.field, comb(self.dim, k), gens)

    def block_action(self, start: int, stop: int) -> "GModule":
        """Module on the diagonal block start..stop-1 of every generator."""
        return GModule(
            self.field,
            stop - start,
            {n: g.block(start, stop, start, stop) for n, g in self.generators.items()},
        )

    # -- subspaces -----------------------------------------------------------

    def spin(self, seeds) -> np.ndarray:
        """Echelonized basis of the smallest invariant subspace containing seeds."""
        return spin(self, seeds)

    def submodule(self, basis: np.ndarray) -> "GModule":
        """Action on an invariant subspace, in coordinates of its RREF basis."""
        basis, pivots = linalg.rref(basis, self.q)
        gens = {}
        for n, g in self.generators.items():
            images = linalg.product_mod(basis, g.entries, self.q)
            residue = linalg.reduce_against(images, basis, pivots, self.q)
            if residue.any():
                raise ShapeError(f"Subspace is not invariant under {n}")
            gens[n] = Mat(self.field, images[:, pivots])
        return GModule(self.field, len(pivots), gens)

    def quotient(self, basis: np.ndarray) -> "GModule":
        """Action on V/U for an invariant subspace U, in complement coordinates."""
        basis, pivots = linalg.rref(basis, self.q)
        free = [c for c in range(self.dim) if c not in set(pivots)]
        complement = np.zeros((len(free), self.dim), dtype=np.int64)
        complement[np.arange(len(free)), free] = 1
        gens = {}
        for n, g in self.generators.items():
            images = linalg.product_mod(complement, g.entries, self.q)
            residue = linalg.reduce_against(images, basis, pivots, self.q)
            gens[n] = Mat(self.field, residue[:, free])
        return GModule(self.field, len(free), gens)

    def is_invariant(self, basis: np.ndarray) -> bool:
        basis, pivots = linalg.rref(basis, self.q)
        for g in self.generators.values():
            images = linalg.product_mod(basis, g.entries, self.q)
            if linalg.reduce_against(images, basis, pivots, self.q).any():
                return False
        return True

    def algebra_element(self, terms: Sequence[Tuple[int, Sequence[str]]]) -> Mat:
        """Sum of coefficient * product of named generators."""
        total = np.zeros((self.dim, self.dim), dtype=np.int64)
        for coefficient, word in terms:
            product = Mat.identity(self.field, self.dim)
            for n in word:
                product = product * self.generators[n]
            total = (total + coefficient * product.entries) % self.q
        return Mat(self.field, total)


def _check_compatible(a: GModule, b: GModule) -> None:
    if a.q != b.q:
        raise FieldMismatchError(f"Modules over GF({a.q}) and GF({b.q})")
    if set(a.names) != set(b.names):
        raise KeyError(f"Generator names differ: {a.names} vs {b.names}")


def _leibniz_terms(k: int) -> List[Tuple[Tuple[int, ...], int]]:
    terms = []
    for perm in itertools.permutations(range(k)):
        inversions = sum(
            1 for i in range(k) for j in range(i + 1, k) if perm[i] > perm[j]
        )
        terms.append((perm, -1 if inversions % 2 else 1))
    return terms


def _wedge_matrix(g: np.ndarray, subsets: List[Tuple[int, ...]], q: int) -> np.ndarray:
    """Matrix of k x k minors g[S, T] for all subsets S (rows), T (columns)."""
    n_sub = len(subsets)
    if n_sub == 0:
        return np.zeros((0, 0), dtype=np.int64)
    k = len(subsets[0])
    if k == 0:
        return np.ones((1, 1), dtype=np.int64)
    index = np.asarray(subsets, dtype=np.int64)
    terms = _leibniz_terms(k)
    result = np.zeros((n_sub, n_sub), dtype=np.int64)
    for s_pos, s in enumerate(subsets):
        rows = g[list(s)]
        # sub[t, i, j] = g[s_i, t_j]
        sub = rows[:, index].transpose(1, 0, 2)
        det = np.zeros(n_sub, dtype=np.int64)
        for perm, sign in terms:
            product = np.ones(n_sub, dtype=np.int64)
            for i in range(k):
                product = (product * sub[:, i, perm[i]]) % q
            det += sign * product
        result[s_pos] = det % q
    return result


def spin(module: GModule, seeds) -> np.ndarray:
    """Echelonized basis of the submodule generated by seed vectors."""
    q = module.q
    seeds = np.asarray(seeds, dtype=np.int64)
    if seeds.size == 0:
        return np.zeros((0, module.dim), dtype=np.int64)
    if seeds.ndim == 1:
        seeds = seeds.reshape(1, -1)
    if seeds.shape[1] != module.dim:
        raise ShapeError(f"Seed length {seeds.shape[1]} != module dimension {module.dim}")

    basis, pivots = linalg.rref(seeds, q)
    frontier = basis
    gens = [g.entries for g in module.generators.values()]
    while len(frontier) and len(pivots) < module.dim:
        images = np.vstack([linalg.product_mod(frontier, g, q) for g in gens])
        residue = linalg.reduce_against(images, basis, pivots, q)
        residue = residue[residue.any(axis=1)]
        if len(residue) == 0:
            break
        count = len(pivots)
        basis, pivots = linalg.extend_rref(basis, pivots, residue, q)
        frontier = basis[count:]
    return linalg.sort_rref(basis, pivots)[0]

