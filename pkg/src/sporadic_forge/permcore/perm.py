"""
Permutations and permutation files.

Points are 0-based internally and 1-based in every file and printed form.
Permutations act on the right and compose left to right: i^(p*q) = (i^p)^q.
"""

import re
from math import lcm
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from ..core.errors import ParseError, ShapeError

CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Perm:
    """An immutable permutation of {0, ..., n-1} held as an image array."""

    __slots__ = ("image", "_hash")

    def __init__(self, image):
        array = np.array(image, dtype=np.int32)
        if array.ndim != 1:
            raise ShapeError(f"Permutation image must be one-dimensional: {array.shape}")
        n = len(array)
        if n and (array.min() < 0 or array.max() >= n or np.unique(array).size != n):
            raise ValueError("Image is not a bijection")
        array.setflags(write=False)
        self.image = array
        self._hash = None

    @classmethod
    def _trusted(cls, image: np.ndarray) -> "Perm":
        perm = cls.__new__(cls)
        image.setflags(write=False)
        perm.image = image
        perm._hash = None
        return perm

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls._trusted(np.arange(n, dtype=np.int32))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Perm":
        """Build from disjoint 0-based cycles."""
        image = np.arange(n, dtype=np.int32)
        seen = set()
        for cycle in cycles:
            for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
                if a in seen or not 0 <= a < n:
                    raise ValueError(f"Cycles are not disjoint points of 0..{n - 1}: {a}")
                seen.add(a)
                image[a] = b
        return cls(image)

    @property
    def degree(self) -> int:
        return len(self.image)

    def __call__(self, point: int) -> int:
        return int(self.image[point])

    def __mul__(self, other: "Perm") -> "Perm":
        if not isinstance(other, Perm):
            return NotImplemented
        if other.degree != self.degree:
            raise ShapeError(f"Degrees differ: {self.degree} and {other.degree}")
        return Perm._trusted(other.image[self.image])

    def inverse(self) -> "Perm":
        inv = np.empty_like(self.image)
        inv[self.image] = np.arange(self.degree, dtype=np.int32)
        return Perm._trusted(inv)

    def __pow__(self, n: int) -> "Perm":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = Perm.identity(self.degree)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conjugate(self, g: "Perm") -> "Perm":
        """self^g = g^-1 * self * g."""
        return g.inverse() * self * g

    def commutator(self, other: "Perm") -> "Perm":
        return self.inverse() * other.inverse() * self * other

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.image, np.arange(self.degree, dtype=np.int32)))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = np.zeros(self.degree, dtype=bool)
        result = []
        for start in range(self.degree):
            if seen[start] or self.image[start] == start:
                continue
            cycle = [start]
            seen[start] = True
            point = int(self.image[start])
            while point != start:
                cycle.append(point)
                seen[point] = True
                point = int(self.image[point])
            result.append(tuple(cycle))
        return result

    def cycle_type(self) -> Tuple[int, ...]:
        """Cycle lengths including fixed points, in decreasing order."""
        lengths = [len(c) for c in self.cycles()]
        fixed = self.degree - sum(lengths)
        return tuple(sorted(lengths, reverse=True) + [1] * fixed)

    def order(self) -> int:
        return lcm(*[len(c) for c in self.cycles()]) if self.degree else 1

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.image != np.arange(self.degree))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Perm):
            return NotImplemented
        return bool(np.array_equal(self.image, other.image))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.image.tobytes())
        return self._hash

    def __repr__(self) -> str:
        return f"Perm({format_cycles(self) or '()'})"


def format_cycles(perm: Perm) -> str:
    """Disjoint-cycle notation with 1-based points, e.g. (1,2,7,4)(3,21)."""
    return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in perm.cycles())


def parse_cycles(text: str, n: int, source: str = "") -> Perm:
    """Parse 1-based disjoint-cycle notation into a permutation of degree n."""
    stripped = re.sub(r"\s+", "", text)
    consumed = "".join(m.group(0) for m in CYCLE_RE.finditer(stripped))
    if consumed != stripped:
        raise ParseError("Malformed cycle notation", source=source)
    cycles = []
    for match in CYCLE_RE.finditer(stripped):
        body = match.group(1)
        if not body:
            continue
        try:
            cycles.append([int(p) - 1 for p in body.split(",")])
        except ValueError as e:
            raise ParseError(f"Bad point in cycle ({body})", source=source) from e
    try:
        return Perm.from_cycles(n, cycles)
    except ValueError as e:
        raise ParseError(str(e), source=source) from e


def parse_perm(text: str, source: str = "") -> Perm:
    """Parse a permutation file body: ``PERM n`` or ``CYC n`` header then data."""
    lines = [line.split("#", 1)[0].strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    if not lines:
        raise ParseError("Empty permutation file", source=source)
    header = lines[0].split()
    if len(header) != 2 or header[0] not in ("PERM", "CYC") or not header[1].isdigit():
        raise ParseError("Expected 'PERM n' or 'CYC n' header", source=source)
    n = int(header[1])
    body = " ".join(lines[1:])
    if header[0] == "CYC":
        return parse_cycles(body, n, source)
    tokens = body.split()
    if len(tokens) != n:
        raise ParseError(f"Expected {n} images, found {len(tokens)}", source=source)
    try:
        return Perm([int(t) - 1 for t in tokens])
    except ValueError as e:
        raise ParseError(f"Bad permutation images: {e}", source=source) from e


def read_perm(path: Union[str, Path]) -> Perm:
    path = Path(path)
    return parse_perm(path.read_text(), source=str(path))
