"""
Todd-Coxeter coset enumeration.

The coset table is one flat int array: entry c * ncol + a is the image of
coset c under letter a (letters double as column indices, see words.py), and
-1 marks an undefined entry. Coincidences are processed with a union-find
forwarding array, always keeping the smaller coset.

Two strategies are available. HLT scans each live coset under every relator,
defining cosets as needed to complete the scan; when the table is full it
switches to lookahead (scanning without definitions) and compacts the table.
Felsch defines the first undefined entry and then closes all deductions
before defining again, which keeps the table smaller at some cost in speed.
Either way a closed table is checked by tracing every relator from every
coset before it is reported as complete.
"""

from array import array
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np
import structlog

from ..core.errors import ShapeError
from ..permcore.perm import Perm
from .presentation import Presentation
from .words import Word

logger = structlog.get_logger(__name__)

DEFAULT_MAX_COSETS = 4_000_000


class _TableFull(Exception):
    pass


@dataclass
class CosetTable:
    """Result of an enumeration.

    When complete, table[c, a] is the coset reached from c by letter a, the
    cosets are numbered in standard order (first appearance in a
    breadth-first scan) and coset 0 is the subgroup itself. An overflow
    result has no table and records how far the enumeration got.
    """

    generators: List[str]
    table: Optional[np.ndarray]
    complete: bool
    overflow: bool = False
    total_defined: int = 0
    max_live: int = 0
    strategy: str = "hlt"

    @property
    def index(self) -> Optional[int]:
        return None if self.table is None else int(self.table.shape[0])

    def column(self, letter: int) -> np.ndarray:
        if self.table is None:
            raise ShapeError("Coset table is not available")
        return self.table[:, letter]


@dataclass
class _Stats:
    total_defined: int = 1
    max_live: int = 1
    lookaheads: int = 0


class _Enumerator:
    def __init__(self, ngens: int, relators: Sequence[Word], max_cosets: int):
        if max_cosets < 1:
            raise ValueError(f"max_cosets must be positive: {max_cosets}")
        self.ncol = 2 * ngens
        self.max_cosets = max_cosets
        self.relators = [list(r.letters) for r in relators if len(r)]
        self.table = array("i", [-1] * self.ncol)
        self.parent = array("i", [0])
        self.live = 1
        self.stats = _Stats()
        self.deductions: Optional[List[tuple]] = None
        # relator rotations starting with each letter, used by Felsch deduction scans
        self.rotations: Dict[int, List[List[int]]] = {a: [] for a in range(self.ncol)}
        for r in self.relators:
            for rotated in _cyclic_conjugates(r):
                if rotated not in self.rotations[rotated[0]]:
                    self.rotations[rotated[0]].append(rotated)

    # core operations

    def size(self) -> int:
        return len(self.parent)

    def define(self, c: int, a: int) -> int:
        if len(self.parent) >= self.max_cosets:
            raise _TableFull()
        d = len(self.parent)
        self.parent.append(d)
        self.table.extend([-1] * self.ncol)
        ncol = self.ncol
        self.table[c * ncol + a] = d
        self.table[d * ncol + (a ^ 1)] = c
        self.live += 1
        self.stats.total_defined += 1
        if self.live > self.stats.max_live:
            self.stats.max_live = self.live
        if self.deductions is not None:
            self.deductions.append((c, a))
        return d

    def rep(self, c: int) -> int:
        parent = self.parent
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def merge(self, k: int, l: int, queue: List[int]) -> None:
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        if k > l:
            k, l = l, k
        self.parent[l] = k
        self.live -= 1
        queue.append(l)

    def coincidence(self, a: int, b: int) -> None:
        table, ncol = self.table, self.ncol
        queue: List[int] = []
        self.merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(ncol):
                f = table[e * ncol + x]
                if f < 0:
                    continue
                xi = x ^ 1
                table[f * ncol + xi] = -1
                e1, f1 = self.rep(e), self.rep(f)
                g = table[e1 * ncol + x]
                if g >= 0:
                    self.merge(f1, g, queue)
                else:
                    h = table[f1 * ncol + xi]
                    if h >= 0:
                        self.merge(e1, h, queue)
                    else:
                        table[e1 * ncol + x] = f1
                        table[f1 * ncol + xi] = e1
                        if self.deductions is not None:
                            self.deductions.append((e1, x))

    def scan(self, c: int, word: List[int], fill: bool) -> None:
        """Trace word from c in both directions; deduce, coincide or define."""
        table, ncol = self.table, self.ncol
        f = c
        b = c
        i = 0
        j = len(word) - 1
        while True:
            while i <= j:
                nxt = table[f * ncol + word[i]]
                if nxt < 0:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != c:
                    self.coincidence(f, c)
                return
            while j >= i:
                nxt = table[b * ncol + (word[j] ^ 1)]
                if nxt < 0:
                    break
                b = nxt
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f * ncol + word[i]] = b
                table[b * ncol + (word[i] ^ 1)] = f
                if self.deductions is not None:
                    self.deductions.append((f, word[i]))
                return
            if not fill:
                return
            self.define(f, word[i])

    # table maintenance

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def lookahead(self) -> None:
        self.stats.lookaheads += 1
        for c in range(self.size()):
            for r in self.relators:
                if not self.alive(c):
                    break
                self.scan(c, r, fill=False)

    def compress(self, cursor: int = 0) -> int:
        """Renumber live cosets consecutively; returns the new position of cursor."""
        ncol = self.ncol
        live = [c for c in range(self.size()) if self.alive(c)]
        new_index = {c: i for i, c in enumerate(live)}
        old = self.table
        table = array("i")
        for c in live:
            row = old[c * ncol:(c + 1) * ncol]
            table.extend(new_index[self.rep(x)] if x >= 0 else -1 for x in row)
        self.table = table
        self.parent = array("i", range(len(live)))
        self.live = len(live)
        return sum(1 for c in live if c < cursor)

    def standardize(self) -> np.ndarray:
        """Compact table in breadth-first order of first appearance from coset 0."""
        self.compress()
        n, ncol = self.size(), self.ncol
        flat = np.asarray(self.table, dtype=np.int64).reshape(n, ncol)
        order = [0]
        position = {0: 0}
        for c in order:
            for x in range(ncol):
                d = int(flat[c, x])
                if d >= 0 and d not in position:
                    position[d] = len(order)
                    order.append(d)
        if len(order) != n:
            raise ShapeError("Coset table is not connected")
        relabel = np.empty(n, dtype=np.int64)
        relabel[np.asarray(order)] = np.arange(n)
        return relabel[flat[np.asarray(order)]].astype(np.int32)

    def first_gap(self, start: int):
        table, ncol = self.table, self.ncol
        for c in range(start, self.size()):
            if not self.alive(c):
                continue
            base = c * ncol
            for x in range(ncol):
                if table[base + x] < 0:
                    return c, x
        return None

    # strategies

    def enumerate_hlt(self, subgroup: Sequence[List[int]]) -> bool:
        pending = list(subgroup)
        while pending:
            try:
                for w in pending:
                    self.scan(0, w, fill=True)
                pending = []
            except _TableFull:
                if self._relieve(0) is None:
                    return False
        c = 0
        while c < self.size():
            if self.alive(c):
                try:
                    for r in self.relators:
                        self.scan(c, r, fill=True)
                        if not self.alive(c):
                            break
                    if self.alive(c):
                        base = c * self.ncol
                        for x in range(self.ncol):
                            if self.table[base + x] < 0:
                                self.define(c, x)
                except _TableFull:
                    cursor = self._relieve(c)
                    if cursor is None:
                        return False
                    c = cursor
                    continue
            c += 1
        return True

    def _relieve(self, cursor: int) -> Optional[int]:
        """Lookahead and compaction; None when no room was recovered."""
        before = self.size()
        self.lookahead()
        cursor = self.compress(cursor)
        logger.debug("lookahead", before=before, after=self.size())
        return cursor if self.size() < self.max_cosets else None

    def enumerate_felsch(self, subgroup: Sequence[List[int]]) -> bool:
        self.deductions = []
        try:
            for w in subgroup:
                self.scan(0, w, fill=True)
            while True:
                self.process_deductions()
                gap = self.first_gap(0)
                while gap is not None:
                    live = self.live
                    self.define(*gap)
                    self.process_deductions()
                    # coincidences can reopen entries of earlier cosets
                    gap = self.first_gap(gap[0] if self.live > live else 0)
                live = self.live
                self.lookahead()
                if self.live == live and self.first_gap(0) is None:
                    return True
        except _TableFull:
            return False
        finally:
            self.deductions = None

    def process_deductions(self) -> None:
        stack = self.deductions
        ncol = self.ncol
        while stack:
            c, a = stack.pop()
            if not self.alive(c):
                c = self.rep(c)
            for rotated in self.rotations[a]:
                if not self.alive(c):
                    break
                self.scan(c, rotated, fill=False)
            d = self.table[c * ncol + a]
            if d < 0:
                continue
            d = self.rep(d)
            for rotated in self.rotations[a ^ 1]:
                if not self.alive(d):
                    break
                self.scan(d, rotated, fill=False)


def _cyclic_conjugates(relator: List[int]) -> List[List[int]]:
    rotations = []
    for word in (relator, [a ^ 1 for a in reversed(relator)]):
        for k in range(len(word)):
            rotations.append(word[k:] + word[:k])
    return rotations


def verify_table(table: np.ndarray, relators: Sequence[Word], subgroup: Sequence[Word]) -> bool:
    """Closed-table check: relators fix every coset, subgroup words fix coset 0."""
    if (table < 0).any():
        return False
    n = table.shape[0]
    start = np.arange(n)
    for r in relators:
        current = start
        for a in r.letters:
            current = table[current, a]
        if not np.array_equal(current, start):
            return False
    for w in subgroup:
        c = 0
        for a in w.letters:
            c = int(table[c, a])
        if c != 0:
            return False
    for a in range(0, table.shape[1], 2):
        forward, backward = table[:, a], table[:, a + 1]
        if not np.array_equal(backward[forward], start):
            return False
    return True


def todd_coxeter(
    presentation: Presentation,
    subgroup: Sequence[Word] = (),
    max_cosets: int = DEFAULT_MAX_COSETS,
    felsch: bool = False,
) -> CosetTable:
    """Enumerate the cosets of the subgroup generated by the given words."""
    for w in subgroup:
        if w.max_generator() >= len(presentation.generators):
            raise ValueError("Subgroup word references an undeclared generator")
    enumerator = _Enumerator(len(presentation.generators), presentation.relators, max_cosets)
    words = [list(w.letters) for w in subgroup if len(w)]
    strategy = "felsch" if felsch else "hlt"
    closed = enumerator.enumerate_felsch(words) if felsch else enumerator.enumerate_hlt(words)
    stats = enumerator.stats
    if not closed:
        logger.info(
            "coset enumeration overflow",
            presentation=presentation.name,
            max_cosets=max_cosets,
            total_defined=stats.total_defined,
        )
        return CosetTable(
            list(presentation.generators),
            None,
            complete=False,
            overflow=True,
            total_defined=stats.total_defined,
            max_live=stats.max_live,
            strategy=strategy,
        )
    table = enumerator.standardize()
    if not verify_table(table, presentation.relators, subgroup):
        raise ShapeError("Closed coset table fails the relator scan")
    logger.info(
        "coset enumeration closed",
        presentation=presentation.name,
        index=table.shape[0],
        strategy=strategy,
        total_defined=stats.total_defined,
        max_live=stats.max_live,
    )
    return CosetTable(
        list(presentation.generators),
        table,
        complete=True,
        total_defined=stats.total_defined,
        max_live=stats.max_live,
        strategy=strategy,
    )


def coset_action(table: CosetTable) -> Dict[str, Perm]:
    """Permutation of the cosets induced by each generator (right action)."""
    if not table.complete or table.table is None:
        raise ShapeError("Coset action needs a complete table")
    return {name: Perm(table.table[:, 2 * i]) for i, name in enumerate(table.generators)}


def index(
    presentation: Presentation,
    subgroup: Sequence[Word] = (),
    max_cosets: int = DEFAULT_MAX_COSETS,
    felsch: bool = False,
) -> Optional[int]:
    return todd_coxeter(presentation, subgroup, max_cosets, felsch).index
