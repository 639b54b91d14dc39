"""
Row reduction over GF(q)

Array-level kernels shared by Mat, GModule and the Meataxe: reduced row echelon
form, rank, null spaces, inverses and subspace intersection. Arrays hold
residues in [0, q). Over GF(2) rows are packed into 64-bit words and reduced
with XOR.
"""

from typing import List, Tuple

import numpy as np

WORD = 64
# integers below this survive float64 arithmetic exactly
FLOAT_EXACT = 2**53


def pack_rows(bits: np.ndarray) -> np.ndarray:
    """Pack a 0/1 matrix into uint64 words, little bit order within a row."""
    bits = np.asarray(bits, dtype=np.uint8)
    rows, cols = bits.shape
    width = max(1, (cols + WORD - 1) // WORD) * WORD
    padded = np.zeros((rows, width), dtype=np.uint8)
    padded[:, :cols] = bits
    return np.packbits(padded, axis=1, bitorder="little").view(np.uint64)


def unpack_rows(packed: np.ndarray, cols: int) -> np.ndarray:
    """Inverse of pack_rows."""
    as_bytes = np.ascontiguousarray(packed).view(np.uint8)
    return np.unpackbits(as_bytes, axis=1, count=cols, bitorder="little")


def _rref_gf2(a: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    rows, cols = a.shape
    packed = pack_rows(a)
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        word, bit = divmod(c, WORD)
        column = (packed[:, word] >> np.uint64(bit)) & np.uint64(1)
        candidates = np.flatnonzero(column[r:])
        if candidates.size == 0:
            continue
        k = r + int(candidates[0])
        if k != r:
            packed[[r, k]] = packed[[k, r]]
            column[[r, k]] = column[[k, r]]
        mask = column.astype(bool)
        mask[r] = False
        packed[mask] ^= packed[r]
        pivots.append(c)
        r += 1
    return unpack_rows(packed[:r], cols).astype(np.int64), pivots


def rref(a: np.ndarray, q: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form with zero rows dropped.

    Returns the nonzero rows of the echelon form and the pivot column of each.
    """
    a = np.asarray(a, dtype=np.int64) % q
    if a.ndim != 2:
        raise ValueError(f"Expected a matrix, got shape {a.shape}")
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        return np.zeros((0, cols), dtype=np.int64), []
    if q == 2:
        return _rref_gf2(a)

    inv = _inverses(q)
    m = a.copy()
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        candidates = np.flatnonzero(m[r:, c])
        if candidates.size == 0:
            continue
        k = r + int(candidates[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r, c:] = (m[r, c:] * inv[m[r, c]]) % q
        column = m[:, c].copy()
        column[r] = 0
        nonzero = np.flatnonzero(column)
        if nonzero.size:
            m[nonzero, c:] = (m[nonzero, c:] - np.outer(column[nonzero], m[r, c:])) % q
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a: np.ndarray, q: int) -> int:
    return len(rref(a, q)[1])


def nullspace(a: np.ndarray, q: int) -> np.ndarray:
    """Basis (as rows, echelonized) of {x : a x = 0}."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    reduced, pivots = rref(a, q)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, p in enumerate(pivots):
            basis[i, p] = (-reduced[row, f]) % q
    return rref(basis, q)[0] if len(free) else basis


def left_nullspace(a: np.ndarray, q: int) -> np.ndarray:
    """Basis (as rows, echelonized) of {v : v a = 0}."""
    return nullspace(np.asarray(a, dtype=np.int64).T, q)


def inverse(a: np.ndarray, q: int) -> np.ndarray:
    """Inverse of a square matrix; raises ValueError when singular."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"Matrix is not square: {a.shape}")
    augmented = np.hstack([a % q, np.eye(n, dtype=np.int64)])
    reduced, pivots = rref(augmented, q)
    if pivots[:n] != list(range(n)) or len(reduced) < n:
        raise ValueError("Matrix is singular")
    return reduced[:n, n:]


def intersect(u: np.ndarray, w: np.ndarray, q: int) -> np.ndarray:
    """Echelonized basis of the intersection of two row spaces."""
    u = np.asarray(u, dtype=np.int64)
    w = np.asarray(w, dtype=np.int64)
    if len(u) == 0 or len(w) == 0:
        return np.zeros((0, u.shape[1] if u.ndim == 2 else w.shape[1]), dtype=np.int64)
    relations = left_nullspace(np.vstack([u, w]), q)
    if len(relations) == 0:
        return np.zeros((0, u.shape[1]), dtype=np.int64)
    combos = (relations[:, : len(u)] @ u) % q
    return rref(combos, q)[0]


def product_mod(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    """
    a @ b mod q for residue arrays.

    Every partial sum is bounded by (q - 1)^2 times the inner dimension. Below
    2^53 the product goes through float64 BLAS, which is exact there; below
    2^63 through int64; beyond that through Python integers.
    """
    bound = (q - 1) ** 2 * max(a.shape[-1], 1)
    if bound < FLOAT_EXACT:
        product = a.astype(np.float64) @ b.astype(np.float64)
        return product.astype(np.int64) % q
    if bound < 2**63:
        return (a @ b) % q
    return ((a.astype(object) @ b.astype(object)) % q).astype(np.int64)


def reduce_against(v: np.ndarray, basis: np.ndarray, pivots: List[int], q: int) -> np.ndarray:
    """Remainder of rows v modulo the span of an RREF basis."""
    v = np.asarray(v, dtype=np.int64) % q
    if len(pivots) == 0:
        return v
    if v.ndim == 1:
        return (v - product_mod(v[pivots], basis, q)) % q
    return (v - product_mod(v[:, pivots], basis, q)) % q


def extend_rref(
    basis: np.ndarray, pivots: List[int], rows: np.ndarray, q: int
) -> Tuple[np.ndarray, List[int]]:
    """
    Grow a reduced basis by rows already reduced against it.

    The result is reduced but its rows follow insertion order rather than
    pivot order; sort_rref restores the echelon order.
    """
    new, new_pivots = rref(rows, q)
    if not new_pivots:
        return basis, list(pivots)
    if len(basis):
        basis = (basis - product_mod(basis[:, new_pivots], new, q)) % q
    return np.vstack([basis, new]), list(pivots) + new_pivots


def sort_rref(basis: np.ndarray, pivots: List[int]) -> Tuple[np.ndarray, List[int]]:
    order = np.argsort(pivots, kind="stable")
    return basis[order], [pivots[i] for i in order]


def normalize_projective(vectors: np.ndarray, q: int) -> np.ndarray:
    """Scale each nonzero row so that its first nonzero entry is 1."""
    vectors = np.asarray(vectors, dtype=np.int64) % q
    if q == 2 or len(vectors) == 0:
        return vectors
    nonzero = vectors != 0
    lead = np.argmax(nonzero, axis=1)
    lead_values = vectors[np.arange(len(vectors)), lead]
    scale = _inverses(q)[lead_values]
    return (vectors * scale[:, None]) % q


def _inverses(q: int) -> np.ndarray:
    from .field import field

    return field(q).inverse_table()
