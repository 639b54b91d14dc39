"""
Exact matrices over prime fields.

Mat values are immutable. Over GF(2) rows are held bit-packed in 64-bit words
and products are formed by XOR-accumulating packed rows; over other primes
entries are residues stored one per byte and products go through exact integer
matrix multiplication followed by reduction.
"""

from typing import Iterable, Optional, Sequence, Union

import numpy as np

from ..core.errors import FieldMismatchError, ShapeError, SingularMatrixError
from . import linalg
from .field import FieldSpec, field

FieldLike = Union[int, FieldSpec]


def _as_field(q: FieldLike) -> FieldSpec:
    return q if isinstance(q, FieldSpec) else field(q)


class Mat:
    """An immutable rows x cols matrix over GF(q)."""

    __slots__ = ("field", "rows", "cols", "_data", "_unpacked", "_hash")

    def __init__(self, q: FieldLike, entries):
        self.field = _as_field(q)
        array = np.asarray(entries, dtype=np.int64)
        if array.ndim == 1 and array.size == 0:
            array = array.reshape(0, 0)
        if array.ndim != 2:
            raise ShapeError(f"Matrix entries must be two-dimensional: {array.shape}")
        array = array % self.field.q
        self.rows, self.cols = array.shape
        self._hash: Optional[int] = None
        if self.field.q == 2:
            self._data = linalg.pack_rows(array)
            self._unpacked = None
        else:
            self._data = array.astype(self.field.dtype)
            self._data.setflags(write=False)
            self._unpacked = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, q: FieldLike, n: int) -> "Mat":
        return cls(q, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, q: FieldLike, rows: int, cols: int) -> "Mat":
        return cls(q, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def from_rows(cls, q: FieldLike, rows: Iterable[Sequence[int]]) -> "Mat":
        return cls(q, [list(r) for r in rows])

    @classmethod
    def from_permutation(cls, q: FieldLike, images: Sequence[int]) -> "Mat":
        """Permutation matrix sending basis vector i to basis vector images[i]."""
        n = len(images)
        array = np.zeros((n, n), dtype=np.int64)
        array[np.arange(n), np.asarray(images, dtype=np.int64)] = 1
        return cls(q, array)

    @classmethod
    def _from_packed(cls, packed: np.ndarray, rows: int, cols: int) -> "Mat":
        mat = cls.__new__(cls)
        mat.field = field(2)
        mat.rows, mat.cols = rows, cols
        mat._data = packed
        mat._unpacked = None
        mat._hash = None
        return mat

    # -- views ---------------------------------------------------------------

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def entries(self) -> np.ndarray:
        """Read-only int64 array of residues."""
        if self._unpacked is None:
            if self.q == 2:
                unpacked = linalg.unpack_rows(self._data, self.cols).astype(np.int64)
            else:
                unpacked = self._data.astype(np.int64)
            unpacked.setflags(write=False)
            self._unpacked = unpacked
        return self._unpacked

    def tolist(self):
        return self.entries.tolist()

    def row(self, i: int) -> np.ndarray:
        return self.entries[i]

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Mat":
        """Submatrix of rows r0..r1-1 and columns c0..c1-1."""
        if not (0 <= r0 <= r1 <= self.rows and 0 <= c0 <= c1 <= self.cols):
            raise ShapeError(
                f"Block [{r0}:{r1}, {c0}:{c1}] outside a {self.rows}x{self.cols} matrix"
            )
        return Mat(self.field, self.entries[r0:r1, c0:c1])

    # -- arithmetic ----------------------------------------------------------

    def _check_field(self, other: "Mat") -> None:
        if self.q != other.q:
            raise FieldMismatchError(f"GF({self.q}) and GF({other.q}) do not match")

    def __mul__(self, other: "Mat") -> "Mat":
        if not isinstance(other, Mat):
            return NotImplemented
        self._check_field(other)
        if self.cols != other.rows:
            raise ShapeError(
                f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        if self.q == 2:
            return Mat._from_packed(
                _gf2_product(self.entries, other._data), self.rows, other.cols
            )
        return Mat(self.field, linalg.product_mod(self.entries, other.entries, self.q))

    def __add__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"Cannot add {self.shape} and {other.shape}")
        return Mat(self.field, self.entries + other.entries)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"Cannot subtract {other.shape} from {self.shape}")
        return Mat(self.field, self.entries - other.entries)

    def scale(self, c: int) -> "Mat":
        scalar = np.eye(self.cols, dtype=np.int64) * (c % self.q)
        return Mat(self.field, linalg.product_mod(self.entries, scalar, self.q))

    def transpose(self) -> "Mat":
        return Mat(self.field, self.entries.T)

    @property
    def T(self) -> "Mat":
        return self.transpose()

    def inverse(self) -> "Mat":
        if self.rows != self.cols:
            raise ShapeError(f"Only square matrices are invertible: {self.shape}")
        try:
            return Mat(self.field, linalg.inverse(self.entries, self.q))
        except ValueError as e:
            raise SingularMatrixError(str(e)) from e

    def dual(self) -> "Mat":
        """The contragredient (g^-1)^T."""
        return self.inverse().transpose()

    def __pow__(self, n: int) -> "Mat":
        if self.rows != self.cols:
            raise ShapeError(f"Only square matrices have powers: {self.shape}")
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = Mat.identity(self.field, self.rows)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def rank(self) -> int:
        return linalg.rank(self.entries, self.q)

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def is_identity(self) -> bool:
        return self.rows == self.cols and bool(
            np.array_equal(self.entries, np.eye(self.rows, dtype=np.int64))
        )

    def is_zero(self) -> bool:
        return not self.entries.any()

    def order(self, limit: int = 1_000_000) -> int:
        """Multiplicative order of an invertible square matrix."""
        if not self.is_invertible():
            raise SingularMatrixError("Singular matrices have no order")
        power = self
        for k in range(1, limit + 1):
            if power.is_identity():
                return k
            power = power * self
        raise ValueError(f"Matrix order exceeds {limit}")

    def trace(self) -> int:
        return int(np.trace(self.entries) % self.q)

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return (
            self.q == other.q
            and self.shape == other.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.q, self.shape, self.key()))
        return self._hash

    def key(self) -> bytes:
        """Compact byte string identifying the matrix entries."""
        return np.ascontiguousarray(self._data).tobytes()

    def __repr__(self) -> str:
        return f"Mat(GF({self.q}), {self.rows}x{self.cols})"


def _gf2_product(a_bits: np.ndarray, b_packed: np.ndarray) -> np.ndarray:
    """Packed rows of a*b over GF(2); a is unpacked, b is packed."""
    rows, inner = a_bits.shape
    acc = np.zeros((rows, b_packed.shape[1]), dtype=np.uint64)
    for j in range(inner):
        selected = a_bits[:, j].astype(bool)
        if selected.any():
            acc[selected] ^= b_packed[j]
    return acc


def mat_mul(a: Mat, b: Mat) -> Mat:
    """Exact product a*b."""
    return a * b


def mat_inv(a: Mat) -> Mat:
    """Inverse of a; raises SingularMatrixError when singular."""
    return a.inverse()


def dual_gen(g: Mat) -> Mat:
    """(g^-1)^T, the generator of the dual module."""
    return g.dual()


def block_diagonal(*blocks: Mat) -> Mat:
    """Assemble square or rectangular blocks along the diagonal."""
    if not blocks:
        raise ShapeError("block_diagonal needs at least one block")
    q = blocks[0].q
    for b in blocks[1:]:
        if b.q != q:
            raise FieldMismatchError(f"GF({q}) and GF({b.q}) do not match")
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    array = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for b in blocks:
        array[r : r + b.rows, c : c + b.cols] = b.entries
        r += b.rows
        c += b.cols
    return Mat(q, array)


def vectors_times(vectors: np.ndarray, g: Mat) -> np.ndarray:
    """Row vectors (one per row) multiplied by g, reduced mod q."""
    return linalg.product_mod(np.asarray(vectors, dtype=np.int64) % g.q, g.entries, g.q)

