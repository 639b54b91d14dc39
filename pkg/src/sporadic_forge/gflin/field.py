"""Prime fields GF(q)."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy import isprime

from ..core.errors import FieldMismatchError


@dataclass(frozen=True)
class FieldSpec:
    """The prime field GF(q)."""

    q: int

    def __post_init__(self) -> None:
        if not isinstance(self.q, int) or not isprime(self.q):
            raise ValueError(f"Invalid field modulus: {self.q}")

    @property
    def dtype(self):
        # residues fit a byte for every prime below 256
        return np.uint8 if self.q < 256 else np.int64

    def inverse(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.q})")
        return pow(a, -1, self.q)

    def inverse_table(self) -> np.ndarray:
        return _inverse_table(self.q)

    def check_same(self, other: "FieldSpec") -> None:
        if self.q != other.q:
            raise FieldMismatchError(f"GF({self.q}) and GF({other.q}) do not match")

    def __str__(self) -> str:
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def _inverse_table(q: int) -> np.ndarray:
    table = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        table[a] = pow(a, -1, q)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def field(q: int) -> FieldSpec:
    """Return the shared FieldSpec for GF(q)."""
    return FieldSpec(q)
