"""
Exact cyclotomic numbers.

An element of Q(zeta_N), zeta_N = exp(2 pi i / N), is held as rational
coordinates in the power basis 1, zeta, ..., zeta^(phi(N)-1) after reduction
modulo the N-th cyclotomic polynomial. The power basis spans the algebraic
integers of the field over Z, so character values have integer coordinates.

Expressions (constant definitions and table entries) use integers, `/` by
rationals, `i`, `sqrt(d)` for integers d, `z<N>^k` for zeta_N^k, constant
names and `bar(...)` for complex conjugation:

    (-1 + sqrt(-7))/2        -2*(z8^3 + z8)        1 + 2*sqrt(-3)
"""

import re
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import cyclotomic_poly, factorint, totient
from sympy.ntheory import legendre_symbol

from ..core.errors import FieldMismatchError, ParseError

Rational = Union[int, Fraction]


class CyclotomicField:
    """Q(zeta_n) with the reduction table of zeta^k for 0 <= k < n."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"Conductor must be positive: {n}")
        self.n = n
        self.degree = int(totient(n))
        # monic, lowest coefficient first
        phi = [int(c) for c in reversed(cyclotomic_poly(n, polys=True).all_coeffs())]
        reduction = np.zeros((n, self.degree), dtype=np.int64)
        current = np.zeros(self.degree, dtype=np.int64)
        current[0] = 1
        for k in range(n):
            reduction[k] = current
            top = current[-1]
            shifted = np.concatenate(([0], current[:-1]))
            current = shifted - top * np.array(phi[:-1], dtype=np.int64)
        self.reduction = reduction

    def __repr__(self) -> str:
        return f"Q(zeta_{self.n})"

    def zero(self) -> "Cyclotomic":
        return Cyclotomic(self, (Fraction(0),) * self.degree)

    def rational(self, value: Rational) -> "Cyclotomic":
        coeffs = [Fraction(0)] * self.degree
        coeffs[0] = Fraction(value)
        return Cyclotomic(self, tuple(coeffs))

    def zeta(self, k: int = 1) -> "Cyclotomic":
        return Cyclotomic(self, tuple(Fraction(int(c)) for c in self.reduction[k % self.n]))

    def from_exponents(self, terms: Mapping[int, Rational]) -> "Cyclotomic":
        """Sum of c * zeta^k over the given exponent map."""
        total = [Fraction(0)] * self.degree
        for k, c in terms.items():
            if c:
                for i, r in enumerate(self.reduction[k % self.n]):
                    if r:
                        total[i] += c * int(r)
        return Cyclotomic(self, tuple(total))


@lru_cache(maxsize=None)
def cyclotomic_field(n: int) -> CyclotomicField:
    return CyclotomicField(n)


class Cyclotomic:
    """An immutable element of a cyclotomic field."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CyclotomicField, coeffs: Tuple[Fraction, ...]):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.field.n != self.field.n:
                raise FieldMismatchError(f"Values in {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return NotImplemented

    def __add__(self, other) -> "Cyclotomic":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclotomic(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> "Cyclotomic":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Cyclotomic":
        return (-self) + other

    def __mul__(self, other) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.field, tuple(a * other for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[int, Fraction] = {}
        for a, ca in enumerate(self.coeffs):
            if not ca:
                continue
            for b, cb in enumerate(other.coeffs):
                if cb:
                    terms[a + b] = terms.get(a + b, Fraction(0)) + ca * cb
        return self.field.from_exponents(terms)

    __rmul__ = __mul__

    def __truediv__(self, other: Rational) -> "Cyclotomic":
        if not isinstance(other, (int, Fraction)) or other == 0:
            raise ValueError(f"Cyclotomic values divide only by nonzero rationals: {other!r}")
        return Cyclotomic(self.field, tuple(a / other for a in self.coeffs))

    def __pow__(self, n: int) -> "Cyclotomic":
        if n < 0:
            raise ValueError("Negative powers are not supported")
        result = self.field.rational(1)
        for _ in range(n):
            result = result * self
        return result

    def conj(self) -> "Cyclotomic":
        """Complex conjugate, the Galois map zeta -> zeta^-1."""
        return self.field.from_exponents({-k: c for k, c in enumerate(self.coeffs) if c})

    def embed(self, field: CyclotomicField) -> "Cyclotomic":
        """The same number inside a field whose conductor is a multiple of ours."""
        if field.n % self.field.n:
            raise FieldMismatchError(f"{self.field} does not embed in {field}")
        m = field.n // self.field.n
        return field.from_exponents({k * m: c for k, c in enumerate(self.coeffs) if c})

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def integral_coords(self) -> List[int]:
        if any(c.denominator != 1 for c in self.coeffs):
            raise ValueError(f"{self} is not an algebraic integer in the power basis")
        return [int(c) for c in self.coeffs]

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if other.field.n != self.field.n:
            big = cyclotomic_field(lcm(self.field.n, other.field.n))
            return self.embed(big).coeffs == other.embed(big).coeffs
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field.n, self.coeffs))

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.coeffs[0])
        n = self.field.n
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            unit = "1" if k == 0 else (f"z{n}" if k == 1 else f"z{n}^{k}")
            if k and abs(c) == 1:
                parts.append(("-" if c < 0 else "+") + unit)
            else:
                parts.append(f"{'+' if c > 0 else '-'}{abs(c)}" + ("" if k == 0 else f"*{unit}"))
        return "".join(parts).lstrip("+")

    def __repr__(self) -> str:
        return f"Cyclotomic({self})"


def _sqrt_parts(d: int) -> Tuple[int, List[int], int, bool]:
    """For d = m^2 * D with D squarefree: (m, odd primes of D, power of i, 2 | D)."""
    if d == 0:
        return 0, [], 0, False
    m = 1
    odd: List[int] = []
    two = False
    for p, e in factorint(abs(d)).items():
        m *= p ** (e // 2)
        if e % 2:
            if p == 2:
                two = True
            else:
                odd.append(int(p))
    # prod of Gauss sums is i^k * sqrt(prod p), k = number of primes 3 mod 4
    k = sum(1 for p in odd if p % 4 == 3)
    j = ((1 if d < 0 else 0) - k) % 4
    return m, odd, j, two


def sqrt_conductor(d: int) -> int:
    """Conductor of Q(sqrt(d))."""
    _, odd, j, two = _sqrt_parts(d)
    n = 1
    for p in odd:
        n *= p
    if two:
        return 8 * n
    return 4 * n if j % 2 else n


def gauss_sum(field: CyclotomicField, p: int) -> Cyclotomic:
    """sum over k of (k/p) zeta_p^k, equal to sqrt(p) or i*sqrt(p)."""
    m = field.n // p
    return field.from_exponents({k * m: legendre_symbol(k, p) for k in range(1, p)})


def sqrt_cyclotomic(d: int, field: CyclotomicField) -> Cyclotomic:
    """The square root of d with nonnegative real part, or positive imaginary part."""
    need = sqrt_conductor(d)
    if field.n % need:
        raise FieldMismatchError(f"sqrt({d}) needs conductor {need}, field is {field}")
    m, odd, j, two = _sqrt_parts(d)
    value = field.rational(m)
    for p in odd:
        value = value * gauss_sum(field, p)
    n = field.n
    if two:
        # i^j * sqrt(2) with sqrt(2) = z8 + z8^-1 and i*sqrt(2) = z8 + z8^3
        rest = {0: {1: 1, -1: 1}, 1: {1: 1, 3: 1}, 2: {1: -1, -1: -1}, 3: {1: -1, 3: -1}}[j]
        value = value * field.from_exponents({k * n // 8: c for k, c in rest.items()})
    elif j:
        value = value * field.zeta(j * n // 4)
    return value


_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt|bar)\s*\(|(z)(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


def expression_conductor(text: str) -> int:
    """Least conductor holding every sqrt, i and z<N> in an expression."""
    n = 1
    for d in re.findall(r"sqrt\s*\(\s*(-?\d+)\s*\)", text):
        n = lcm(n, sqrt_conductor(int(d)))
    for order in re.findall(r"\bz(\d+)", text):
        n = lcm(n, int(order))
    if re.search(r"(?<![A-Za-z0-9_])i(?![A-Za-z0-9_])", text):
        n = lcm(n, 4)
    return n


class _ExpressionParser:
    def __init__(self, text: str, field: CyclotomicField, constants: Mapping[str, Cyclotomic], source: str):
        self.text = text
        self.field = field
        self.constants = constants
        self.source = source
        self.tokens: List[Tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            match = _TOKEN.match(text, pos)
            if not match or match.end() == pos:
                break
            if match.group(1):
                self.tokens.append(("int", match.group(1), match.start(1)))
            elif match.group(2):
                self.tokens.append(("func", match.group(2), match.start(2)))
            elif match.group(3):
                self.tokens.append(("zeta", match.group(4), match.start(3)))
            elif match.group(5):
                self.tokens.append(("name", match.group(5), match.start(5)))
            elif match.group(6):
                self.tokens.append(("op", match.group(6), match.start(6)))
            pos = match.end()
        self.i = 0

    def error(self, message: str) -> ParseError:
        position = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        return ParseError(message, position=position, source=self.source)

    def peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take_op(self, symbol: str) -> bool:
        token = self.peek()
        if token and token[0] == "op" and token[1] == symbol:
            self.i += 1
            return True
        return False

    def parse(self) -> Cyclotomic:
        value = self.expr()
        if self.peek() is not None:
            raise self.error(f"Unexpected {self.peek()[1]!r}")
        return value

    def expr(self) -> Cyclotomic:
        value = self.term()
        while True:
            if self.take_op("+"):
                value = value + self.term()
            elif self.take_op("-"):
                value = value - self.term()
            else:
                return value

    def term(self) -> Cyclotomic:
        value = self.unary()
        while True:
            if self.take_op("*"):
                value = value * self.unary()
            elif self.take_op("/"):
                divisor = self.unary()
                if not divisor.is_rational() or divisor.rational() == 0:
                    raise self.error("Division only by nonzero rationals")
                value = value / divisor.rational()
            elif self.peek() and (self.peek()[0] != "op" or self.peek()[1] == "("):
                value = value * self.power()
            else:
                return value

    def unary(self) -> Cyclotomic:
        if self.take_op("-"):
            return -self.unary()
        if self.take_op("+"):
            return self.unary()
        return self.power()

    def power(self) -> Cyclotomic:
        value = self.atom()
        if self.take_op("^"):
            negative = self.take_op("-")
            token = self.peek()
            if not token or token[0] != "int":
                raise self.error("Malformed exponent")
            self.i += 1
            if negative:
                raise self.error("Negative exponents are not supported")
            value = value ** int(token[1])
        return value

    def atom(self) -> Cyclotomic:
        token = self.peek()
        if token is None:
            raise self.error("Unexpected end of expression")
        kind, text, _ = token
        self.i += 1
        if kind == "int":
            return self.field.rational(int(text))
        if kind == "zeta":
            order = int(text)
            if self.field.n % order:
                raise self.error(f"z{order} is not in {self.field}")
            k = 1
            if self.take_op("^"):
                negative = self.take_op("-")
                exp = self.peek()
                if not exp or exp[0] != "int":
                    raise self.error("Malformed exponent")
                self.i += 1
                k = -int(exp[1]) if negative else int(exp[1])
            return self.field.zeta(k * self.field.n // order)
        if kind == "func":
            if text == "sqrt":
                negative = self.take_op("-")
                arg = self.peek()
                if not arg or arg[0] != "int":
                    raise self.error("sqrt takes an integer")
                self.i += 1
                if not self.take_op(")"):
                    raise self.error("Missing ')'")
                d = -int(arg[1]) if negative else int(arg[1])
                try:
                    return sqrt_cyclotomic(d, self.field)
                except FieldMismatchError as e:
                    raise self.error(str(e)) from e
            inner = self.expr()
            if not self.take_op(")"):
                raise self.error("Missing ')'")
            return inner.conj()
        if kind == "name":
            if text == "i":
                if self.field.n % 4:
                    raise self.error(f"i is not in {self.field}")
                return self.field.zeta(self.field.n // 4)
            if text not in self.constants:
                raise self.error(f"Unknown constant {text!r}")
            return self.constants[text].embed(self.field)
        if text == "(":
            inner = self.expr()
            if not self.take_op(")"):
                raise self.error("Missing ')'")
            return inner
        raise self.error(f"Unexpected {text!r}")


def parse_cyclotomic(
    text: str,
    field: Optional[CyclotomicField] = None,
    constants: Optional[Mapping[str, Cyclotomic]] = None,
    source: str = "",
) -> Cyclotomic:
    """Evaluate an expression; without a field the least one holding it is used."""
    if field is None:
        n = expression_conductor(text)
        for value in (constants or {}).values():
            n = lcm(n, value.field.n)
        field = cyclotomic_field(n)
    if not text.strip():
        raise ParseError("Empty expression", source=source)
    return _ExpressionParser(text, field, constants or {}, source).parse()


def common_field(values: Sequence[Cyclotomic]) -> CyclotomicField:
    n = 1
    for v in values:
        n = lcm(n, v.field.n)
    return cyclotomic_field(n)


def coordinate_array(values: Sequence[Sequence[Cyclotomic]], field: CyclotomicField) -> np.ndarray:
    """Integer coordinates, shape (rows, cols, degree), as Python ints in an object array."""
    rows = len(values)
    cols = len(values[0]) if rows else 0
    out = np.zeros((rows, cols, field.degree), dtype=object)
    for r, row in enumerate(values):
        for c, v in enumerate(row):
            out[r, c] = v.embed(field).integral_coords()
    return out


def conjugate_coordinates(field: CyclotomicField, coords: np.ndarray) -> np.ndarray:
    """Complex conjugate of coordinate vectors along the last axis."""
    conj_matrix = field.reduction[(-np.arange(field.degree)) % field.n]
    if coords.dtype == object:
        conj_matrix = conj_matrix.astype(object)
    return coords @ conj_matrix


def contract_products(
    field: CyclotomicField, left: np.ndarray, right: np.ndarray, axis: int, bound: int
) -> np.ndarray:
    """Sum of products over one shared axis, multiplied out in the power basis.

    left and right carry coordinates on their last axis. The result has shape
    (m, n, degree) for the remaining axes m of left and n of right. bound
    caps the summed absolute coordinate products; Python integers take over
    when int64 could overflow. Products are collected as polynomials of
    degree below 2*degree - 1 over the coordinates actually used, then reduced.
    """
    d = field.degree
    largest = max(int(np.abs(field.reduction).max()), 1)
    wide = bound * d * d * largest >= 2**62 or object in (left.dtype, right.dtype)
    dtype = object if wide else np.int64
    left = np.moveaxis(left, axis, 0).astype(dtype)
    right = np.moveaxis(right, axis, 0).astype(dtype)
    left_used = np.flatnonzero(np.any(left != 0, axis=(0, 1)))
    right_used = np.flatnonzero(np.any(right != 0, axis=(0, 1)))
    powers = np.zeros((left.shape[1], right.shape[1], 2 * d - 1), dtype=dtype)
    columns = right[:, :, right_used]
    for a in left_used:
        powers[:, :, a + right_used] += np.tensordot(left[:, :, a], columns, axes=([0], [0]))
    reduction = field.reduction[np.arange(2 * d - 1) % field.n].astype(dtype)
    return np.tensordot(powers, reduction, axes=([2], [0]))
