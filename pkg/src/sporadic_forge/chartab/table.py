"""
Character tables and class data.

Table file format:

    CT H_Co2 order=2^18*3^4*5*7 gens=x,y,h
    const A = sqrt(-7)
    class 1a size=1 cent=2^18*3^4*5*7 pow2=1a pow3=1a
    class 2a rep=(xyh)^15 cent=2^18*3^4*5*7 pow2=1a
    chi 1 1 1 ...
    chi 2 7 7 ...

Either `size` or `cent` may be omitted and is then derived from the order.
Character entries are integers, `.` for zero, constant names with an
optional sign and a trailing `*` for the complex conjugate, or any
cyclotomic expression written without spaces. A file with class lines but no
chi rows carries class data only.
"""

import re
import time
from dataclasses import dataclass, field
from math import gcd, lcm
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Union

import numpy as np
import structlog

from ..core.checks import Check, CheckStatus
from ..core.errors import ParseError, TableInconsistencyError
from ..core.numbers import parse_factored
from ..fpres import Alphabet, evaluate
from ..permcore import BSGSGroup, Perm, class_orbit
from ..permcore.classes import DEFAULT_CLASS_CAP, centralizer_order_from_class
from .cyclotomic import (
    Cyclotomic,
    CyclotomicField,
    conjugate_coordinates,
    contract_products,
    cyclotomic_field,
    expression_conductor,
    parse_cyclotomic,
)

logger = structlog.get_logger(__name__)

_CONJUGATE = re.compile(r"^([+-]?)([A-Z][A-Za-z0-9_]*)\*$")
_LEADING_ORDER = re.compile(r"^(\d+)")


@dataclass
class ClassRecord:
    """One conjugacy class: name, representative word, size and power maps."""

    name: str
    size: int
    centralizer: int
    powers: Dict[int, str] = field(default_factory=dict)
    rep: Optional[str] = None

    @property
    def element_order(self) -> int:
        match = _LEADING_ORDER.match(self.name)
        if not match:
            raise ValueError(f"Class name carries no element order: {self.name}")
        return int(match.group(1))


@dataclass
class CharacterTable:
    """Classes and irreducible characters of a finite group."""

    group: str
    order: int
    classes: List[ClassRecord]
    characters: List[List[Cyclotomic]] = field(default_factory=list)
    labels: List[str] = field(default_factory=list)
    constants: Dict[str, Cyclotomic] = field(default_factory=dict)
    generators: List[str] = field(default_factory=list)
    source: str = ""
    number_field: CyclotomicField = field(default_factory=lambda: cyclotomic_field(1))

    @property
    def class_names(self) -> List[str]:
        return [c.name for c in self.classes]

    def class_index(self, name: str) -> int:
        for i, c in enumerate(self.classes):
            if c.name == name:
                return i
        raise KeyError(f"{self.group} has no class {name!r}")

    def character(self, label: str) -> List[Cyclotomic]:
        return self.characters[self.labels.index(label)]

    def degree(self, i: int) -> int:
        return int(self.characters[i][0].rational())

    @property
    def sizes(self) -> List[int]:
        return [c.size for c in self.classes]

    @property
    def exponent(self) -> int:
        value = 1
        for c in self.classes:
            value = lcm(value, c.element_order)
        return value

    def kernel(self, i: int) -> List[int]:
        """Indices of classes on which character i takes its degree."""
        row = self.characters[i]
        return [c for c, v in enumerate(row) if v == row[0]]


def _entry(token: str, table_field: CyclotomicField, constants: Mapping[str, Cyclotomic], source: str) -> Cyclotomic:
    if token == ".":
        return table_field.zero()
    match = _CONJUGATE.match(token)
    if match:
        sign, name = match.groups()
        if name not in constants:
            raise ParseError(f"Unknown constant {name!r}", source=source)
        value = constants[name].embed(table_field).conj()
        return -value if sign == "-" else value
    return parse_cyclotomic(token, table_field, constants, source)


def parse_table(text: str, source: str = "") -> CharacterTable:
    header: Optional[Dict[str, str]] = None
    group = ""
    const_lines: List[tuple] = []
    classes: List[ClassRecord] = []
    chi_lines: List[tuple] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        where = f"{source}:{lineno}"
        if keyword == "CT":
            if header is not None:
                raise ParseError("Duplicate CT header", source=where)
            tokens = rest.split()
            if not tokens or "=" in tokens[0]:
                raise ParseError("CT header needs a group name", source=where)
            group = tokens[0]
            header = dict(t.partition("=")[::2] for t in tokens[1:])
            if "order" not in header:
                raise ParseError("CT header needs order=", source=where)
        elif header is None:
            raise ParseError(f"{keyword} before CT header", source=where)
        elif keyword == "const":
            name, eq, expr = rest.partition("=")
            if not eq or not name.strip():
                raise ParseError(f"Malformed constant {rest!r}", source=where)
            const_lines.append((name.strip(), expr.strip(), where))
        elif keyword == "class":
            classes.append(_parse_class(rest, parse_factored(header["order"], where), where))
        elif keyword == "chi":
            tokens = rest.split()
            if not tokens:
                raise ParseError("chi row needs a label", source=where)
            chi_lines.append((tokens[0], tokens[1:], where))
        else:
            raise ParseError(f"Unknown keyword {keyword!r}", source=where)
    if header is None:
        raise ParseError("Missing CT header", source=source)
    order = parse_factored(header["order"], source)
    conductor = int(header.get("conductor", 0)) or 1
    for _, expr, _ in const_lines:
        conductor = lcm(conductor, expression_conductor(expr))
    for _, tokens, _ in chi_lines:
        for token in tokens:
            if token != "." and not token.lstrip("-").isdigit() and not _CONJUGATE.match(token):
                conductor = lcm(conductor, expression_conductor(token))
    table_field = cyclotomic_field(conductor)
    constants: Dict[str, Cyclotomic] = {}
    for name, expr, where in const_lines:
        if name in constants:
            raise ParseError(f"Constant {name} defined twice", source=where)
        constants[name] = parse_cyclotomic(expr, table_field, constants, where)
    names = [c.name for c in classes]
    if len(set(names)) != len(names):
        raise ParseError("Duplicate class names", source=source)
    characters: List[List[Cyclotomic]] = []
    labels: List[str] = []
    for label, tokens, where in chi_lines:
        if len(tokens) != len(classes):
            raise ParseError(
                f"chi {label} has {len(tokens)} values for {len(classes)} classes", source=where
            )
        characters.append([_entry(t, table_field, constants, where) for t in tokens])
        labels.append(label)
    generators = [g for g in header.get("gens", "").split(",") if g]
    table = CharacterTable(
        group, order, classes, characters, labels, constants, generators, source, table_field
    )
    logger.debug(
        "table parsed", group=group, classes=len(classes), characters=len(characters), conductor=conductor
    )
    return table


def _parse_class(rest: str, order: int, where: str) -> ClassRecord:
    tokens = rest.split()
    if not tokens or "=" in tokens[0]:
        raise ParseError("class line needs a name", source=where)
    fields = dict(t.partition("=")[::2] for t in tokens[1:])
    size = int(fields["size"]) if "size" in fields else None
    cent = parse_factored(fields["cent"], where) if "cent" in fields else None
    if size is None and cent is None:
        raise ParseError(f"class {tokens[0]} needs size= or cent=", source=where)
    if size is None:
        size = order // cent
    if cent is None:
        cent = order // size
    powers = {}
    for key, value in fields.items():
        if key.startswith("pow"):
            try:
                powers[int(key[3:])] = value
            except ValueError:
                raise ParseError(f"Malformed power map key {key!r}", source=where) from None
    return ClassRecord(tokens[0], size, cent, powers, fields.get("rep"))


def read_table(path: Union[str, Path]) -> CharacterTable:
    path = Path(path)
    return parse_table(path.read_text(encoding="utf-8"), source=str(path))


def _coords(table: CharacterTable) -> np.ndarray:
    """Integer coordinates of all values, shape (characters, classes, degree)."""
    d = table.number_field.degree
    out = np.zeros((len(table.characters), len(table.classes), d), dtype=np.int64)
    for i, row in enumerate(table.characters):
        for c, v in enumerate(row):
            try:
                out[i, c] = v.integral_coords()
            except ValueError:
                raise TableInconsistencyError(
                    f"{table.group}: chi {table.labels[i]} at {table.classes[c].name} is not integral"
                ) from None
    return out


def _largest(*arrays: np.ndarray) -> int:
    return max(int(np.abs(a).max(initial=0)) for a in arrays)


def inner_products(table: CharacterTable) -> np.ndarray:
    """|G| <chi_i, chi_j> in power-basis coordinates, shape (k, k, degree)."""
    coords = _coords(table)
    conj = conjugate_coordinates(table.number_field, coords)
    largest = _largest(coords, conj)
    sizes = np.array(table.sizes, dtype=object if table.order * largest >= 2**62 else np.int64)
    weighted = coords * sizes[None, :, None]
    return contract_products(table.number_field, weighted, conj, 1, table.order * max(largest, 1) ** 2)


def column_products(table: CharacterTable) -> np.ndarray:
    """sum over chi of chi(g) conj(chi(h)), shape (classes, classes, degree)."""
    coords = _coords(table)
    conj = conjugate_coordinates(table.number_field, coords)
    bound = len(table.characters) * max(_largest(coords, conj), 1) ** 2
    return contract_products(table.number_field, coords, conj, 0, bound)


def _scaled_identity_failures(values: np.ndarray, diagonal: Sequence[int], names: Sequence[str]) -> List[str]:
    expected = np.zeros(values.shape, dtype=object)
    for i, v in enumerate(diagonal):
        expected[i, i, 0] = v
    bad = np.argwhere(np.any(values.astype(object) != expected, axis=2))
    return [f"({names[i]}, {names[j]})" for i, j in bad]


def verify_character_table(table: CharacterTable, max_listed: int = 20) -> List[Check]:
    """Consistency of a character table: class equation, degrees and both orthogonalities."""
    started = time.perf_counter()
    locus = table.group
    checks: List[Check] = []
    k = len(table.classes)
    order = table.order
    bad_sizes = [c.name for c in table.classes if c.size * c.centralizer != order]
    checks.append(Check.truth("|C| * |C_G(g)| = |G| for every class", not bad_sizes, locus, ", ".join(bad_sizes)))
    checks.append(Check.compare("sum of class sizes", sum(table.sizes), order, locus))
    bad_powers = []
    for c in table.classes:
        for p, target in c.powers.items():
            if target not in table.class_names:
                bad_powers.append(f"{c.name}^{p}->{target}")
                continue
            target_order = table.classes[table.class_index(target)].element_order
            if target_order != c.element_order // gcd(c.element_order, p):
                bad_powers.append(f"{c.name}^{p}->{target}")
    checks.append(Check.truth("power maps reach valid classes", not bad_powers, locus, ", ".join(bad_powers[:max_listed])))
    checks.append(
        Check.truth(
            "conductor divides the exponent",
            table.exponent % table.number_field.n == 0,
            locus,
            f"conductor {table.number_field.n}, exponent {table.exponent}",
        )
    )
    if not table.characters:
        return checks
    checks.append(Check.compare("number of characters", len(table.characters), k, locus))
    if len(table.characters) != k:
        return checks
    trivial = all(v == 1 for v in table.characters[0])
    checks.append(Check.truth("first row is the trivial character", trivial, locus))
    degrees_ok = all(
        row[0].is_rational() and row[0].rational().denominator == 1 and row[0].rational() > 0
        for row in table.characters
    )
    checks.append(Check.truth("degrees are positive integers", degrees_ok, locus))
    if not degrees_ok:
        return checks
    checks.append(Check.compare("sum of squared degrees", sum(table.degree(i) ** 2 for i in range(k)), order, locus))
    orthogonality_started = time.perf_counter()
    rows = inner_products(table)
    failures = _scaled_identity_failures(rows, [order] * k, table.labels)
    checks.append(
        Check.truth("row orthogonality", not failures, locus, ", ".join(failures[:max_listed]))
    )
    columns = column_products(table)
    failures = _scaled_identity_failures(columns, [c.centralizer for c in table.classes], table.class_names)
    checks.append(
        Check.truth("column orthogonality", not failures, locus, ", ".join(failures[:max_listed]))
    )
    checks[-1].seconds = checks[-2].seconds = (time.perf_counter() - orthogonality_started) / 2
    elapsed = time.perf_counter() - started
    logger.info("table verified", group=table.group, failures=sum(c.failed for c in checks), seconds=round(elapsed, 3))
    return checks


def class_representatives(table: CharacterTable, assignment: Mapping[str, Perm]) -> Dict[str, Perm]:
    """Evaluate every class with a representative word."""
    names = table.generators or list(assignment)
    alphabet = Alphabet(names)
    index = {i: assignment[n] for i, n in enumerate(names)}
    return {
        c.name: evaluate(alphabet.parse(c.rep, f"{table.source}:{c.name}"), index)
        for c in table.classes
        if c.rep
    }


def verify_class_data(
    table: CharacterTable,
    group: BSGSGroup,
    assignment: Mapping[str, Perm],
    class_cap: int = DEFAULT_CLASS_CAP,
    fingerprint_points: int = 8,
) -> List[Check]:
    """Evaluate class representatives in a live group and compare orders and sizes."""
    locus = table.group
    reps = class_representatives(table, assignment)
    checks = [
        Check.compare(f"|{table.group}|", group.order(), table.order, locus),
        Check.compare("class equation", sum(table.sizes), group.order(), locus),
    ]
    for record in table.classes:
        if record.name not in reps:
            continue
        element = reps[record.name]
        checks.append(
            Check.compare(f"order of {record.name} = {record.rep}", element.order(), record.element_order, locus)
        )
        claim = f"|{record.name}|"
        if record.size > class_cap:
            checks.append(Check.skipped(claim, f"class size above cap {class_cap}", locus, record.size))
            continue
        started = time.perf_counter()
        result = class_orbit(group, element, class_cap, fingerprint_points)
        check = Check.compare(claim, result.size, record.size, locus)
        check.details["centralizer"] = centralizer_order_from_class(group, result)
        check.seconds = time.perf_counter() - started
        if result.overflow:
            check.status = CheckStatus.SKIPPED
            check.note = "class orbit overflow"
        checks.append(check)
    return checks
