"""
Matrix and module text files.

MAT files hold one matrix: a header line ``MAT q rows cols`` followed by
``rows`` lines of ``cols`` whitespace-separated tokens, each a digit string or
``.`` for zero. MOD files hold a module: ``MOD q dim k`` and then k blocks,
each a ``GEN <name>`` line followed by a MAT body. Lines starting with ``#``
are comments. Printed matrices without separators (``1.1..1``) are accepted
for GF(2) and GF(q) with single-digit entries when a row is one token of
length ``cols``.
"""

from pathlib import Path
from typing import Iterator, List, Tuple, Union

from ..core.errors import ParseError
from .matrix import Mat
from .module import GModule

PathLike = Union[str, Path]


def _content_lines(text: str) -> Iterator[Tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _parse_token(token: str, number: int, source: str) -> int:
    if token == ".":
        return 0
    if not token.isdigit():
        raise ParseError(f"Bad matrix entry {token!r} on line {number}", source=source)
    return int(token)


def _parse_row(line: str, cols: int, number: int, source: str) -> List[int]:
    tokens = line.split()
    if len(tokens) == 1 and cols > 1 and len(tokens[0]) == cols:
        tokens = list(tokens[0])
    if len(tokens) != cols:
        raise ParseError(
            f"Expected {cols} entries on line {number}, found {len(tokens)}", source=source
        )
    return [_parse_token(t, number, source) for t in tokens]


def _parse_header(line: str, keyword: str, count: int, number: int, source: str) -> List[int]:
    parts = line.split()
    if not parts or parts[0] != keyword or len(parts) != count + 1:
        raise ParseError(f"Expected '{keyword}' header on line {number}", source=source)
    try:
        return [int(p) for p in parts[1:]]
    except ValueError as e:
        raise ParseError(f"Non-integer in header on line {number}", source=source) from e


def _read_body(lines, q: int, rows: int, cols: int, source: str) -> Mat:
    body = []
    for _ in range(rows):
        try:
            number, line = next(lines)
        except StopIteration as e:
            raise ParseError(f"Matrix ends after {len(body)} of {rows} rows", source=source) from e
        row = _parse_row(line, cols, number, source)
        if any(v >= q for v in row):
            raise ParseError(f"Entry out of range for GF({q}) on line {number}", source=source)
        body.append(row)
    return Mat(q, body) if rows else Mat.zeros(q, 0, cols)


def parse_mat(text: str, source: str = "") -> Mat:
    lines = _content_lines(text)
    try:
        number, header = next(lines)
    except StopIteration as e:
        raise ParseError("Empty matrix file", source=source) from e
    q, rows, cols = _parse_header(header, "MAT", 3, number, source)
    mat = _read_body(lines, q, rows, cols, source)
    for number, _ in lines:
        raise ParseError(f"Trailing content on line {number}", source=source)
    return mat


def parse_mod(text: str, source: str = "") -> GModule:
    lines = _content_lines(text)
    try:
        number, header = next(lines)
    except StopIteration as e:
        raise ParseError("Empty module file", source=source) from e
    q, dim, count = _parse_header(header, "MOD", 3, number, source)
    gens = {}
    for _ in range(count):
        try:
            number, line = next(lines)
        except StopIteration as e:
            raise ParseError(f"Module lists {count} generators, found {len(gens)}", source=source) from e
        parts = line.split()
        if len(parts) != 2 or parts[0] != "GEN":
            raise ParseError(f"Expected 'GEN <name>' on line {number}", source=source)
        name = parts[1]
        if name in gens:
            raise ParseError(f"Duplicate generator {name} on line {number}", source=source)
        number, mat_header = next(lines, (number, ""))
        mq, rows, cols = _parse_header(mat_header, "MAT", 3, number, source)
        if mq != q or rows != dim or cols != dim:
            raise ParseError(
                f"Generator {name} is MAT {mq} {rows} {cols}, module is GF({q}) dim {dim}",
                source=source,
            )
        gens[name] = _read_body(lines, q, rows, cols, source)
    for number, _ in lines:
        raise ParseError(f"Trailing content on line {number}", source=source)
    return GModule(q, dim, gens, name=Path(source).stem if source else "")


def format_mat(mat: Mat) -> str:
    lines = [f"MAT {mat.q} {mat.rows} {mat.cols}"]
    for row in mat.tolist():
        lines.append(" ".join("." if v == 0 else str(v) for v in row))
    return "\n".join(lines) + "\n"


def format_mod(module: GModule) -> str:
    parts = [f"MOD {module.q} {module.dim} {len(module)}\n"]
    for name, g in module:
        parts.append(f"GEN {name}\n")
        parts.append(format_mat(g))
    return "".join(parts)


def read_mat(path: PathLike) -> Mat:
    path = Path(path)
    return parse_mat(path.read_text(), source=str(path))


def read_mod(path: PathLike) -> GModule:
    path = Path(path)
    return parse_mod(path.read_text(), source=str(path))
