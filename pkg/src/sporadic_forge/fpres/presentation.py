"""
Finitely presented groups and their text format.

    FP <name>
    gen a b c
    rel a^2 = b^3 = (a b)^5 = 1
    rel [a, b]^2
    sub H b  (a b)^2
    # comment

A relation chain w1 = w2 = ... = wk contributes the relators w_i * w_k^-1.
Subgroup words on a `sub` line are separated by top-level whitespace or
commas, so each word must be written without spaces outside brackets.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import structlog

from ..core.errors import ParseError
from .words import Alphabet, Word, evaluate, format_word

logger = structlog.get_logger(__name__)


@dataclass
class Presentation:
    """Generator names, relators and named subgroup generator lists."""

    generators: List[str]
    relators: List[Word] = field(default_factory=list)
    subgroups: Dict[str, List[Word]] = field(default_factory=dict)
    name: str = ""
    notes: List[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.alphabet = Alphabet(self.generators)
        for word in self.relators + [w for ws in self.subgroups.values() for w in ws]:
            if word.max_generator() >= len(self.generators):
                raise ValueError(f"Word references an undeclared generator: {word.letters}")

    def word(self, text: str) -> Word:
        return self.alphabet.parse(text, source=self.name)

    def format(self, word: Word) -> str:
        return format_word(word, self.generators)

    def subgroup(self, name: str) -> List[Word]:
        try:
            return self.subgroups[name]
        except KeyError:
            raise KeyError(f"Presentation {self.name!r} has no subgroup {name!r}") from None

    def assignment(self, elements: Mapping[str, object]) -> Dict[int, object]:
        """Translate a name-keyed assignment into generator indices."""
        unknown = set(elements) - set(self.generators)
        if unknown:
            raise KeyError(f"Unknown generators in assignment: {sorted(unknown)}")
        return {self.alphabet.index[name]: g for name, g in elements.items()}


@dataclass
class RelatorCheck:
    """Outcome of evaluating every relator; first_failure is the offending index."""

    holds: bool
    checked: int
    first_failure: Optional[int] = None
    failure_text: str = ""

    def __bool__(self) -> bool:
        return self.holds


def relators_hold(
    presentation: Presentation,
    assignment: Mapping[Union[str, int], object],
    relators: Optional[Sequence[Word]] = None,
) -> RelatorCheck:
    """Evaluate each relator under the assignment and stop at the first failure."""
    if assignment and isinstance(next(iter(assignment)), str):
        assignment = presentation.assignment(assignment)  # type: ignore[arg-type]
    relators = presentation.relators if relators is None else list(relators)
    for i, relator in enumerate(relators):
        value = evaluate(relator, assignment)  # type: ignore[arg-type]
        if not value.is_identity():
            text = presentation.format(relator)
            logger.info("relator fails", presentation=presentation.name, index=i, relator=text)
            return RelatorCheck(False, i + 1, i, text)
    return RelatorCheck(True, len(relators))


def split_top_level(text: str) -> List[str]:
    """Split on whitespace and commas that are not inside brackets."""
    parts: List[str] = []
    depth = 0
    current = ""
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if depth == 0 and (ch.isspace() or ch == ","):
            if current:
                parts.append(current)
            current = ""
            continue
        current += ch
    if current:
        parts.append(current)
    return parts


def split_chain(text: str) -> List[str]:
    parts = [p.strip() for p in text.split("=")]
    if any(not p for p in parts):
        raise ParseError(f"Empty side in relation {text!r}")
    return parts


def chain_relators(alphabet: Alphabet, text: str, source: str = "") -> List[Word]:
    """Relators from one relation chain, dropping those that reduce to the identity."""
    words = [alphabet.parse(part, source) for part in split_chain(text)]
    if len(words) == 1:
        return [] if words[0].is_identity() else words
    last_inverse = words[-1].inverse()
    relators = [w * last_inverse for w in words[:-1]]
    return [r for r in relators if not r.is_identity()]


def normalize_generator_list(names: Sequence[str]) -> Tuple[List[str], List[str]]:
    """Repair a numbered run with a repeated entry, such as v_6 v_8 v_8 v_9.

    Every stem whose numbered names repeat is renumbered 1..m in place, m
    being the number of names carrying that stem.
    """
    notes: List[str] = []
    if len(set(names)) == len(names):
        return list(names), notes
    repaired = list(names)
    repeated = {n for n in names if names.count(n) > 1}
    for stem in sorted({n.rstrip("0123456789") for n in repeated}):
        positions = [
            i for i, n in enumerate(names)
            if n.rstrip("0123456789") == stem and n[len(stem):].isdigit()
        ]
        numbers = [int(names[i][len(stem):]) for i in positions]
        expected = list(range(1, len(positions) + 1))
        if not positions or sorted(numbers) == expected:
            continue
        for k, i in enumerate(positions, 1):
            repaired[i] = f"{stem}{k}"
        missing = sorted(set(expected) - set(numbers))
        notes.append(f"generator list {' '.join(names)} normalized, restored {stem}{missing}")
    if len(set(repaired)) != len(repaired):
        raise ParseError(f"Duplicate generator names: {' '.join(names)}")
    return repaired, notes


def parse_presentation(text: str, source: str = "") -> Presentation:
    name = Path(source).stem if source else ""
    generators: Optional[List[str]] = None
    notes: List[str] = []
    relation_lines: List[Tuple[int, str]] = []
    sub_lines: List[Tuple[int, str, List[str]]] = []
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "FP":
            seen_header = True
            name = rest or name
        elif keyword == "gen":
            if generators is not None:
                raise ParseError("Duplicate gen line", position=lineno, source=source)
            generators, notes = normalize_generator_list(rest.split())
        elif keyword == "rel":
            relation_lines.append((lineno, rest))
        elif keyword == "sub":
            parts = split_top_level(rest)
            if not parts:
                raise ParseError("Subgroup line needs a name", position=lineno, source=source)
            sub_lines.append((lineno, parts[0], parts[1:]))
        else:
            raise ParseError(f"Unknown keyword {keyword!r}", position=lineno, source=source)
    if not seen_header:
        raise ParseError("Missing FP header", source=source)
    if generators is None:
        raise ParseError("Missing gen line", source=source)
    alphabet = Alphabet(generators)
    relators: List[Word] = []
    for lineno, rest in relation_lines:
        relators.extend(chain_relators(alphabet, rest, f"{source}:{lineno}"))
    subgroups: Dict[str, List[Word]] = {}
    for lineno, sub_name, words in sub_lines:
        if sub_name in subgroups:
            raise ParseError(f"Duplicate subgroup {sub_name!r}", position=lineno, source=source)
        subgroups[sub_name] = [alphabet.parse(w, f"{source}:{lineno}") for w in words]
    for note in notes:
        logger.info("presentation normalized", presentation=name, note=note)
    return Presentation(generators, relators, subgroups, name=name, notes=notes)


def format_presentation(presentation: Presentation) -> str:
    lines = [f"FP {presentation.name}".rstrip(), "gen " + " ".join(presentation.generators)]
    lines += ["rel " + presentation.format(r) for r in presentation.relators]
    for sub_name, words in presentation.subgroups.items():
        rendered = [presentation.format(w).replace(" ", "*") for w in words]
        lines.append(" ".join(["sub", sub_name] + rendered))
    return "\n".join(lines) + "\n"


def read_presentation(path: Union[str, Path]) -> Presentation:
    path = Path(path)
    return parse_presentation(path.read_text(encoding="utf-8"), source=str(path))
