"""
Word-defined elements and subgroups of a permutation group.

Named elements come from a WORDS file, evaluated top to bottom so each
definition may use the ambient generators and every earlier name:

    WORDS D_Co2 ambient=E3
    def n_1 = (p^2qp^2q^2v_1)^6
    def q_5 = n_5

Subgroups come from SUB blocks whose member words use those names:

    SUB Q ambient=D order=512 flags=extraspecial,normal,center=z
    mem q_1
    mem q_2
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import structlog

from ..core.checks import Check
from ..core.errors import NotInGroupError, ParseError
from ..core.numbers import factorization, parse_factored
from ..fpres import Alphabet, Presentation, evaluate, relators_hold
from ..fpres.presentation import split_top_level
from ..permcore import BSGSGroup, Perm, center_small, derived_subgroup, enumerate_small, schreier_sims
from ..permcore.classes import DEFAULT_ENUM_CAP, exponent_divides, is_abelian, is_central

logger = structlog.get_logger(__name__)

PLAIN_FLAGS = {"abelian", "elementary-abelian", "extraspecial", "normal"}
KEYED_FLAGS = {"center", "complement", "tag"}


@dataclass
class WordBook:
    """Named words over an ambient group's generators."""

    name: str
    ambient: str
    definitions: List[Tuple[str, str]] = field(default_factory=list)
    source: str = ""

    @property
    def names(self) -> List[str]:
        return [n for n, _ in self.definitions]


def parse_word_book(text: str, source: str = "") -> WordBook:
    book: Optional[WordBook] = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        if keyword == "WORDS":
            if book is not None:
                raise ParseError("Duplicate WORDS header", position=lineno, source=source)
            tokens = rest.split()
            fields = dict(t.partition("=")[::2] for t in tokens if "=" in t)
            if not tokens or "=" in tokens[0] or "ambient" not in fields:
                raise ParseError("WORDS header needs a name and ambient=", position=lineno, source=source)
            book = WordBook(tokens[0], fields["ambient"], source=source)
        elif keyword == "def":
            if book is None:
                raise ParseError("def before WORDS header", position=lineno, source=source)
            name, eq, word = rest.partition("=")
            name = name.strip()
            if not eq or not name or not word.strip():
                raise ParseError(f"Malformed definition {rest!r}", position=lineno, source=source)
            if name in book.names:
                raise ParseError(f"{name} defined twice", position=lineno, source=source)
            book.definitions.append((name, word.strip()))
        else:
            raise ParseError(f"Unknown keyword {keyword!r}", position=lineno, source=source)
    if book is None:
        raise ParseError("Missing WORDS header", source=source)
    return book


def read_word_book(path: Union[str, Path]) -> WordBook:
    path = Path(path)
    return parse_word_book(path.read_text(encoding="utf-8"), source=str(path))


def evaluate_word_book(book: WordBook, assignment: Mapping[str, object]) -> Dict[str, object]:
    """Ambient generators plus every named element, in definition order."""
    elements: Dict[str, object] = dict(assignment)
    for name, text in book.definitions:
        if name in elements:
            raise ParseError(f"{name} shadows an existing element", source=book.source)
        names = list(elements)
        word = Alphabet(names).parse(text, source=f"{book.source}:{name}")
        elements[name] = evaluate(word, {i: elements[n] for i, n in enumerate(names)})
    logger.debug("word book evaluated", book=book.name, definitions=len(book.definitions))
    return elements


def evaluate_words(texts: Sequence[str], elements: Mapping[str, object], source: str = "") -> List[object]:
    names = list(elements)
    alphabet = Alphabet(names)
    assignment = {i: elements[n] for i, n in enumerate(names)}
    return [evaluate(alphabet.parse(t, source), assignment) for t in texts]


@dataclass
class SubgroupSpec:
    """A subgroup given by member words, its claimed order and structural flags."""

    name: str
    ambient: str
    order: int
    members: List[str] = field(default_factory=list)
    flags: List[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError(f"Order must be positive: {self.order}")
        for flag in self.flags:
            key = flag.partition("=")[0]
            if flag not in PLAIN_FLAGS and key not in KEYED_FLAGS:
                raise ValueError(f"Invalid subgroup flag: {flag}")

    def has(self, flag: str) -> bool:
        return flag in self.flags

    def value(self, key: str) -> Optional[str]:
        for flag in self.flags:
            k, eq, v = flag.partition("=")
            if eq and k == key:
                return v
        return None


def parse_subgroup_specs(text: str, source: str = "") -> List[SubgroupSpec]:
    specs: List[SubgroupSpec] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        if keyword == "SUB":
            tokens = rest.split()
            fields = dict(t.partition("=")[::2] for t in tokens[1:])
            if not tokens or "=" in tokens[0] or not {"ambient", "order"} <= set(fields):
                raise ParseError("SUB needs a name, ambient= and order=", position=lineno, source=source)
            if tokens[0] in [s.name for s in specs]:
                raise ParseError(f"Duplicate subgroup {tokens[0]!r}", position=lineno, source=source)
            flags = [f for f in fields.get("flags", "").split(",") if f]
            try:
                specs.append(
                    SubgroupSpec(
                        tokens[0],
                        fields["ambient"],
                        parse_factored(fields["order"], source),
                        flags=flags,
                    )
                )
            except ValueError as e:
                raise ParseError(str(e), position=lineno, source=source) from e
        elif keyword == "mem":
            if not specs:
                raise ParseError("mem before SUB", position=lineno, source=source)
            specs[-1].members.extend(split_top_level(rest))
        else:
            raise ParseError(f"Unknown keyword {keyword!r}", position=lineno, source=source)
    return specs


def read_subgroup_specs(path: Union[str, Path]) -> List[SubgroupSpec]:
    path = Path(path)
    return parse_subgroup_specs(path.read_text(encoding="utf-8"), source=str(path))


def _prime_of(order: int) -> Optional[int]:
    primes = factorization(order)
    return next(iter(primes)) if len(primes) == 1 else None


def _extraspecial_checks(
    spec: SubgroupSpec, group: BSGSGroup, enum_cap: int, seed: int
) -> List[Check]:
    claim = f"{spec.name} extraspecial"
    p = _prime_of(group.order())
    if p is None:
        return [Check.truth(f"{claim}: p-group", False, note=f"order {group.order()}")]
    if group.order() > enum_cap:
        return [Check.skipped(claim, f"order exceeds enumeration cap {enum_cap}")]
    exponent = factorization(group.order())[p]
    center = center_small(group, enum_cap, seed)
    derived = derived_subgroup(group, seed)
    frattini = all(center.contains(x**p) for x in enumerate_small(group, enum_cap))
    return [
        Check.compare(f"|Z({spec.name})|", center.order(), p),
        Check.truth(
            f"{spec.name}' = Z({spec.name})",
            derived.order() == p and all(center.contains(g) for g in derived.generators),
        ),
        Check.truth(f"{spec.name}/Z({spec.name}) elementary abelian", frattini),
        Check.truth(f"|{spec.name}| = {p}^(1+2m)", exponent % 2 == 1, note=f"{p}^{exponent}"),
    ]


def _center_checks(
    spec: SubgroupSpec,
    group: BSGSGroup,
    named: Sequence[Perm],
    enum_cap: int,
    seed: int,
) -> List[Check]:
    names = spec.value("center").replace("+", ", ")
    central = all(is_central(group, z) and group.contains(z) for z in named)
    checks = [Check.truth(f"{names} central in {spec.name}", central)]
    claim = f"Z({spec.name}) = <{names}>"
    if not central:
        return checks
    if group.order() > enum_cap:
        checks.append(Check.unchecked(claim, note=f"order exceeds enumeration cap {enum_cap}"))
        return checks
    generated = schreier_sims(list(named), seed=seed, degree=group.degree)
    checks.append(Check.compare(claim, center_small(group, enum_cap, seed).order(), generated.order()))
    return checks


def verify_subgroup(
    spec: SubgroupSpec,
    groups: Mapping[str, BSGSGroup],
    elements: Mapping[str, object],
    tags: Optional[Mapping[str, Presentation]] = None,
    enum_cap: int = DEFAULT_ENUM_CAP,
    seed: int = 0,
) -> Tuple[BSGSGroup, List[Check]]:
    """Build the subgroup from its words and check its order and flags."""
    ambient = groups[spec.ambient]
    members = evaluate_words(spec.members, elements, source=spec.name)
    group = schreier_sims(members, seed=seed, degree=ambient.degree)
    outside = [t for t, m in zip(spec.members, members) if not ambient.contains(m)]
    if outside:
        raise NotInGroupError(f"{spec.name}: members {outside} are not in {spec.ambient}")
    checks = [
        Check.compare(f"|{spec.name}|", group.order(), spec.order),
        Check.truth(
            f"|{spec.name}| divides |{spec.ambient}|", ambient.order() % spec.order == 0
        ),
    ]
    p = _prime_of(group.order())
    if spec.has("abelian"):
        checks.append(Check.truth(f"{spec.name} abelian", is_abelian(group)))
    if spec.has("elementary-abelian"):
        elementary = p is not None and is_abelian(group) and exponent_divides(group.generators, p)
        checks.append(Check.truth(f"{spec.name} elementary abelian", elementary or group.order() == 1))
    if spec.has("extraspecial"):
        checks += _extraspecial_checks(spec, group, enum_cap, seed)
    if spec.has("normal"):
        normal = all(group.contains(g.conjugate(a)) for g in group.generators for a in ambient.generators)
        checks.append(Check.truth(f"{spec.name} normal in {spec.ambient}", normal))
    if spec.value("center"):
        named = evaluate_words(spec.value("center").split("+"), elements, source=spec.name)
        checks += _center_checks(spec, group, named, enum_cap, seed)
    other_name = spec.value("complement")
    if other_name:
        other = groups[other_name]
        joined = schreier_sims(group.generators + other.generators, seed=seed, degree=ambient.degree)
        claim = f"{spec.name} complements {other_name} in {spec.ambient}"
        checks.append(
            Check.truth(
                claim,
                joined.order() == group.order() * other.order() == ambient.order(),
                note=f"|<{spec.name}, {other_name}>| = {joined.order()}",
            )
        )
    tag = spec.value("tag")
    if tag:
        checks.append(_tag_check(spec, members, (tags or {}).get(tag), tag))
    failed = [c.claim for c in checks if c.failed]
    logger.info("subgroup verified", subgroup=spec.name, order=group.order(), failures=len(failed))
    return group, checks


def _tag_check(
    spec: SubgroupSpec, members: Sequence[object], presentation: Optional[Presentation], tag: str
) -> Check:
    claim = f"{spec.name} satisfies {tag}"
    if presentation is None:
        return Check.skipped(claim, f"presentation {tag} not loaded")
    if len(presentation.generators) != len(members):
        return Check.truth(claim, False, note="generator count differs from member count")
    result = relators_hold(presentation, dict(zip(presentation.generators, members)))
    return Check.truth(claim, bool(result), note=result.failure_text)


def verify_subgroups(
    specs: Sequence[SubgroupSpec],
    groups: Dict[str, BSGSGroup],
    elements: Mapping[str, object],
    tags: Optional[Mapping[str, Presentation]] = None,
    enum_cap: int = DEFAULT_ENUM_CAP,
    seed: int = 0,
) -> List[Check]:
    """Verify specs in file order; each verified subgroup may serve as a later ambient."""
    checks: List[Check] = []
    for spec in specs:
        group, found = verify_subgroup(spec, groups, elements, tags, enum_cap, seed)
        groups[spec.name] = group
        for check in found:
            check.locus = check.locus or spec.name
        checks += found
    return checks
