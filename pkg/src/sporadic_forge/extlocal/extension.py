"""
Split extensions V x| G of a matrix group by its natural module.

For generators x of G and the standard basis e_1..e_n of V = GF(p)^n the
split extension is presented by the relators of G, the elementary abelian
relators of V, and the essential relators

    x e_j x^-1 = e_1^a_1 ... e_n^a_n     with (a_1, ..., a_n) = e_j * x^-1

which hold because conjugating by x^-1 acts on V through the dual module.
Relators are written x e_j x^-1 e_1^(-a_1) ... e_n^(-a_n) with module
exponents reduced into 0..p-1.

The affine permutation representation acts on the q^n vectors of V, encoded
as integers with the first coordinate most significant: e_j translates and a
base generator acts linearly. The linear side is chosen by evaluating the
essential relators, never assumed.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
import structlog

from ..core.errors import ConventionError, ParseError, ShapeError
from ..fpres import Presentation, Word, coset_action, relators_hold, todd_coxeter
from ..fpres.todd_coxeter import DEFAULT_MAX_COSETS
from ..gflin.matrix import Mat, vectors_times
from ..gflin.module import GModule
from ..permcore.perm import Perm

logger = structlog.get_logger(__name__)


@dataclass
class ExtensionSpec:
    """An extension of a base group by a module, as declared in an EXT file."""

    name: str
    base: str
    module: str
    split: bool = True
    h2_dim: int = 0
    presentation: Optional[str] = None
    generators: Optional[List[str]] = None
    vector_prefix: str = "v"

    def __post_init__(self) -> None:
        if self.h2_dim < 0:
            raise ValueError(f"h2 must be non-negative: {self.h2_dim}")
        if not self.split and not self.presentation:
            raise ValueError(f"Non-split extension {self.name} needs an explicit presentation")


def parse_extension_spec(text: str, source: str = "") -> ExtensionSpec:
    """Read `EXT [name] base=<id> module=<id> split=<0|1> h2=<int> [pres=] [gens=] [vec=]`."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if len(lines) != 1 or not lines[0].startswith("EXT"):
        raise ParseError("Extension file must hold one EXT line", source=source)
    tokens = lines[0].split()[1:]
    name = Path(source).stem if source else ""
    fields: Dict[str, str] = {}
    for token in tokens:
        if "=" not in token:
            name = token
            continue
        key, _, value = token.partition("=")
        fields[key] = value
    missing = {"base", "module", "split", "h2"} - set(fields)
    if missing:
        raise ParseError(f"EXT line lacks {sorted(missing)}", source=source)
    if fields["split"] not in ("0", "1"):
        raise ParseError(f"split must be 0 or 1: {fields['split']}", source=source)
    try:
        h2 = int(fields["h2"])
    except ValueError:
        raise ParseError(f"h2 must be an integer: {fields['h2']}", source=source) from None
    try:
        return ExtensionSpec(
            name=name,
            base=fields["base"],
            module=fields["module"],
            split=fields["split"] == "1",
            h2_dim=h2,
            presentation=fields.get("pres"),
            generators=fields["gens"].split(",") if fields.get("gens") else None,
            vector_prefix=fields.get("vec", "v"),
        )
    except ValueError as e:
        raise ParseError(str(e), source=source) from e


def read_extension_spec(path: Union[str, Path]) -> ExtensionSpec:
    path = Path(path)
    return parse_extension_spec(path.read_text(encoding="utf-8"), source=str(path))


def vector_names(dim: int, prefix: str = "v") -> List[str]:
    return [f"{prefix}_{j}" for j in range(1, dim + 1)]


def _reindex(word: Word, mapping: Sequence[int]) -> Word:
    return Word(tuple(2 * mapping[a >> 1] + (a & 1) for a in word.letters))


def normalize_module_exponents(word: Word, module_generators: Sequence[int], p: int) -> Word:
    """Reduce exponents of module generators into 0..p-1, keeping syllable order."""
    module_generators = set(module_generators)
    while True:
        letters: List[int] = []
        for gen, exponent in word.syllables():
            if gen in module_generators:
                exponent %= p
            if exponent:
                letters.extend(Word.generator(gen, exponent).letters)
        normalized = Word(tuple(letters))
        if normalized == word:
            return normalized
        word = normalized


def essential_relators(
    module: GModule, base_index: Sequence[int], vector_index: Sequence[int]
) -> List[Word]:
    """The relators x e_j x^-1 prod_k e_k^(-a_k) for every generator x and every j."""
    p = module.q
    relators = []
    for x, name in zip(base_index, module.names):
        inverse = module[name].inverse().entries
        xw = Word.generator(x)
        for j, e in enumerate(vector_index):
            word = xw * Word.generator(e) * xw.inverse()
            tail: List[int] = []
            for k, a in enumerate(inverse[j]):
                tail.extend([2 * vector_index[k]] * int((-int(a)) % p))
            relators.append(word * Word(tuple(tail)))
    return relators


def action_from_relators(
    presentation: Presentation, base_names: Sequence[str], module_prefix: str, p: int
) -> GModule:
    """Read the matrices of the base generators off essential relators.

    Each relator x v_j x^-1 tail gives row j of x^-1 as the negated exponents
    of the tail, so every pair (x, v_j) must occur exactly once.
    """
    names = presentation.generators
    vectors = [i for i, n in enumerate(names) if n.startswith(module_prefix + "_")]
    position = {gen: k for k, gen in enumerate(vectors)}
    base = {names.index(n): n for n in base_names if n in names}
    if len(base) != len(base_names):
        raise ShapeError(f"{presentation.name}: base generators {list(base_names)} not all declared")
    dim = len(vectors)
    rows = {n: np.zeros((dim, dim), dtype=np.int64) for n in base_names}
    seen = {n: [False] * dim for n in base_names}
    for word in presentation.relators:
        syllables = word.syllables()
        head = syllables[:3]
        if (
            len(head) < 3
            or head[0][0] not in base
            or head[1][0] not in position
            or head[2][0] != head[0][0]
            or (head[0][1], head[1][1], head[2][1]) != (1, 1, -1)
        ):
            continue
        x, j = base[head[0][0]], position[head[1][0]]
        if seen[x][j]:
            raise ShapeError(f"{presentation.name}: two relators for {x} {names[head[1][0]]} {x}^-1")
        for gen, exponent in syllables[3:]:
            if gen not in position:
                raise ParseError(
                    f"relator {presentation.format(word)} has a tail outside the module", source=presentation.name
                )
            rows[x][j, position[gen]] -= exponent
        seen[x][j] = True
    missing = [f"{x} {names[vectors[j]]} {x}^-1" for x in base_names for j in range(dim) if not seen[x][j]]
    if missing:
        raise ShapeError(f"{presentation.name}: no relator for {', '.join(missing[:5])}")
    generators = {x: Mat(p, rows[x] % p).inverse() for x in base_names}
    return GModule(p, dim, generators, name=f"{presentation.name} action")


def split_presentation(
    spec: ExtensionSpec, module: GModule, base: Optional[Presentation] = None
) -> Presentation:
    """Presentation of the split extension: R(G), R1 and the essential relators R2.

    Without a base presentation only R1 and R2 are produced and a note records
    that R(G) is missing.
    """
    if not spec.split:
        raise ValueError(f"{spec.name} is not a split extension")
    base_names = list(spec.generators or (base.generators if base else module.names))
    if len(base_names) != len(module.names):
        raise ShapeError(
            f"{spec.name}: {len(base_names)} base generators but the module has {len(module.names)}"
        )
    if base is not None and len(base.generators) != len(base_names):
        raise ShapeError(f"{spec.name}: base presentation has {len(base.generators)} generators")
    vectors = vector_names(module.dim, spec.vector_prefix)
    generators = base_names + vectors
    r = len(base_names)
    base_index = list(range(r))
    vector_index = list(range(r, r + module.dim))
    notes: List[str] = []
    relators: List[Word] = []
    if base is not None:
        relators += [_reindex(w, base_index) for w in base.relators]
    else:
        notes.append(f"no presentation of {spec.base} available, R(G) omitted")
    for j, e in enumerate(vector_index):
        relators.append(Word.generator(e, module.q))
        for k in vector_index[:j]:
            relators.append(Word.generator(k).commutator(Word.generator(e)))
    relators += essential_relators(module, base_index, vector_index)
    subgroups = {"complement": [Word.generator(x) for x in base_index]}
    if base is not None:
        for sub_name, words in base.subgroups.items():
            subgroups[sub_name] = [_reindex(w, base_index) for w in words]
    logger.debug("split presentation", extension=spec.name, relators=len(relators))
    return Presentation(generators, relators, subgroups, name=spec.name, notes=notes)


def essential_part(presentation: Presentation, module: GModule) -> List[Word]:
    """The trailing essential relators of a presentation from split_presentation."""
    count = len(module.names) * module.dim
    return presentation.relators[len(presentation.relators) - count :]


@dataclass
class RelatorComparison:
    """Generated relators against a transcribed list, both normalized."""

    matched: int
    missing: List[str] = field(default_factory=list)
    unexpected: List[str] = field(default_factory=list)

    @property
    def identical(self) -> bool:
        return not self.missing and not self.unexpected


def compare_relators(
    presentation: Presentation,
    generated: Sequence[Word],
    transcribed: Presentation,
    module_prefix: str,
    p: int,
) -> RelatorComparison:
    """Compare generated relators with a transcribed list as sets of normalized words."""
    if presentation.generators != transcribed.generators:
        raise ShapeError(
            f"Generator lists differ: {presentation.generators} vs {transcribed.generators}"
        )
    module_gens = [
        i for i, n in enumerate(presentation.generators) if n.startswith(module_prefix + "_")
    ]

    def keyed(words: Sequence[Word]) -> Dict[Word, str]:
        return {normalize_module_exponents(w, module_gens, p): presentation.format(w) for w in words}

    ours, theirs = keyed(generated), keyed(transcribed.relators)
    return RelatorComparison(
        matched=len(set(ours) & set(theirs)),
        missing=[theirs[w] for w in theirs if w not in ours],
        unexpected=[ours[w] for w in ours if w not in theirs],
    )


@dataclass
class AffineRep:
    """Permutations of the q^n module vectors realizing V x| G."""

    name: str
    q: int
    dim: int
    generators: Dict[str, Perm]
    side: str

    @property
    def degree(self) -> int:
        return self.q**self.dim


def all_vectors(q: int, dim: int) -> np.ndarray:
    """Every vector of GF(q)^dim in code order, first coordinate most significant."""
    codes = np.arange(q**dim, dtype=np.int64)
    powers = q ** np.arange(dim - 1, -1, -1, dtype=np.int64)
    return (codes[:, None] // powers) % q


def encode_vectors(vectors: np.ndarray, q: int) -> np.ndarray:
    dim = vectors.shape[1]
    powers = q ** np.arange(dim - 1, -1, -1, dtype=np.int64)
    return (np.asarray(vectors, dtype=np.int64) % q) @ powers


def _linear_perm(vectors: np.ndarray, m: Mat) -> Perm:
    return Perm(encode_vectors(vectors_times(vectors, m), m.q))


def _translation_perm(vectors: np.ndarray, j: int, q: int) -> Perm:
    shifted = vectors.copy()
    shifted[:, j] = (shifted[:, j] + 1) % q
    return Perm(encode_vectors(shifted, q))


def affine_rep(spec: ExtensionSpec, module: GModule, presentation: Presentation) -> AffineRep:
    """Affine action of the split extension on its module vectors.

    Base generators act by v -> v*X or, failing that, by v -> v*X^*; the side
    kept is the first under which every essential relator holds.
    """
    q, dim = module.q, module.dim
    vectors = all_vectors(q, dim)
    vec_names = vector_names(dim, spec.vector_prefix)
    base_names = presentation.generators[: len(module.names)]
    translations = {n: _translation_perm(vectors, j, q) for j, n in enumerate(vec_names)}
    essential = essential_part(presentation, module)
    for side in ("natural", "dual"):
        linear = {}
        for name, module_name in zip(base_names, module.names):
            m = module[module_name]
            linear[name] = _linear_perm(vectors, m if side == "natural" else m.dual())
        perms = {**linear, **translations}
        check = relators_hold(presentation, perms, essential)
        if check:
            logger.info("affine representation", extension=spec.name, degree=q**dim, side=side)
            return AffineRep(spec.name, q, dim, perms, side)
        logger.debug("affine side rejected", extension=spec.name, side=side, relator=check.failure_text)
    raise ConventionError(f"{spec.name}: essential relators fail under both linear actions")


def presented_rep(
    presentation: Presentation,
    subgroup: str,
    max_cosets: int = DEFAULT_MAX_COSETS,
    felsch: bool = False,
) -> Optional[Dict[str, Perm]]:
    """Coset action of a presented group on the cosets of a named subgroup."""
    table = todd_coxeter(presentation, presentation.subgroup(subgroup), max_cosets, felsch)
    if not table.complete:
        return None
    return coset_action(table)
