"""
Meataxe: irreducibility testing, splitting and isomorphism of modules.

The search draws random elements of the group algebra as sums of short
products of generators, factors their characteristic polynomials and spins
null-space vectors of the factors. Norton's criterion certifies irreducibility
when a factor's null space has exactly the factor's degree and spinning in the
module and in its transpose both fill the space. Every run is seeded and
either returns a witness (a proper submodule or an irreducibility certificate)
or raises MeataxeInconclusiveError once the retry budget is spent.
"""

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from ..core.errors import MeataxeInconclusiveError, ShapeError
from . import linalg
from .matrix import Mat
from .module import GModule, _check_compatible, spin
from .polyfactor import charpoly, evaluate_at, irreducible_factors

logger = structlog.get_logger(__name__)

# algebra elements are sums of up to this many pooled products
MAX_TERMS = 4
# factors of higher degree are skipped; a fresh algebra element is drawn instead
MAX_FACTOR_DEGREE = 6
# Hom-space linear systems are used for isomorphism up to this dimension
HOM_SPACE_LIMIT = 48
# hom spaces with at most this many elements are searched completely
EXHAUSTIVE_HOM_LIMIT = 4096


@dataclass
class MeataxeSettings:
    """Budget for the randomized search."""

    word_length: int = 8
    retries: int = 200
    max_factor_degree: int = MAX_FACTOR_DEGREE


@dataclass
class SplitResult:
    """Outcome of one irreducibility test."""

    irreducible: bool
    subspace: Optional[np.ndarray] = None
    factor: Optional[List[int]] = None
    attempts: int = 0


@dataclass
class CompositionFactor:
    module: GModule
    multiplicity: int = 1

    @property
    def dim(self) -> int:
        return self.module.dim


@dataclass
class ChopResult:
    factors: List[CompositionFactor] = field(default_factory=list)

    @property
    def dimensions(self) -> List[int]:
        """Factor dimensions with multiplicity, sorted."""
        dims: List[int] = []
        for f in self.factors:
            dims.extend([f.dim] * f.multiplicity)
        return sorted(dims)

    @property
    def total_dimension(self) -> int:
        return sum(self.dimensions)


class AlgebraSampler:
    """Seeded source of random group-algebra elements.

    Keeps a pool of products of generators, each new product being a pooled
    element times a generator, so one matrix product is spent per draw.
    Descriptions are recorded as words so the same element can be formed in a
    second module with the same generator names.
    """

    def __init__(self, module: GModule, rng: random.Random, word_length: int):
        self.module = module
        self.rng = rng
        self.word_length = word_length
        self.pool: List[Tuple[Tuple[str, ...], Mat]] = [
            ((name,), g) for name, g in module.generators.items()
        ]

    def draw(self) -> Tuple[Mat, List[Tuple[int, Tuple[str, ...]]]]:
        names = self.module.names
        base_word, base = self.rng.choice(self.pool)
        if len(base_word) < self.word_length:
            name = self.rng.choice(names)
            self.pool.append((base_word + (name,), base * self.module[name]))
        count = self.rng.randint(1, min(MAX_TERMS, len(self.pool)))
        chosen = self.rng.sample(range(len(self.pool)), count)
        terms = []
        total = np.zeros((self.module.dim, self.module.dim), dtype=np.int64)
        for index in chosen:
            coefficient = self.rng.randrange(1, self.module.q)
            word, product = self.pool[index]
            terms.append((coefficient, word))
            total = (total + coefficient * product.entries) % self.module.q
        return Mat(self.module.field, total), terms


def _transpose_module(module: GModule) -> GModule:
    return GModule(module.field, module.dim, {n: g.T for n, g in module.generators.items()})


def split_or_certify(
    module: GModule, seed: int = 0, settings: Optional[MeataxeSettings] = None
) -> SplitResult:
    """Find a proper submodule or certify irreducibility by Norton's criterion."""
    settings = settings or MeataxeSettings()
    n = module.dim
    if n == 0:
        raise ShapeError("The zero module has no composition factors")
    if n == 1:
        return SplitResult(irreducible=True, factor=[1, 0], attempts=0)

    q = module.q
    rng = random.Random(seed)
    sampler = AlgebraSampler(module, rng, settings.word_length)
    transposed = _transpose_module(module)

    for attempt in range(1, settings.retries + 1):
        element, _ = sampler.draw()
        chi = charpoly(element)
        for f in irreducible_factors(chi, q, rng, settings.max_factor_degree):
            degree = len(f) - 1
            f_of_a = evaluate_at(f, element)
            kernel = linalg.left_nullspace(f_of_a.entries, q)
            if len(kernel) == 0:
                continue
            sub = spin(module, kernel[0])
            if len(sub) < n:
                logger.debug("meataxe split", dim=n, sub=len(sub), attempt=attempt)
                return SplitResult(False, subspace=sub, factor=f, attempts=attempt)
            dual_kernel = linalg.nullspace(f_of_a.entries, q)
            dual_sub = spin(transposed, dual_kernel[0])
            if len(dual_sub) < n:
                annihilator = linalg.nullspace(dual_sub, q)
                logger.debug(
                    "meataxe split via transpose", dim=n, sub=len(annihilator), attempt=attempt
                )
                return SplitResult(False, subspace=annihilator, factor=f, attempts=attempt)
            if len(kernel) == degree:
                logger.debug("norton criterion satisfied", dim=n, degree=degree, attempt=attempt)
                return SplitResult(True, factor=f, attempts=attempt)

    raise MeataxeInconclusiveError(
        f"No witness for a module of dimension {n} after {settings.retries} attempts"
    )


def is_irreducible(
    module: GModule, seed: int = 0, settings: Optional[MeataxeSettings] = None
) -> bool:
    return split_or_certify(module, seed, settings).irreducible


def meataxe_chop(
    module: GModule, seed: int = 0, settings: Optional[MeataxeSettings] = None
) -> ChopResult:
    """Composition factors of a module, isomorphic factors grouped."""
    settings = settings or MeataxeSettings()
    pending = [module]
    irreducibles: List[GModule] = []
    step = 0
    while pending:
        current = pending.pop()
        step += 1
        result = split_or_certify(current, seed + step, settings)
        if result.irreducible:
            irreducibles.append(current)
            continue
        pending.append(current.quotient(result.subspace))
        pending.append(current.submodule(result.subspace))

    grouped: List[CompositionFactor] = []
    for factor in sorted(irreducibles, key=lambda m: m.dim):
        for existing in grouped:
            if existing.dim == factor.dim and module_iso(
                existing.module, factor, seed=seed, settings=settings
            ) is not None:
                existing.multiplicity += 1
                break
        else:
            grouped.append(CompositionFactor(factor))

    chopped = ChopResult(grouped)
    logger.info("meataxe chop finished", dim=module.dim, factors=chopped.dimensions)
    return chopped


def hom_space(a: GModule, b: GModule) -> List[Mat]:
    """Basis of {X : a(g) X = X b(g) for every generator g}."""
    _check_compatible(a, b)
    q = a.q
    n, m = a.dim, b.dim
    blocks = []
    eye_n = np.eye(n, dtype=np.int64)
    eye_m = np.eye(m, dtype=np.int64)
    for name in a.names:
        ag = a[name].entries
        bg = b[name].entries
        blocks.append((np.kron(ag, eye_m) - np.kron(eye_n, bg.T)) % q)
    system = np.vstack(blocks)
    solutions = linalg.nullspace(system, q)
    return [Mat(a.field, row.reshape(n, m)) for row in solutions]


def _conjugates(t: Mat, a: GModule, b: GModule) -> bool:
    t_inv = t.inverse()
    return all(t_inv * a[name] * t == b[name] for name in a.names)


def module_iso(
    a: GModule,
    b: GModule,
    seed: int = 0,
    settings: Optional[MeataxeSettings] = None,
) -> Optional[Mat]:
    """Return T with T^-1 a(g) T = b(g) for all g, or None.

    None is always certified: the homomorphism space is zero, small enough to
    search completely, or (large irreducible modules) the standard-basis replay
    found no image for a null-space vector of a Norton factor. A random search
    that runs out of retries raises MeataxeInconclusiveError.
    """
    _check_compatible(a, b)
    if a.dim != b.dim:
        return None
    settings = settings or MeataxeSettings()
    rng = random.Random(seed)

    if a.dim <= HOM_SPACE_LIMIT:
        basis = hom_space(a, b)
        if not basis:
            return None
        if len(basis) == 1:
            t = basis[0]
            return t if t.is_invertible() and _conjugates(t, a, b) else None
        if a.q ** len(basis) <= EXHAUSTIVE_HOM_LIMIT:
            # every homomorphism is tried, so None is certified
            for coefficients in np.ndindex(*([a.q] * len(basis))):
                if not any(coefficients):
                    continue
                t = _combination(a, basis, coefficients)
                if t.is_invertible() and _conjugates(t, a, b):
                    return t
            return None
        for _ in range(settings.retries):
            t = _combination(a, basis, [rng.randrange(a.q) for _ in basis])
            if t.is_invertible() and _conjugates(t, a, b):
                return t
        raise MeataxeInconclusiveError(
            f"No invertible homomorphism among {settings.retries} random elements "
            f"of a {len(basis)}-dimensional hom space (dimension {a.dim})"
        )

    return _standard_basis_iso(a, b, rng, settings)


def _combination(a: GModule, basis: Sequence[Mat], coefficients: Sequence[int]) -> Mat:
    total = np.zeros((a.dim, a.dim), dtype=np.int64)
    for c, x in zip(coefficients, basis):
        total = (total + int(c) * x.entries) % a.q
    return Mat(a.field, total)


def _spin_script(module: GModule, v: np.ndarray) -> Tuple[np.ndarray, List[Tuple[int, str]]]:
    """Spin v keeping the recipe (source vector, generator) of each new vector."""
    q = module.q
    vectors = [np.asarray(v, dtype=np.int64) % q]
    script: List[Tuple[int, str]] = []
    basis, pivots = linalg.rref(vectors[0].reshape(1, -1), q)
    i = 0
    while i < len(vectors) and len(vectors) < module.dim:
        for name, g in module.generators.items():
            image = linalg.product_mod(vectors[i], g.entries, q)
            residue = linalg.reduce_against(image, basis, pivots, q)
            if residue.any():
                vectors.append(image)
                script.append((i, name))
                basis, pivots = linalg.extend_rref(basis, pivots, residue.reshape(1, -1), q)
                if len(vectors) == module.dim:
                    break
        i += 1
    return np.vstack(vectors), script


def _replay(module: GModule, w: np.ndarray, script: Sequence[Tuple[int, str]]) -> np.ndarray:
    q = module.q
    vectors = [np.asarray(w, dtype=np.int64) % q]
    for source, name in script:
        vectors.append(linalg.product_mod(vectors[source], module[name].entries, q))
    return np.vstack(vectors)


def _projective_points(space: np.ndarray, q: int):
    """One representative of every 1-space inside the row space given."""
    k = len(space)
    for coefficients in np.ndindex(*([q] * k)):
        c = np.asarray(coefficients, dtype=np.int64)
        nonzero = np.flatnonzero(c)
        if nonzero.size == 0 or c[nonzero[0]] != 1:
            continue
        yield (c @ space) % q


def _standard_basis_iso(
    a: GModule, b: GModule, rng: random.Random, settings: MeataxeSettings
) -> Optional[Mat]:
    q = a.q
    sampler = AlgebraSampler(a, rng, settings.word_length)
    for _ in range(settings.retries):
        element, terms = sampler.draw()
        element_b = b.algebra_element(terms)
        for f in irreducible_factors(charpoly(element), q, rng, settings.max_factor_degree):
            degree = len(f) - 1
            kernel_a = linalg.left_nullspace(evaluate_at(f, element).entries, q)
            if len(kernel_a) != degree:
                continue
            vectors_a, script = _spin_script(a, kernel_a[0])
            if len(vectors_a) < a.dim:
                raise ShapeError("module_iso on large modules needs an irreducible source")
            kernel_b = linalg.left_nullspace(evaluate_at(f, element_b).entries, q)
            if len(kernel_b) != degree:
                return None
            s_a = Mat(a.field, vectors_a)
            s_a_inv = s_a.inverse()
            for w in _projective_points(kernel_b, q):
                s_b = Mat(a.field, _replay(b, w, script))
                if not s_b.is_invertible():
                    continue
                t = s_a_inv * s_b
                if _conjugates(t, a, b):
                    return t
            return None
    raise MeataxeInconclusiveError(
        f"No Norton factor found for dimension {a.dim} after {settings.retries} attempts"
    )


def settings_from_caps(caps) -> MeataxeSettings:
    """Meataxe budget taken from a CapsConfig section."""
    return MeataxeSettings(word_length=caps.meataxe_word_length, retries=caps.meataxe_retries)


def factor_dimensions(result: ChopResult) -> Dict[int, int]:
    counts: Dict[int, int] = {}
    for d in result.dimensions:
        counts[d] = counts.get(d, 0) + 1
    return counts
