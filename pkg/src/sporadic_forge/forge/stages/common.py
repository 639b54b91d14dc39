"""
Building blocks shared by the scenario stages: matrix groups as permutation
groups, presented groups through their coset action, and the split
extensions E1..E4 with their affine representations.
"""

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import structlog

from ...core.checks import Check
from ...extlocal import (
    AffineRep,
    ExtensionSpec,
    action_from_relators,
    affine_rep,
    compare_relators,
    essential_part,
    split_presentation,
)
from ...fpres import CosetTable, Presentation, coset_action, evaluate, relators_hold, todd_coxeter
from ...gflin import GModule, Mat, module_iso
from ...permcore import (
    BSGSGroup,
    Perm,
    ProjectiveAction,
    VectorAction,
    class_orbit,
    nonzero_vectors,
    orbit_permutations,
    permutations_on_points,
    schreier_sims,
)
from ..scenario import ScenarioContext

logger = structlog.get_logger(__name__)

MODULE_FILES = {"V1": "m22/V1.mod", "V3": "a22/V3.mod"}
DUAL_MODULES = {"V2": "V1", "V4": "V3"}
BASE_PRESENTATIONS = {"A22": "a22/A22.fp"}
EXTENSION_FILES = {name: f"extensions/{name}.ext" for name in ("E1", "E2", "E3", "E4", "E5")}

M22_ORDER = 443520
A22_ORDER = 887040


def extension_requires(*names: str) -> Tuple[str, ...]:
    """Data files needed to build the named split extensions."""
    files: List[str] = []
    for name in names:
        files.append(EXTENSION_FILES[name])
        files.append(f"extensions/{name}_R2.fp")
        files.append(MODULE_FILES["V1" if name in ("E1", "E2") else "V3"])
        if name in ("E3", "E4"):
            files.append(BASE_PRESENTATIONS["A22"])
    return tuple(dict.fromkeys(files))


def linear_perms(mats: Mapping[str, Mat]) -> Dict[str, Perm]:
    """Faithful permutation images of invertible matrices on all nonzero vectors."""
    sample = next(iter(mats.values()))
    action = VectorAction(mats)
    return permutations_on_points(action, nonzero_vectors(sample.q, sample.rows))


def linear_group(ctx: ScenarioContext, mats: Mapping[str, Mat]) -> Tuple[Dict[str, Perm], BSGSGroup]:
    perms = linear_perms(mats)
    return perms, schreier_sims(list(perms.values()), seed=ctx.seed)


def projective_orbit(
    mats: Mapping[str, Mat], start: np.ndarray
) -> Tuple[Dict[str, Perm], np.ndarray]:
    """Permutation action on the projective orbit of the 1-space spanned by start."""
    return orbit_permutations(ProjectiveAction(mats), start)


def enumerate_cosets(
    ctx: ScenarioContext, presentation: Presentation, subgroup: str
) -> CosetTable:
    words = [] if subgroup == "trivial" else presentation.subgroup(subgroup)
    return todd_coxeter(presentation, words, ctx.caps.max_cosets, ctx.felsch)


def index_check(claim: str, table: CosetTable, expected: int, locus: str = "") -> Check:
    if table.overflow:
        return Check.skipped(
            claim,
            f"coset table overflow after {table.total_defined} definitions",
            locus,
            expected,
        )
    check = Check.compare(claim, table.index, expected, locus)
    check.details.update(strategy=table.strategy, total_defined=table.total_defined, max_live=table.max_live)
    return check


def class_size_check(
    ctx: ScenarioContext, claim: str, group: BSGSGroup, x: Perm, expected: int, locus: str = ""
) -> Check:
    result = class_orbit(group, x, ctx.caps.class_cap, ctx.caps.fingerprint_points)
    if result.overflow:
        return Check.skipped(claim, f"class orbit above cap {ctx.caps.class_cap}", locus, expected)
    check = Check.compare(claim, result.size, expected, locus)
    check.details["centralizer"] = group.order() // result.size
    return check


def module(ctx: ScenarioContext, name: str) -> GModule:
    """V1 and V3 as transcribed; V2 and V4 as their duals."""
    if name in DUAL_MODULES:
        return ctx.memo(f"module:{name}", lambda: module(ctx, DUAL_MODULES[name]).dual())
    return ctx.get(MODULE_FILES[name])


@dataclass
class BuiltExtension:
    """A split extension with its presentation, affine action and BSGS."""

    spec: ExtensionSpec
    module: GModule
    presentation: Presentation
    rep: AffineRep
    group: BSGSGroup

    @property
    def elements(self) -> Dict[str, Perm]:
        return self.rep.generators

    def element(self, word: str) -> Perm:
        return evaluate(self.presentation.word(word), self.presentation.assignment(self.elements))


def base_presentation(ctx: ScenarioContext, spec: ExtensionSpec) -> Optional[Presentation]:
    path = BASE_PRESENTATIONS.get(spec.base)
    return ctx.get(path) if path and ctx.dataset.has(path) else None


def build_extension(ctx: ScenarioContext, name: str) -> BuiltExtension:
    """Presentation, affine representation and verified BSGS of a split extension."""

    def build() -> BuiltExtension:
        spec: ExtensionSpec = ctx.get(EXTENSION_FILES[name])
        mod = module(ctx, spec.module)
        presentation = split_presentation(spec, mod, base_presentation(ctx, spec))
        rep = affine_rep(spec, mod, presentation)
        group = schreier_sims(list(rep.generators.values()), seed=ctx.seed)
        logger.info("extension built", extension=name, degree=rep.degree, side=rep.side, order=group.order())
        return BuiltExtension(spec, mod, presentation, rep, group)

    return ctx.memo(f"extension:{name}", build)


def coset_group(
    ctx: ScenarioContext, presentation: Presentation, subgroup: str
) -> Tuple[CosetTable, Optional[Dict[str, Perm]], Optional[BSGSGroup]]:
    """Coset table over a named subgroup and, when it closes, the permutation group."""
    table = enumerate_cosets(ctx, presentation, subgroup)
    if not table.complete:
        return table, None, None
    perms = coset_action(table)
    return table, perms, schreier_sims(list(perms.values()), seed=ctx.seed)


def orders_of(elements: Mapping[str, object], names: Sequence[str]) -> List[int]:
    return [elements[n].order() for n in names]


def transcribed_relator_checks(
    ctx: ScenarioContext,
    spec: ExtensionSpec,
    mod: GModule,
    base: Optional[Presentation],
    transcribed: Presentation,
    locus: str = "",
) -> Presentation:
    """Compare a transcribed R2 with the one generated from the module.

    When the lists differ, the action is read off the transcription and checked
    against R(G) and against the module up to a change of basis; a basis change
    is flagged.
    """
    presentation = split_presentation(spec, mod, base)
    comparison = compare_relators(
        presentation, essential_part(presentation, mod), transcribed, spec.vector_prefix, mod.q
    )
    claim = f"generated R2({spec.name}) equals the transcribed list"
    if comparison.identical:
        ctx.add(Check.truth(claim, True, locus))
        return presentation
    base_names = presentation.generators[: len(mod.names)]
    printed = action_from_relators(transcribed, base_names, spec.vector_prefix, mod.q)
    renamed = GModule(mod.q, mod.dim, dict(zip(mod.names, printed.generators.values())), name=printed.name)
    if base is not None:
        result = relators_hold(base, renamed.generators)
        ctx.add(
            Check.truth(f"action read off R2({spec.name}) satisfies R({spec.base})", bool(result), locus, result.failure_text)
        )
    iso = module_iso(renamed, mod, ctx.seed, ctx.meataxe)
    note = ""
    if iso is None and module_iso(renamed, mod.dual(), ctx.seed, ctx.meataxe) is not None:
        note = f"isomorphic to the dual of {spec.module} only"
    ctx.add(Check.truth(f"action read off R2({spec.name}) is {spec.module} up to basis", iso is not None, locus, note))
    regenerated = split_presentation(spec, renamed, base)
    again = compare_relators(
        regenerated, essential_part(regenerated, renamed), transcribed, spec.vector_prefix, mod.q
    )
    ctx.add(
        Check.truth(
            f"R2({spec.name}) regenerated from its own action equals the transcribed list",
            again.identical,
            locus,
            note="; ".join(again.missing[:5] + again.unexpected[:5]),
        )
    )
    if iso is not None:
        ctx.record(f"R2({spec.name}) basis change", iso.tolist())
        ctx.flag(
            f"basis of R2({spec.name})",
            "transcribed relators use another basis of V",
            f"{spec.module} basis; the change of basis is recorded",
            locus,
        )
    return presentation
