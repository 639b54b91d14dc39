"""
Scenarios over M22, Aut(M22) and their extensions by the 10-dimensional
GF(2)-modules: group orders, the Meataxe facts about V1..V4, the essential
relators of E1..E4, the non-split E5 and the 2-central involutions.
"""

import structlog

from ...core.checks import Check
from ...extlocal import compare_relators, essential_part
from ...fpres import coset_action, evaluate, relators_hold
from ...gflin import GModule, dual_gen, factor_dimensions, is_irreducible, meataxe_chop, module_iso
from ...permcore import derived_subgroup, schreier_sims
from ..scenario import ScenarioContext, order_check, scenario
from .common import (
    A22_ORDER,
    M22_ORDER,
    build_extension,
    class_size_check,
    enumerate_cosets,
    extension_requires,
    index_check,
    linear_group,
    module,
)

logger = structlog.get_logger(__name__)

# word of the 2-central involution, expected class size, locus
CENTRAL_INVOLUTIONS = {
    "E1": ("(tv_1)^3", 77, "E1 central involution"),
    "E2": ("(iv_1)^2", 231, "Fi22 class table of E, class 2b"),
    "E3": ("(pq^2v_1)^5", 77, "Co2 class table of E, class 2b"),
    "E4": ("(p_1^2q_1v_1)^10", 231, "E4 central involution"),
}


@scenario("m22-order", "M22 as a matrix group on GF(2)^10", requires=("m22/V1.mod",))
def m22_order(ctx: ScenarioContext) -> None:
    v1 = module(ctx, "V1")
    with ctx.step("order of V1"):
        _, group = linear_group(ctx, v1.generators)
        ctx.add(order_check("|<Ma_1, ..., Mi_1>|", group.order(), M22_ORDER, "M22 generator matrices"))
    with ctx.step("dual module"):
        v2 = module(ctx, "V2")
        duals = all(v2[n] == dual_gen(v1[n]) for n in v1.names)
        ctx.add(Check.truth("V2 generators are the transposed inverses of V1's", duals, "M22 extensions"))
        _, group2 = linear_group(ctx, v2.generators)
        ctx.add(order_check("|<Ma_2, ..., Mi_2>|", group2.order(), M22_ORDER, "M22 extensions"))


@scenario(
    "a22",
    "Aut(M22): presentation, permutation representation and derived subgroup",
    requires=("a22/A22.fp", "a22/Pp.cyc", "a22/Pq.cyc", "a22/V3.mod"),
)
def a22(ctx: ScenarioContext) -> None:
    presentation = ctx.get("a22/A22.fp")
    perms = {"p": ctx.get("a22/Pp.cyc"), "q": ctx.get("a22/Pq.cyc")}
    with ctx.step("relators on Pp, Pq"):
        result = relators_hold(presentation, perms)
        ctx.add(Check.truth("Pp, Pq satisfy R(A22)", bool(result), "Aut(M22) presentation", result.failure_text))
    with ctx.step("relators on Mp, Mq"):
        v3 = module(ctx, "V3")
        result = relators_hold(presentation, {"p": v3["p"], "q": v3["q"]})
        ctx.add(Check.truth("Mp, Mq satisfy R(A22)", bool(result), "Aut(M22) extensions", result.failure_text))
    with ctx.step("order of <Pp, Pq>"):
        group = schreier_sims(list(perms.values()), seed=ctx.seed)
        ctx.add(order_check("|<Pp, Pq>|", group.order(), A22_ORDER, "Aut(M22) permutation representation"))
    with ctx.step("derived subgroup"):
        derived = derived_subgroup(group, ctx.seed)
        ctx.add(order_check("|A22'|", derived.order(), M22_ORDER, "Aut(M22) extensions"))
        ctx.add(Check.compare("|A22 : A22'|", group.order() // derived.order(), 2, "Aut(M22) extensions"))
    with ctx.step("coset enumeration"):
        table = enumerate_cosets(ctx, presentation, "trivial")
        ctx.add(index_check("|R(A22)| by coset enumeration", table, A22_ORDER, "Aut(M22) presentation"))


@scenario(
    "meataxe-v",
    "Irreducibility of V1..V4 and the degree-44 permutation module",
    requires=("m22/V1.mod", "a22/V3.mod", "a22/Pp.cyc", "a22/Pq.cyc"),
)
def meataxe_v(ctx: ScenarioContext) -> None:
    for name in ("V1", "V2", "V3", "V4"):
        with ctx.step(f"irreducibility of {name}"):
            ctx.add(
                Check.truth(f"{name} irreducible", is_irreducible(module(ctx, name), ctx.seed, ctx.meataxe), "M22 extensions")
            )
    with ctx.step("V3 against V4"):
        iso = module_iso(module(ctx, "V3"), module(ctx, "V4"), ctx.seed, ctx.meataxe)
        ctx.add(Check.truth("V4 not isomorphic to V3", iso is None, "Aut(M22) extensions"))
    with ctx.step("V1 against V2"):
        iso = module_iso(module(ctx, "V1"), module(ctx, "V2"), ctx.seed, ctx.meataxe)
        ctx.add(Check.truth("V2 not isomorphic to V1", iso is None, "M22 extensions"))
    with ctx.step("degree-44 permutation module"):
        perm_module = GModule.from_perms(
            2, {"p": ctx.get("a22/Pp.cyc").image, "q": ctx.get("a22/Pq.cyc").image}, name="GF(2)^44"
        )
        chop = meataxe_chop(perm_module, ctx.seed, ctx.meataxe)
        ctx.record("degree-44 composition factors", factor_dimensions(chop))
        ten = [f.module for f in chop.factors if f.dim == 10]
        found = any(
            module_iso(f, module(ctx, target), ctx.seed, ctx.meataxe) is not None
            for f in ten
            for target in ("V3", "V4")
        )
        ctx.add(
            Check.truth(
                "V3 or V4 is a factor of the degree-44 permutation module",
                found,
                "Aut(M22) extensions",
                note=f"factor dimensions {chop.dimensions}",
            )
        )


@scenario(
    "split-extensions",
    "Essential relators and affine representations of E1..E4",
    requires=extension_requires("E1", "E2", "E3", "E4"),
)
def split_extensions(ctx: ScenarioContext) -> None:
    base_orders = {"M22": M22_ORDER, "A22": A22_ORDER}
    for name in ("E1", "E2", "E3", "E4"):
        with ctx.step(f"{name} relators"):
            built = build_extension(ctx, name)
            transcribed = ctx.get(f"extensions/{name}_R2.fp")
            generated = essential_part(built.presentation, built.module)
            comparison = compare_relators(built.presentation, generated, transcribed, built.spec.vector_prefix, 2)
            check = Check.truth(
                f"generated R2({name}) equals the transcribed list",
                comparison.identical,
                f"{name} essential relators",
                note="; ".join(
                    [f"missing {m}" for m in comparison.missing[:5]] + [f"extra {u}" for u in comparison.unexpected[:5]]
                ),
            )
            check.details["matched"] = comparison.matched
            ctx.add(check)
            for note in built.presentation.notes:
                ctx.add(Check.unchecked(f"{name}: {note}", f"{name} presentation", note="base relators not available"))
        with ctx.step(f"{name} affine representation"):
            ctx.add(Check.compare(f"degree of the affine {name}", built.rep.degree, 1024, f"{name} permutation representation"))
            expected = 1024 * base_orders[built.spec.base]
            ctx.add(order_check(f"|{name}|", built.group.order(), expected, f"{name} permutation representation"))
            ctx.record(f"{name} linear side", built.rep.side)
        ctx.add(
            Check.unchecked(
                f"dim H^2({built.spec.base}, {built.spec.module}) = {built.spec.h2_dim}",
                f"{name} extension data",
            )
        )


@scenario(
    "e5",
    "The non-split extension E5 and its degree-88 representation",
    requires=("extensions/E5.ext", "extensions/E5.fp"),
)
def e5(ctx: ScenarioContext) -> None:
    presentation = ctx.get("extensions/E5.fp")
    locus = "E5 permutation representation"
    with ctx.step("coset enumeration"):
        table = enumerate_cosets(ctx, presentation, "U")
        ctx.add(index_check("|E5 : <q_2^2, (p_2q_2^2)^2>|", table, 88, locus))
    if not table.complete:
        return
    with ctx.step("order"):
        perms = coset_action(table)
        group = schreier_sims(list(perms.values()), seed=ctx.seed)
        ctx.add(order_check("|image of E5 in S_88|", group.order(), 2**18 * 3**2 * 5 * 7 * 11, locus))
    with ctx.step("z_5"):
        z = evaluate(presentation.word("p_2^4"), presentation.assignment(perms))
        ctx.add(Check.compare("order of z_5 = p_2^4", z.order(), 2, "E5 class data"))
        ctx.add(class_size_check(ctx, "|z_5^E5|", group, z, 77, "class data of E5"))
    spec = ctx.get("extensions/E5.ext")
    ctx.add(Check.unchecked(f"dim H^2(A22, V3) = {spec.h2_dim}", "E5 extension data"))


@scenario(
    "central-involutions",
    "2-central involutions of E1..E4",
    requires=extension_requires("E1", "E2", "E3", "E4"),
)
def central_involutions(ctx: ScenarioContext) -> None:
    for name, (word, size, locus) in CENTRAL_INVOLUTIONS.items():
        with ctx.step(f"{name} involution"):
            built = build_extension(ctx, name)
            z = built.element(word)
            ctx.add(Check.compare(f"order of {word} in {name}", z.order(), 2, locus))
            ctx.add(class_size_check(ctx, f"|({word})^{name}|", built.group, z, size, locus))
