"""
Scenarios along the Co2 construction: the local subgroup D = C_E3(z), the
group K and the split extension H1 = V x| K, the presented group H, the
23-dimensional matrices over GF(13) and the final permutation group.
"""

from typing import Optional

import numpy as np
import structlog

from ...core.checks import Check
from ...extlocal import (
    affine_rep,
    conj_action_matrices,
    evaluate_word_book,
    match_orientation,
    oriented,
    verify_subgroups,
)
from ...fpres import relators_hold
from ...gflin import GModule, Mat, block_diagonal, factor_dimensions, is_irreducible, meataxe_chop, module_iso
from ...permcore import Perm, common_fixed_line, schreier_sims
from ...permcore.classes import is_central
from ..scenario import ScenarioContext, order_check, scenario
from .common import (
    build_extension,
    class_size_check,
    coset_group,
    enumerate_cosets,
    extension_requires,
    index_check,
    linear_group,
    linear_perms,
    projective_orbit,
    transcribed_relator_checks,
)

logger = structlog.get_logger(__name__)

CO2_ORDER = 2**18 * 3**6 * 5**3 * 7 * 11 * 23
CO2_ORDER_PRINTED = "2^18*3^6*7*11*13"
K_ORDER = 2**9 * 3**4 * 5 * 7
H_ORDER = 2**18 * 3**4 * 5 * 7

LOCAL_FILES = (
    "co2/D.words",
    "co2/D.sub",
    "co2/D.fp",
    "co2/Q.fp",
    "co2/W.fp",
    "co2/L.fp",
    "co2/L_on_V.mod",
    "co2/W_on_V.mod",
    "co2/A_on_V.mod",
)


@scenario(
    "co2-local",
    "D(Co2) from words in E3: Q, W, B, L and the conjugation matrices",
    requires=extension_requires("E3") + LOCAL_FILES,
)
def co2_local(ctx: ScenarioContext) -> None:
    locus = "D(Co2) structure"
    with ctx.step("E3 and the D words"):
        built = build_extension(ctx, "E3")
        elements = evaluate_word_book(ctx.get("co2/D.words"), built.elements)
    with ctx.step("subgroups"):
        groups = {"E3": built.group}
        ctx.add(
            *verify_subgroups(
                ctx.get("co2/D.sub"),
                groups,
                elements,
                tags={"L": ctx.get("co2/L.fp")},
                enum_cap=ctx.caps.enum_cap,
                seed=ctx.seed,
            ),
            locus=locus,
        )
    for path, label in (("co2/D.fp", "R(D)"), ("co2/Q.fp", "R(Q)"), ("co2/W.fp", "R(W)"), ("co2/L.fp", "R(L)")):
        with ctx.step(f"{label} on the words"):
            presentation = ctx.get(path)
            result = relators_hold(presentation, {g: elements[g] for g in presentation.generators})
            ctx.add(Check.truth(f"the D words satisfy {label}", bool(result), locus, result.failure_text))
    indices = (
        ("co2/D.fp", "W", 2**9, "|D : W| from R(D)"),
        ("co2/W.fp", "L", 2**5, "|W : L| from R(W)"),
        ("co2/Q.fp", "trivial", 2**9, "|Q| from R(Q)"),
        ("co2/L.fp", "trivial", 720, "|L| from R(L)"),
    )
    for path, subgroup, expected, claim in indices:
        with ctx.step(claim):
            ctx.add(index_check(claim, enumerate_cosets(ctx, ctx.get(path), subgroup), expected, locus))
    with ctx.step("conjugation matrices"):
        basis = [elements[f"q_{i}"] for i in range(1, 9)]
        center = [Perm.identity(built.rep.degree), elements["zq"]]
        printed = {**ctx.get("co2/L_on_V.mod").generators, **ctx.get("co2/W_on_V.mod").generators}
        computed = conj_action_matrices(basis, center, {n: elements[n] for n in printed}, 2)
        orientation = match_orientation(computed, printed)
        ctx.add(
            Check.truth(
                "conjugation on Q/Z(Q) gives Ms_1, Ms_2, Ms_3, Mu, Mr",
                orientation is not None,
                locus,
            )
        )
        ctx.record("conjugation matrix orientation", orientation)
        printed_a = ctx.get("co2/A_on_V.mod").generators
        computed_a = conj_action_matrices(basis, center, {n: elements[n] for n in printed_a}, 2)
        same = orientation is not None and all(
            oriented(computed_a[n], orientation) == printed_a[n] for n in printed_a
        )
        ctx.add(Check.truth("conjugation on Q/Z(Q) gives the Ma_i", same, locus))


@scenario(
    "co2-k",
    "K = <MW, Ms> and the split extension H1 = V x| K",
    requires=(
        "co2/K_on_V.mod",
        "co2/K.fp",
        "co2/Ms.mat",
        "co2/A_on_V.mod",
        "co2/L_on_V.mod",
        "co2/W_on_V.mod",
        "co2/H1.ext",
        "co2/H1_R2.fp",
    ),
)
def co2_k(ctx: ScenarioContext) -> None:
    locus = "K(Co2) conjugation matrices"
    ms: Mat = ctx.get("co2/Ms.mat")
    k_module = ctx.get("co2/K_on_V.mod")
    with ctx.step("Ms normalizes MA"):
        # MA = <Ma_1, ..., Ma_4, Ma_5 = Mu, Ma_6>
        a_mats = {**ctx.get("co2/A_on_V.mod").generators, "u": ctx.get("co2/W_on_V.mod")["u"]}
        perms = linear_perms({**a_mats, "Ms": ms})
        ms_perm = perms.pop("Ms")
        group_a = schreier_sims(list(perms.values()), seed=ctx.seed)
        ctx.add(Check.compare("order of Ms", ms.order(), 7, locus))
        ctx.add(
            Check.truth("Ms normalizes MA", all(group_a.contains(a.conjugate(ms_perm)) for a in perms.values()), locus)
        )
    with ctx.step("order of <MW, Ms>"):
        mats = {**ctx.get("co2/L_on_V.mod").generators, **ctx.get("co2/W_on_V.mod").generators, "Ms": ms}
        _, group = linear_group(ctx, mats)
        ctx.add(order_check("|<MW, Ms>|", group.order(), K_ORDER, locus))
    with ctx.step("R(K)"):
        presentation = ctx.get("co2/K.fp")
        ctx.add(
            Check.compare(
                "orders of m_1, ..., m_5",
                [k_module[n].order() for n in presentation.generators],
                [7, 2, 4, 5, 3],
                locus,
            )
        )
        result = relators_hold(presentation, k_module.generators)
        ctx.add(Check.truth("Mk_1, ..., Mk_5 satisfy R(K)", bool(result), locus, result.failure_text))
        _, group_k = linear_group(ctx, k_module.generators)
        ctx.add(order_check("|<Mk_1, ..., Mk_5>|", group_k.order(), K_ORDER, locus))
    with ctx.step("H1 = V x| K"):
        spec = ctx.get("co2/H1.ext")
        h1 = transcribed_relator_checks(
            ctx, spec, k_module, presentation, ctx.get("co2/H1_R2.fp"), "H(Co2) construction"
        )
        rep = affine_rep(spec, k_module, h1)
        group_h1 = schreier_sims(list(rep.generators.values()), seed=ctx.seed)
        ctx.add(order_check("|H1|", group_h1.order(), 2**8 * K_ORDER, "H(Co2) construction"))
        ctx.add(Check.unchecked(f"dim H^2(K, V) = {spec.h2_dim}", "H(Co2) construction"))


@scenario(
    "h-presentations",
    "The presented groups H(Co2) and H(Fi22)",
    requires=("co2/H.fp", "fi22/H.fp"),
)
def h_presentations(ctx: ScenarioContext) -> None:
    with ctx.step("H(Co2)"):
        presentation = ctx.get("co2/H.fp")
        table, perms, group = coset_group(ctx, presentation, "T")
        ctx.add(index_check("|H(Co2) : <h_1, h_4>|", table, 512, "H(Co2) presentation"))
        if group is not None:
            ctx.add(order_check("|H(Co2)|", group.order(), H_ORDER, "H(Co2) presentation"))
            h14 = perms["h_14"]
            ctx.add(Check.compare("order of h_14", h14.order(), 2, "H(Co2) presentation"))
            ctx.add(Check.truth("h_14 central in H(Co2)", is_central(group, h14), "H(Co2) presentation"))
            ctx.add(class_size_check(ctx, "|h_14^H|", group, h14, 1, "H(Co2) presentation"))
    ctx.add(
        Check.unchecked(
            "D(Co2) = <x, y> inside H(Co2)",
            "H(Co2) subgroups",
            note="the printed words use h_15 and h_16, beyond the 14 generators",
        )
    )
    with ctx.step("H(Fi22)"):
        table, _, group = coset_group(ctx, ctx.get("fi22/H.fp"), "T")
        ctx.add(index_check("|H(Fi22) : <h_1, ..., h_4>|", table, 1024, "H(Fi22) presentation"))
        if group is not None:
            ctx.add(order_check("|H(Fi22)|", group.order(), 2**17 * 3**4 * 5, "H(Fi22) presentation"))
    ctx.add(Check.unchecked("H is the unique central extension of H1", "H presentations"))


def _g3_start(ctx: ScenarioContext, g3: GModule) -> Optional[np.ndarray]:
    start = common_fixed_line([g3["e"], g3["x"], g3["y"]])
    if start is None:
        return None
    ctx.record("orbit start vector", [int(v) for v in start])
    return start


@scenario("co2-flagship", "Co2 as a permutation group of degree 46575", requires=("co2/G3.mod",), slow=True)
def co2_flagship(ctx: ScenarioContext) -> None:
    locus = "Co2 generator matrices"
    g3 = ctx.get("co2/G3.mod")
    with ctx.step("orbit"):
        start = _g3_start(ctx, g3)
        ctx.add(Check.truth("<e, x, y> fixes a 1-space", start is not None, locus))
        if start is None:
            return
        perms, points = projective_orbit(g3.generators, start)
        ctx.add(Check.compare("length of the orbit of the fixed 1-space", len(points), 46575, locus))
    with ctx.step("order"):
        group = schreier_sims(list(perms.values()), seed=ctx.seed)
        ctx.add(order_check("|<h, x, y, e>|", group.order(), CO2_ORDER, "Co2 order and classes"))
        ctx.flag("|Co2|", CO2_ORDER_PRINTED, "2^18*3^6*5^3*7*11*23", "printed order of Co2")
    with ctx.step("H inside"):
        h_group = schreier_sims([perms["h"], perms["x"], perms["y"]], seed=ctx.seed)
        ctx.add(order_check("|<h, x, y>|", h_group.order(), H_ORDER, locus))
    with ctx.step("central involution"):
        z = (perms["x"] * perms["y"] * perms["h"]) ** 15
        ctx.add(Check.compare("order of (xyh)^15", z.order(), 2, "Co2 order and classes"))
        ctx.add(class_size_check(ctx, "|((xyh)^15)^G|", group, z, 56925, "Co2 class table of G3"))
    ctx.add(Check.unchecked("Co2 is simple", "Co2 order and classes"))


@scenario(
    "co2-transform",
    "The transformation matrix T and the block structure of h, x, y",
    requires=("co2/G3.mod", "co2/T.mat", "co2/W21.mod", "co2/W22.mod", "co2/W2_e1.mat", "co2/N7.mod"),
)
def co2_transform(ctx: ScenarioContext) -> None:
    locus = "Co2 permutation representation"
    g3 = ctx.get("co2/G3.mod")
    with ctx.step("conjugation by T"):
        t: Mat = ctx.get("co2/T.mat")
        t_inv = t.inverse()
        w21, w22 = ctx.get("co2/W21.mod"), ctx.get("co2/W22.mod")
        assembled = {
            "x": block_diagonal(Mat(13, [[12]]), w21["x_1"], w22["x_1"]),
            "y": block_diagonal(Mat(13, [[12]]), w21["y_1"], w22["y_1"]),
            "e": block_diagonal(Mat(13, [[1]]), ctx.get("co2/W2_e1.mat")),
        }
        for name, w in assembled.items():
            ctx.add(Check.truth(f"T^-1 W({name}_1) T = {name}", t_inv * w * t == g3[name], locus))
    with ctx.step("block structure"):
        split = all(
            g3[n].block(0, 7, 7, 23).is_zero() and g3[n].block(7, 23, 0, 7).is_zero() for n in ("h", "x", "y")
        )
        ctx.add(Check.truth("h, x, y are block diagonal 7 + 16", split, "Co2 construction"))
    if not split:
        return
    hxy = g3.restrict(["h", "x", "y"])
    with ctx.step("16-dimensional constituent"):
        sixteen = hxy.block_action(7, 23).restrict(["x", "y"])
        ctx.add(
            Check.truth(
                "lower 16-block irreducible under <x, y>",
                is_irreducible(sixteen, ctx.seed, ctx.meataxe),
                "Co2 construction",
            )
        )
    with ctx.step("7-dimensional constituent"):
        seven = hxy.block_action(0, 7)
        iso = module_iso(ctx.get("co2/N7.mod"), seven, ctx.seed, ctx.meataxe)
        ctx.add(Check.truth("Nx, Ny, Nh isomorphic to the upper 7-blocks", iso is not None, "Co2 construction"))


@scenario(
    "co2-exterior",
    "Exterior powers of the 16-dimensional constituent",
    requires=("co2/G3.mod", "co2/N7.mod"),
    slow=True,
)
def co2_exterior(ctx: ScenarioContext) -> None:
    locus = "Co2 construction"
    hxy = ctx.get("co2/G3.mod").restrict(["h", "x", "y"])
    with ctx.step("fourth exterior power"):
        wedge4 = hxy.block_action(7, 23).exterior_power(4)
        chop4 = meataxe_chop(wedge4, ctx.seed, ctx.meataxe)
        ctx.add(Check.compare("factors of the fourth exterior power", chop4.dimensions, [35, 840, 945], locus))
    factor35 = next((f.module for f in chop4.factors if f.dim == 35), None)
    if factor35 is None:
        return
    with ctx.step("second exterior power of the 35"):
        chop2 = meataxe_chop(factor35.exterior_power(2), ctx.seed, ctx.meataxe)
        ctx.add(Check.compare("factors of the square of the 35", chop2.dimensions, [7, 21, 189, 378], locus))
        ctx.record("exterior square factors", factor_dimensions(chop2))
    factor7 = next((f.module for f in chop2.factors if f.dim == 7), None)
    if factor7 is None:
        return
    with ctx.step("the 7-dimensional factor"):
        n7 = ctx.get("co2/N7.mod")
        ctx.add(Check.truth("7-dimensional factor isomorphic to Nx, Ny, Nh", module_iso(factor7, n7, ctx.seed, ctx.meataxe) is not None, locus))
        upper = hxy.block_action(0, 7)
        ctx.add(
            Check.truth(
                "Nx, Ny, Nh isomorphic to the upper 7-blocks of x, y, h",
                module_iso(n7, upper, ctx.seed, ctx.meataxe) is not None,
                locus,
            )
        )


@scenario(
    "praeger-soicher",
    "Coset enumeration of the Co2 and Fi22 presentations over Q",
    requires=("co2/present.fp", "fi22/present.fp"),
    slow=True,
)
def praeger_soicher(ctx: ScenarioContext) -> None:
    for path, group, expected, locus in (
        ("co2/present.fp", "Co2", 46575, "Co2 presentation"),
        ("fi22/present.fp", "Fi22", 142155, "Fi22 presentation"),
    ):
        with ctx.step(group):
            table = enumerate_cosets(ctx, ctx.get(path), "Q")
            ctx.add(index_check(f"index of Q in the presented {group}", table, expected, locus))
        ctx.add(
            Check.unchecked(
                f"the presentation of {group} holds in the matrix group",
                locus,
                note="generator images are not given",
            )
        )
