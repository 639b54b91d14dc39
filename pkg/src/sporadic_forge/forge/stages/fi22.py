"""
Scenarios along the Fi22 construction: D(Fi22) through the coset action of
its presentation, the split extension H1 = V x| K, D inside H(Fi22) and the
78-dimensional matrices over GF(13).
"""

from typing import Dict

import numpy as np
import structlog

from ...core.checks import Check
from ...extlocal import (
    affine_rep,
    evaluate_word_book,
    verify_subgroups,
)
from ...fpres import relators_hold
from ...gflin import Mat, block_diagonal
from ...permcore import common_fixed_line, schreier_sims
from ..scenario import ScenarioContext, order_check, scenario
from .common import (
    class_size_check,
    coset_group,
    enumerate_cosets,
    index_check,
    linear_group,
    projective_orbit,
    transcribed_relator_checks,
)

logger = structlog.get_logger(__name__)

FI22_ORDER = 2**17 * 3**9 * 5**2 * 7 * 11 * 13
D_ORDER = 2**17 * 3 * 5
H_ORDER = 2**17 * 3**4 * 5


@scenario(
    "fi22-local",
    "D(Fi22) and its embedding in H(Fi22), K and H1 = V x| K",
    requires=(
        "fi22/D.fp",
        "fi22/D.words",
        "fi22/D.sub",
        "fi22/S5.fp",
        "fi22/H.fp",
        "fi22/H.words",
        "fi22/H.sub",
        "fi22/K.fp",
        "fi22/K_on_V.mod",
        "fi22/H1.ext",
        "fi22/H1_R2.fp",
    ),
)
def fi22_local(ctx: ScenarioContext) -> None:
    locus = "D(Fi22) structure"
    with ctx.step("D from R(D)"):
        table, perms, group = coset_group(ctx, ctx.get("fi22/D.fp"), "U")
        ctx.add(index_check("|D : <y_1, y_4, y_10>|", table, 1024, locus))
    if group is not None:
        with ctx.step("D order"):
            ctx.add(order_check("|D(Fi22)|", group.order(), D_ORDER, locus))
        with ctx.step("subgroups of D"):
            elements = evaluate_word_book(ctx.get("fi22/D.words"), perms)
            ctx.add(
                *verify_subgroups(
                    ctx.get("fi22/D.sub"),
                    {"D": group},
                    elements,
                    tags={"S5": ctx.get("fi22/S5.fp")},
                    enum_cap=ctx.caps.enum_cap,
                    seed=ctx.seed,
                ),
                locus=locus,
            )
    with ctx.step("H from R(H)"):
        table, h_perms, h_group = coset_group(ctx, ctx.get("fi22/H.fp"), "T")
        ctx.add(index_check("|H(Fi22) : <h_1, ..., h_4>|", table, 1024, "H(Fi22) presentation"))
    if h_group is not None:
        with ctx.step("D inside H"):
            h_elements = evaluate_word_book(ctx.get("fi22/H.words"), h_perms)
            ctx.add(Check.compare("order of x", h_elements["x"].order(), 2, "H(Fi22) subgroups"))
            ctx.add(Check.compare("order of y", h_elements["y"].order(), 6, "H(Fi22) subgroups"))
            ctx.add(
                *verify_subgroups(
                    ctx.get("fi22/H.sub"), {"H": h_group}, h_elements, enum_cap=ctx.caps.enum_cap, seed=ctx.seed
                ),
                locus="H(Fi22) subgroups",
            )
    _k_and_h1(ctx)


def _k_and_h1(ctx: ScenarioContext) -> None:
    locus = "H(Fi22) construction"
    k_module = ctx.get("fi22/K_on_V.mod")
    presentation = ctx.get("fi22/K.fp")
    with ctx.step("R(K)"):
        result = relators_hold(presentation, k_module.generators)
        ctx.add(Check.truth("Mk_1, Mk_2, Mk_3, Mx satisfy R(K)", bool(result), locus, result.failure_text))
        _, group_k = linear_group(ctx, k_module.generators)
        ctx.record("|K(Fi22)|", group_k.order())
        table = enumerate_cosets(ctx, presentation, "trivial")
        ctx.add(index_check("|K| from R(K) against the matrix group", table, group_k.order(), locus))
    with ctx.step("H1 = V x| K"):
        spec = ctx.get("fi22/H1.ext")
        h1 = transcribed_relator_checks(ctx, spec, k_module, presentation, ctx.get("fi22/H1_R2.fp"), locus)
        rep = affine_rep(spec, k_module, h1)
        group_h1 = schreier_sims(list(rep.generators.values()), seed=ctx.seed)
        ctx.add(order_check("|H1|", group_h1.order(), 2**8 * group_k.order(), locus))
        ctx.add(Check.unchecked(f"dim H^2(K, V) = {spec.h2_dim}", locus))


BLOCKS = ("H1", "H2", "X1", "X2", "Y1", "Y2", "E1", "E2", "E3", "E4")
FLAGSHIP_FILES = tuple(f"fi22/{name}.mat" for name in BLOCKS)


def fi22_generators(ctx: ScenarioContext) -> Dict[str, Mat]:
    """The 78-dimensional generators assembled from their printed blocks."""
    block = {name: ctx.get(f"fi22/{name}.mat") for name in BLOCKS}
    e = np.block(
        [[block["E1"].entries, block["E2"].entries], [block["E3"].entries, block["E4"].entries]]
    )
    return {
        "h": block_diagonal(block["H1"], block["H2"]),
        "x": block_diagonal(block["X1"], block["X2"]),
        "y": block_diagonal(block["Y1"], block["Y2"]),
        "e": Mat(13, e),
    }


@scenario("fi22-flagship", "Fi22 as a permutation group of degree 142155", requires=FLAGSHIP_FILES, slow=True)
def fi22_flagship(ctx: ScenarioContext) -> None:
    locus = "Fi22 generator matrices"
    with ctx.step("assemble"):
        gens = fi22_generators(ctx)
        ctx.add(
            Check.truth("all generators invertible", all(g.is_invertible() for g in gens.values()), "Fi22 generator blocks")
        )
    with ctx.step("orbit"):
        start = common_fixed_line([gens["e"], gens["x"], gens["y"]])
        ctx.add(Check.truth("<e, x, y> fixes a 1-space", start is not None, locus))
        if start is None:
            return
        ctx.record("orbit start vector", [int(v) for v in start])
        perms, points = projective_orbit(gens, start)
        ctx.add(Check.compare("length of the orbit of the fixed 1-space", len(points), 142155, locus))
    with ctx.step("order"):
        group = schreier_sims(list(perms.values()), seed=ctx.seed)
        ctx.add(order_check("|<h, x, y, e>|", group.order(), FI22_ORDER, "Fi22 order and classes"))
    with ctx.step("H inside"):
        h_group = schreier_sims([perms["h"], perms["x"], perms["y"]], seed=ctx.seed)
        ctx.add(order_check("|<h, x, y>|", h_group.order(), H_ORDER, locus))
    with ctx.step("central involution"):
        z = (perms["x"] * perms["y"] * perms["x"] * perms["h"]) ** 10
        ctx.add(Check.compare("order of (xyxh)^10", z.order(), 2, "Fi22 order and classes"))
        ctx.add(class_size_check(ctx, "|((xyxh)^10)^G|", group, z, 3510, "Fi22 class table of G2"))
    ctx.add(Check.unchecked("Fi22 is simple", "Fi22 order and classes"))
    ctx.add(
        Check.unchecked(
            "T^-1 W(g) T equals the printed generators",
            "Fi22 permutation representation",
            note="the transformation blocks are not fully legible",
        )
    )
