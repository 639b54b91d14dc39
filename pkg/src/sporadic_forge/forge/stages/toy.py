"""
Small groups with known answers, exercising every layer without data files.
Also the fallback oracle for the compatible-pair search when the large
character tables are absent.
"""

import structlog

from ...chartab import FusionMap, compatible_pairs, compatible_pairs_exhaustive, parse_table, verify_character_table
from ...core.checks import Check
from ...extlocal import ExtensionSpec, affine_rep, split_presentation
from ...fpres import parse_presentation, relators_hold, todd_coxeter
from ...gflin import GModule, Mat, is_irreducible, meataxe_chop
from ...permcore import class_orbit, center_small, derived_subgroup, parse_cycles, schreier_sims
from ..scenario import ScenarioContext, order_check, scenario

logger = structlog.get_logger(__name__)

S3_PRESENTATION = """\
FP S3
gen a b
rel a^2 = b^3 = (a b)^2 = 1
"""

A5_PRESENTATION = """\
FP A5
gen a b
rel a^2 = b^3 = (a b)^5 = 1
"""

S3_TABLE = """\
CT S3 order=6 gens=a,b
class 1a size=1 pow2=1a pow3=1a
class 2a size=3 rep=a pow2=1a pow3=2a
class 3a size=2 rep=ab pow2=3a pow3=1a
chi 1 1 1 1
chi 2 1 -1 1
chi 3 2 . -1
"""

C3_TABLE = """\
CT C3 order=3
const A = z3
class 1a size=1
class 3a size=1 pow3=1a
class 3b size=1 pow3=1a
chi 1 1 1 1
chi 2 1 A A*
chi 3 1 A* A
"""


@scenario("toy-oracles", "Known answers for small groups", tier=0)
def toy_oracles(ctx: ScenarioContext) -> None:
    locus = "toy oracle"
    with ctx.step("permutation groups"):
        s4 = schreier_sims([parse_cycles("(1,2,3,4)", 4), parse_cycles("(1,2)", 4)], seed=ctx.seed)
        s5 = schreier_sims([parse_cycles("(1,2,3,4,5)", 5), parse_cycles("(1,2)", 5)], seed=ctx.seed)
        a5 = schreier_sims([parse_cycles("(1,2,3)", 5), parse_cycles("(1,2,3,4,5)", 5)], seed=ctx.seed)
        ctx.add(
            order_check("|S4|", s4.order(), 24, locus),
            order_check("|S5|", s5.order(), 120, locus),
            order_check("|A5|", a5.order(), 60, locus),
            order_check("|S4'|", derived_subgroup(s4, ctx.seed).order(), 12, locus),
            order_check("|Z(S4)|", center_small(s4, ctx.caps.enum_cap, ctx.seed).order(), 1, locus),
            Check.compare(
                "transposition class of S5", class_orbit(s5, parse_cycles("(1,2)", 5)).size, 10, locus
            ),
        )
    with ctx.step("coset enumeration"):
        s3 = parse_presentation(S3_PRESENTATION, "S3")
        a5_fp = parse_presentation(A5_PRESENTATION, "A5")
        ctx.add(
            Check.compare("|S3| by coset enumeration", todd_coxeter(s3).index, 6, locus),
            Check.compare("|A5| by coset enumeration", todd_coxeter(a5_fp).index, 60, locus),
        )
    with ctx.step("Meataxe"):
        perm_module = GModule.from_perms(2, {"a": [1, 0, 2], "b": [1, 2, 0]}, name="GF(2)^3")
        chop = meataxe_chop(perm_module, ctx.seed, ctx.meataxe)
        ctx.add(Check.compare("factors of the S3 permutation module over GF(2)", chop.dimensions, [1, 2], locus))
    with ctx.step("split extension"):
        natural = GModule(
            2, 2, {"a": Mat.from_rows(2, [[0, 1], [1, 0]]), "b": Mat.from_rows(2, [[0, 1], [1, 1]])}, name="N"
        )
        ctx.add(Check.truth("GL(2,2) irreducible on GF(2)^2", is_irreducible(natural, ctx.seed, ctx.meataxe), locus))
        ctx.add(Check.truth("GL(2,2) satisfies R(S3)", bool(relators_hold(s3, natural.generators)), locus))
        spec = ExtensionSpec("S4", base="S3", module="N", generators=["a", "b"])
        presentation = split_presentation(spec, natural, s3)
        rep = affine_rep(spec, natural, presentation)
        group = schreier_sims(list(rep.generators.values()), seed=ctx.seed)
        ctx.add(
            Check.compare("degree of GF(2)^2 x| GL(2,2)", rep.degree, 4, locus),
            order_check("|GF(2)^2 x| GL(2,2)|", group.order(), 24, locus),
            Check.compare(
                "index of the complement",
                todd_coxeter(presentation, presentation.subgroup("complement")).index,
                4,
                locus,
            ),
        )
    with ctx.step("character tables"):
        s3_table = parse_table(S3_TABLE, "S3")
        c3_table = parse_table(C3_TABLE, "C3")
        ctx.add(*verify_character_table(s3_table), *verify_character_table(c3_table))
        fusion = FusionMap("C3", "S3", {"1a": ("1a",), "3a": ("3a",), "3b": ("3a",)})
        search = compatible_pairs(s3_table, s3_table, c3_table, fusion, fusion, 4)
        found = sorted((p.h_side.labels, p.e_side.labels) for p in search.pairs)
        oracle = compatible_pairs_exhaustive(s3_table, s3_table, c3_table, [0, 2, 2], [0, 2, 2], 4)
        ctx.add(Check.compare("compatible pairs against exhaustive search", found, oracle, locus))
