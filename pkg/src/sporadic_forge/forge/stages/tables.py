"""
Character tables of H, D and E for both constructions, their fusions and
the search for compatible pairs.
"""

from typing import Dict, Optional, Tuple

import structlog

from ...chartab import (
    CharacterTable,
    FusionMap,
    check_fusion,
    compatible_pairs,
    fingerprint_fusion,
    verify_character_table,
)
from ...core.checks import Check
from ..scenario import ScenarioContext, scenario

logger = structlog.get_logger(__name__)

Pair = Tuple[Tuple[str, ...], Tuple[str, ...]]

# degree bound, the one compatible pair, its restriction to D when printed
COMPATIBLE = {
    "Co2": (23, (("2", "4"), ("2", "6")), {"2": 1, "8": 1, "26": 1}, "Co2 compatible pair"),
    "Fi22": (78, (("4", "17", "20"), ("1", "6")), None, "Fi22 compatible pair"),
}

TABLE_FILES = tuple(f"tables/{g}_{c}.ct" for c in ("Co2", "Fi22") for g in ("H", "D", "E"))


def _fusion(ctx: ScenarioContext, source: CharacterTable, target: CharacterTable, override: str) -> FusionMap:
    """A transcribed fusion file wins over the fingerprint fusion."""
    if ctx.dataset.has(override):
        ctx.record(f"{source.group} -> {target.group} fusion", override)
        return ctx.get(override)
    return fingerprint_fusion(source, target)


def _pairs_check(
    ctx: ScenarioContext,
    construction: str,
    bound: int,
    expected: Pair,
    restriction: Optional[Dict[str, int]],
    locus: str,
) -> None:
    h = ctx.get(f"tables/H_{construction}.ct")
    d = ctx.get(f"tables/D_{construction}.ct")
    e = ctx.get(f"tables/E_{construction}.ct")
    with ctx.step(f"{construction} fusions"):
        fusion_h = _fusion(ctx, d, h, f"tables/D_{construction}_H.fuse")
        fusion_e = _fusion(ctx, d, e, f"tables/D_{construction}_E.fuse")
        ctx.add(*check_fusion(fusion_h, d, h), *check_fusion(fusion_e, d, e))
        ctx.record(
            f"{construction} ambiguous fusion classes",
            {"D->H": sorted(fusion_h.ambiguous()), "D->E": sorted(fusion_e.ambiguous())},
        )
    with ctx.step(f"{construction} compatible pairs"):
        search = compatible_pairs(h, e, d, fusion_h, fusion_e, bound)
        found = [(p.h_side.labels, p.e_side.labels) for p in search.pairs]
        claim = f"compatible pairs of {construction} up to degree {bound}"
        if search.settled:
            ctx.add(Check.compare(claim, found, [expected], locus))
            ctx.add(Check.compare(f"smallest degree of a compatible pair of {construction}", search.minimal_degree, bound, locus))
            if restriction is not None and search.pairs:
                ctx.add(Check.compare("restriction of the pair to D", search.pairs[0].restriction, restriction, locus))
        else:
            ctx.add(Check.truth(f"({' + '.join(expected[0])}, {' + '.join(expected[1])}) is a possible pair", expected in found, locus))
            ctx.add(
                Check.unchecked(
                    claim + " is exactly one",
                    locus,
                    note=f"{search.ambiguous_classes} classes fuse ambiguously, {len(found)} possible pairs remain",
                )
            )
        ctx.record(f"{construction} pairs", [p.to_dict() for p in search.pairs])


@scenario(
    "character-tables",
    "Character tables, fusions and compatible pairs",
    tier=3,
    requires=TABLE_FILES,
)
def character_tables(ctx: ScenarioContext) -> None:
    for path in TABLE_FILES:
        with ctx.step(path):
            ctx.add(*verify_character_table(ctx.get(path)), locus=path)
    for construction, (bound, expected, restriction, locus) in COMPATIBLE.items():
        _pairs_check(ctx, construction, bound, expected, restriction, locus)
