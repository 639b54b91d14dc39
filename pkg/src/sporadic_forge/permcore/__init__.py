"""
Permutation groups: permutations, orbits, verified BSGS, subgroups and classes.
"""

from .bsgs import BSGSGroup, ProductReplacer, contains, order, schreier_sims
from .classes import (
    ClassOrbitResult,
    center_small,
    class_orbit,
    derived_subgroup,
    enumerate_small,
    normal_closure,
    subgroup_from_elements,
)
from .orbit import (
    Orbit,
    PermAction,
    ProjectiveAction,
    VectorAction,
    common_fixed_line,
    common_fixed_lines,
    nonzero_vectors,
    orbit,
    orbit_permutations,
    permutations_on_points,
)
from .perm import Perm, format_cycles, parse_cycles, parse_perm, read_perm

__all__ = [
    # Permutations
    "Perm",
    "parse_cycles",
    "parse_perm",
    "format_cycles",
    "read_perm",
    # Orbits and actions
    "Orbit",
    "PermAction",
    "VectorAction",
    "ProjectiveAction",
    "orbit",
    "orbit_permutations",
    "permutations_on_points",
    "nonzero_vectors",
    "common_fixed_line",
    "common_fixed_lines",
    # BSGS
    "BSGSGroup",
    "ProductReplacer",
    "schreier_sims",
    "order",
    "contains",
    # Subgroups and classes
    "ClassOrbitResult",
    "class_orbit",
    "enumerate_small",
    "center_small",
    "normal_closure",
    "derived_subgroup",
    "subgroup_from_elements",
]
