"""
Exact linear algebra over prime fields and G-module machinery.
"""

from .field import FieldSpec, field
from .io import format_mat, format_mod, parse_mat, parse_mod, read_mat, read_mod
from .matrix import Mat, block_diagonal, dual_gen, mat_inv, mat_mul, vectors_times
from .meataxe import (
    ChopResult,
    CompositionFactor,
    MeataxeSettings,
    hom_space,
    is_irreducible,
    meataxe_chop,
    module_iso,
    settings_from_caps,
    factor_dimensions,
    split_or_certify,
)
from .module import GModule, spin
from .polyfactor import charpoly, irreducible_factors

__all__ = [
    # Fields and matrices
    "FieldSpec",
    "field",
    "Mat",
    "mat_mul",
    "mat_inv",
    "dual_gen",
    "block_diagonal",
    "vectors_times",
    # Modules
    "GModule",
    "spin",
    "charpoly",
    "irreducible_factors",
    # Meataxe
    "MeataxeSettings",
    "ChopResult",
    "CompositionFactor",
    "split_or_certify",
    "is_irreducible",
    "meataxe_chop",
    "module_iso",
    "hom_space",
    "settings_from_caps",
    "factor_dimensions",
    # Files
    "parse_mat",
    "parse_mod",
    "format_mat",
    "format_mod",
    "read_mat",
    "read_mod",
]
