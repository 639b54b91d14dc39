"""
Split extensions, affine representations and word-given local subgroups.
"""

from .conjugation import (
    QuotientCoordinates,
    conj_action_matrices,
    conj_action_matrix,
    match_orientation,
    oriented,
    quotient_coordinates,
)
from .extension import (
    AffineRep,
    action_from_relators,
    ExtensionSpec,
    RelatorComparison,
    affine_rep,
    compare_relators,
    essential_part,
    essential_relators,
    normalize_module_exponents,
    parse_extension_spec,
    presented_rep,
    read_extension_spec,
    split_presentation,
    vector_names,
)
from .subgroups import (
    SubgroupSpec,
    WordBook,
    evaluate_word_book,
    evaluate_words,
    parse_subgroup_specs,
    parse_word_book,
    read_subgroup_specs,
    read_word_book,
    verify_subgroup,
    verify_subgroups,
)

__all__ = [
    # Extensions
    "ExtensionSpec",
    "parse_extension_spec",
    "read_extension_spec",
    "vector_names",
    "split_presentation",
    "action_from_relators",
    "essential_relators",
    "essential_part",
    "normalize_module_exponents",
    "RelatorComparison",
    "compare_relators",
    "AffineRep",
    "affine_rep",
    "presented_rep",
    # Named words and subgroups
    "WordBook",
    "parse_word_book",
    "read_word_book",
    "evaluate_word_book",
    "evaluate_words",
    "SubgroupSpec",
    "parse_subgroup_specs",
    "read_subgroup_specs",
    "verify_subgroup",
    "verify_subgroups",
    # Conjugation action
    "QuotientCoordinates",
    "quotient_coordinates",
    "conj_action_matrix",
    "conj_action_matrices",
    "match_orientation",
    "oriented",
]
