"""
Character tables: exact cyclotomics, table verification, fusions and compatible pairs.
"""

from .compatible import (
    CharacterSum,
    CompatiblePair,
    CompatibleSearch,
    compatible_pairs,
    compatible_pairs_exhaustive,
    decompose,
    multiplicity_free_sums,
    restrict,
    table_coordinates,
)
from .cyclotomic import (
    Cyclotomic,
    CyclotomicField,
    cyclotomic_field,
    parse_cyclotomic,
    sqrt_cyclotomic,
)
from .fusion import (
    FusionMap,
    check_fusion,
    cycle_fingerprint,
    fingerprint_fusion,
    iterate_fusions,
    parse_fusion,
    read_fusion,
)
from .table import (
    CharacterTable,
    ClassRecord,
    class_representatives,
    parse_table,
    read_table,
    verify_character_table,
    verify_class_data,
)

__all__ = [
    # Cyclotomic numbers
    "Cyclotomic",
    "CyclotomicField",
    "cyclotomic_field",
    "parse_cyclotomic",
    "sqrt_cyclotomic",
    # Tables
    "CharacterTable",
    "ClassRecord",
    "parse_table",
    "read_table",
    "verify_character_table",
    "verify_class_data",
    "class_representatives",
    # Fusion
    "FusionMap",
    "parse_fusion",
    "read_fusion",
    "fingerprint_fusion",
    "check_fusion",
    "cycle_fingerprint",
    "iterate_fusions",
    # Compatible pairs
    "CharacterSum",
    "CompatiblePair",
    "CompatibleSearch",
    "compatible_pairs",
    "compatible_pairs_exhaustive",
    "multiplicity_free_sums",
    "restrict",
    "decompose",
    "table_coordinates",
]
