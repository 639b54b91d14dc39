"""
Finitely presented groups: words, presentations and coset enumeration.
"""

from .presentation import (
    Presentation,
    RelatorCheck,
    chain_relators,
    format_presentation,
    normalize_generator_list,
    parse_presentation,
    read_presentation,
    relators_hold,
    split_top_level,
)
from .todd_coxeter import DEFAULT_MAX_COSETS, CosetTable, coset_action, index, todd_coxeter, verify_table
from .words import Alphabet, Word, evaluate, format_word, parse_word

__all__ = [
    # Words
    "Word",
    "Alphabet",
    "parse_word",
    "format_word",
    "evaluate",
    # Presentations
    "Presentation",
    "RelatorCheck",
    "relators_hold",
    "chain_relators",
    "normalize_generator_list",
    "split_top_level",
    "parse_presentation",
    "format_presentation",
    "read_presentation",
    # Coset enumeration
    "CosetTable",
    "DEFAULT_MAX_COSETS",
    "todd_coxeter",
    "coset_action",
    "verify_table",
    "index",
]
