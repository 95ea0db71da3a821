"""Text label interpretation: atom labels, super-group abbreviations, expansion."""

from .expand import DegreeMismatchError, expand_superatom
from .fragments import (
    FragmentTable,
    FragmentTableError,
    builtin_fragment_table,
    load_fragment_table,
    split_fragment,
)
from .grammar import MAX_LABEL_LEN, parse_label
from .interpretation import AtomLabel, SuperGroup, TextInterpretation, Unparsed

__all__ = [
    "AtomLabel",
    "DegreeMismatchError",
    "FragmentTable",
    "FragmentTableError",
    "MAX_LABEL_LEN",
    "SuperGroup",
    "TextInterpretation",
    "Unparsed",
    "builtin_fragment_table",
    "expand_superatom",
    "load_fragment_table",
    "parse_label",
    "split_fragment",
]
