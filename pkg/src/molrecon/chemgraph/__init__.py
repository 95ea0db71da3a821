"""Molecular graph data model and I/O: the common currency of every other module."""

from .model import Atom, Bond, BondKind, GraphError, MolGraph, KNOWN_ELEMENTS
from .valence import (
    ATOMIC_MASS,
    UnknownElementWarning,
    default_valence,
    implicit_hydrogen_count,
    molecular_weight,
)
from .canon import canonical_labels, canonical_signature, is_isomorphic
from .molfile import MolfileError, parse_molfile, parse_sdf, write_molfile, write_sdf
from .smiles import SmilesError, parse_smiles, write_smiles

__all__ = [
    "Atom",
    "Bond",
    "BondKind",
    "GraphError",
    "MolGraph",
    "KNOWN_ELEMENTS",
    "ATOMIC_MASS",
    "UnknownElementWarning",
    "default_valence",
    "implicit_hydrogen_count",
    "molecular_weight",
    "canonical_labels",
    "canonical_signature",
    "is_isomorphic",
    "MolfileError",
    "parse_molfile",
    "parse_sdf",
    "write_molfile",
    "write_sdf",
    "SmilesError",
    "parse_smiles",
    "write_smiles",
]
