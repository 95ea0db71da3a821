"""Valence model, implicit hydrogens and molecular weight."""

from __future__ import annotations

import warnings

from .model import Atom, MolGraph

# Conventional default valences for the supported element set.
DEFAULT_VALENCE = {
    "C": 4,
    "N": 3,
    "O": 2,
    "S": 2,
    "P": 3,
    "B": 3,
    "F": 1,
    "Cl": 1,
    "Br": 1,
    "I": 1,
    "Si": 4,
    "H": 1,
}

# Cations only gain a bond for the N/O families; anions always lose |q|.
_CATION_GAIN = frozenset({"N", "O", "P", "S"})

# Standard atomic weights, rounded to 3 decimals.
ATOMIC_MASS = {
    "H": 1.008,
    "B": 10.811,
    "C": 12.011,
    "N": 14.007,
    "O": 15.999,
    "F": 18.998,
    "Si": 28.086,
    "P": 30.974,
    "S": 32.06,
    "Cl": 35.45,
    "Br": 79.904,
    "I": 126.904,
}


class UnknownElementWarning(UserWarning):
    """An element outside the mass table contributed zero mass."""


def default_valence(element: str, charge: int = 0) -> int:
    """Charge-adjusted default valence; 0 for unknown elements."""
    base = DEFAULT_VALENCE.get(element)
    if base is None:
        return 0
    if charge > 0 and element in _CATION_GAIN:
        base += charge
    elif charge < 0:
        base += charge
    return max(0, base)


def implicit_hydrogen_count(graph: MolGraph, atom_index: int) -> int:
    """Hydrogens implied by the valence model, or the atom's explicit count."""
    atom = graph.atoms[atom_index]
    if atom.explicit_h is not None:
        return atom.explicit_h
    return max(0, default_valence(atom.element, atom.charge) - graph.bond_order_sum(atom_index))


def atom_mass(atom: Atom) -> float:
    mass = ATOMIC_MASS.get(atom.element)
    if mass is None:
        warnings.warn(
            f"unknown element {atom.element!r} contributes mass 0", UnknownElementWarning
        )
        return 0.0
    return mass


def molecular_weight(graph: MolGraph) -> float:
    """Mass in Daltons of explicit atoms plus implicit hydrogens."""
    total = 0.0
    h_mass = ATOMIC_MASS["H"]
    for i, atom in enumerate(graph.atoms):
        total += atom_mass(atom)
        total += h_mass * implicit_hydrogen_count(graph, i)
    return total
