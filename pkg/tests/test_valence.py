"""Valence model, implicit hydrogen counts, and molecular weight.

Expected weights were computed by hand from the element mass table
(sum of atomic masses), not read back from the implementation.
"""

import warnings

import pytest

from molrecon.chemgraph import (
    MolGraph,
    UnknownElementWarning,
    default_valence,
    implicit_hydrogen_count,
    molecular_weight,
    parse_smiles,
)


def test_default_valences_neutral():
    assert default_valence("C", 0) == 4
    assert default_valence("N", 0) == 3
    assert default_valence("O", 0) == 2
    assert default_valence("S", 0) == 2
    assert default_valence("P", 0) == 3
    assert default_valence("B", 0) == 3
    for hal in ("F", "Cl", "Br", "I"):
        assert default_valence(hal, 0) == 1
    assert default_valence("Si", 0) == 4
    assert default_valence("H", 0) == 1


def test_cations_gain_valence_only_for_n_and_o_family():
    assert default_valence("N", 1) == 4  # ammonium
    assert default_valence("O", 1) == 3  # oxonium
    assert default_valence("S", 1) == 3
    assert default_valence("P", 1) == 4
    # cations outside that family keep their default capacity
    assert default_valence("C", 1) == 4
    assert default_valence("B", 2) == 3


def test_anions_lose_valence_and_clamp_at_zero():
    assert default_valence("O", -1) == 1
    assert default_valence("C", -1) == 3
    assert default_valence("F", -1) == 0
    assert default_valence("F", -2) == 0  # never negative


def test_implicit_h_simple_molecules():
    methane = MolGraph.build(["C"], [])
    assert implicit_hydrogen_count(methane, 0) == 4
    ethene = MolGraph.build(["C", "C"], [(0, 1, 2)])
    assert implicit_hydrogen_count(ethene, 0) == 2
    hcn = MolGraph.build(["C", "N"], [(0, 1, 3)])
    assert implicit_hydrogen_count(hcn, 0) == 1
    assert implicit_hydrogen_count(hcn, 1) == 0


def test_explicit_h_overrides_computed_count():
    g = MolGraph.build([("N", 0, 2)], [])
    assert implicit_hydrogen_count(g, 0) == 2


def test_overbonded_atom_clamps_to_zero():
    g = MolGraph.build(["C", "O", "O", "O"], [(0, 1, 2), (0, 2, 2), (0, 3, 1)])
    assert implicit_hydrogen_count(g, 0) == 0


def test_molecular_weight_methane():
    assert molecular_weight(parse_smiles("C")) == pytest.approx(16.043, abs=0.01)


def test_molecular_weight_benzene():
    assert molecular_weight(parse_smiles("c1ccccc1")) == pytest.approx(78.114, abs=0.01)


def test_molecular_weight_counts_explicit_h():
    # ammonium: N + 4 H = 14.007 + 4*1.008
    assert molecular_weight(parse_smiles("[NH4+]")) == pytest.approx(18.039, abs=0.01)


def test_unknown_element_warns_and_counts_zero_mass():
    g = MolGraph.build([("Xe", 0, 0)], [])
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        w = molecular_weight(g)
    assert w == pytest.approx(0.0)
    assert any(issubclass(c.category, UnknownElementWarning) for c in caught)


def test_wildcard_atom_has_zero_valence():
    star = MolGraph.build(["*"], [])
    assert implicit_hydrogen_count(star, 0) == 0
