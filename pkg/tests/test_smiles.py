"""SMILES subset parser/writer and kekulization."""

import pytest

from molrecon.chemgraph import (
    BondKind,
    MolGraph,
    SmilesError,
    is_isomorphic,
    parse_smiles,
    write_smiles,
)


def _orders(g):
    return sorted(b.order for b in g.bonds)


def test_parse_linear_chain():
    g = parse_smiles("CCO")
    assert [a.element for a in g.atoms] == ["C", "C", "O"]
    assert _orders(g) == [1, 1]


def test_parse_bond_symbols():
    assert _orders(parse_smiles("C=C")) == [2]
    assert _orders(parse_smiles("C#C")) == [3]
    assert _orders(parse_smiles("C-C")) == [1]


def test_parse_branches():
    g = parse_smiles("CC(C)(C)C")
    center = [i for i in range(len(g)) if g.degree(i) == 4]
    assert len(center) == 1


def test_parse_ring_closure():
    g = parse_smiles("C1CCCCC1")
    assert len(g.bonds) == 6
    assert all(g.degree(i) == 2 for i in range(6))


def test_parse_percent_ring_closure():
    assert is_isomorphic(parse_smiles("C%12CCCCC%12"), parse_smiles("C1CCCCC1"))


def test_parse_two_letter_elements():
    g = parse_smiles("ClC(Br)I")
    assert sorted(a.element for a in g.atoms) == ["Br", "C", "Cl", "I"]
    g2 = parse_smiles("[Si](C)(C)(C)C")
    assert g2.atoms[0].element == "Si"


def test_parse_brackets_charge_and_h():
    a = parse_smiles("[NH4+]").atoms[0]
    assert (a.element, a.charge, a.explicit_h) == ("N", 1, 4)
    b = parse_smiles("[O-]").atoms[0]
    assert (b.element, b.charge) == ("O", -1)
    c = parse_smiles("[O-2]").atoms[0]
    assert c.charge == -2
    d = parse_smiles("[N++]").atoms[0]
    assert d.charge == 2
    e = parse_smiles("[CH]").atoms[0]
    assert e.explicit_h == 1


def test_parse_wildcard_atom():
    g = parse_smiles("*CC")
    assert g.atoms[0].element == "*"
    assert write_smiles(g).count("*") == 1


def test_parse_fragments_with_dot():
    g = parse_smiles("C.C")
    assert len(g.connected_components()) == 2
    assert len(g.bonds) == 0


def test_kekulized_benzene_matches_explicit_form():
    assert is_isomorphic(parse_smiles("c1ccccc1"), parse_smiles("C1=CC=CC=C1"))
    assert _orders(parse_smiles("c1ccccc1")) == [1, 1, 1, 2, 2, 2]


def test_kekulized_pyridine():
    g = parse_smiles("c1ccncc1")
    assert _orders(g) == [1, 1, 1, 2, 2, 2]
    n = next(i for i, a in enumerate(g.atoms) if a.element == "N")
    assert g.bond_order_sum(n) == 3


def test_kekulized_fused_rings():
    naphthalene = parse_smiles("c1ccc2ccccc2c1")
    assert len(naphthalene.bonds) == 11
    assert _orders(naphthalene) == [1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2]


def test_substituted_aromatic_carbon_keeps_valence():
    g = parse_smiles("Cc1ccccc1")
    for i, atom in enumerate(g.atoms):
        assert g.bond_order_sum(i) <= 4


def test_five_ring_aromatic_rejected():
    with pytest.raises(SmilesError):
        parse_smiles("c1cc[nH]c1")


def test_lone_aromatic_atom_rejected():
    with pytest.raises(SmilesError):
        parse_smiles("c")
    with pytest.raises(SmilesError):
        parse_smiles("cC")


@pytest.mark.parametrize(
    "bad, fragment",
    [
        ("C1CC", "unclosed ring"),
        ("C(C", "unclosed branch"),
        ("C)C", "unmatched ')'"),
        ("C==C", "two bond symbols"),
        ("C=", "dangling bond"),
        ("[C@H](N)C", "chirality"),
        ("[13C]", "isotope"),
        ("Xe", "brackets"),
        ("C$C", "unsupported token"),
        ("[C&]", "expected ']'"),
    ],
)
def test_parse_errors_carry_offset_and_reason(bad, fragment):
    with pytest.raises(SmilesError) as exc:
        parse_smiles(bad)
    assert fragment in str(exc.value)
    assert exc.value.offset >= 0


def test_ring_closure_bond_order_mismatch_rejected():
    with pytest.raises(SmilesError):
        parse_smiles("C=1CCCCC-1")


def test_ring_closure_duplicate_bond_rejected():
    with pytest.raises(SmilesError):
        parse_smiles("C12CC12")  # same pair closed twice


@pytest.mark.parametrize(
    "smiles",
    [
        "C",
        "CCO",
        "CC(C)C",
        "c1ccccc1",
        "Cc1ccc(N)cc1",
        "[NH4+]",
        "CC(=O)[O-]",
        "C1CC2CCC1CC2",
        "N#Cc1ccccc1",
        "C.CO",
        "*c1ccccc1",
        "[Si](C)(C)(C)C",
    ],
)
def test_write_parse_round_trip_isomorphic(smiles):
    g = parse_smiles(smiles)
    text = write_smiles(g)
    assert is_isomorphic(g, parse_smiles(text))
    # writing is stable: a second trip emits the same string
    assert write_smiles(parse_smiles(text)) == text


def test_write_uses_brackets_only_when_needed():
    assert write_smiles(parse_smiles("CCO")) == "CCO"
    assert "[" in write_smiles(parse_smiles("[NH4+]"))
    assert "[Si" in write_smiles(parse_smiles("[SiH4]"))


def test_write_empty_graph():
    assert write_smiles(MolGraph()) == ""


def test_write_stereo_bonds_as_single():
    g = MolGraph.build(["C", "C"], [(0, 1, BondKind.WEDGE_UP)])
    assert write_smiles(g) == "CC"
