"""V2000 molfile and SDF reading/writing."""

import pytest

from molrecon.chemgraph import (
    BondKind,
    MolGraph,
    MolfileError,
    is_isomorphic,
    parse_molfile,
    parse_sdf,
    parse_smiles,
    write_molfile,
    write_sdf,
)

ETHANOL = """
  molrecon      2D

  3  2  0  0  0  0  0  0  0  0999 V2000
    0.0000    0.0000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0
    1.0000    0.0000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0
    1.5000    0.8660    0.0000 O   0  0  0  0  0  0  0  0  0  0  0  0
  1  2  1  0
  2  3  1  0
M  END
"""


def test_parse_basic_molfile():
    g = parse_molfile(ETHANOL)
    assert [a.element for a in g.atoms] == ["C", "C", "O"]
    assert len(g.bonds) == 2
    assert g.atoms[2].position == pytest.approx((1.5, 0.866))
    assert is_isomorphic(g, parse_smiles("CCO"))


@pytest.mark.parametrize(
    "smiles",
    ["C", "CCO", "c1ccccc1", "CC(=O)[O-]", "[NH4+]", "C#N", "CC(C)(C)C", "ClC(Cl)Br"],
)
def test_write_parse_round_trip(smiles):
    g = parse_smiles(smiles)
    again = parse_molfile(write_molfile(g))
    assert is_isomorphic(g, again)


def test_round_trip_preserves_charge_via_chg_property():
    g = parse_smiles("[O-]S(=O)(=O)[O-]")
    text = write_molfile(g)
    assert "M  CHG" in text
    again = parse_molfile(text)
    assert sorted(a.charge for a in again.atoms) == [-1, -1, 0, 0, 0]


def test_round_trip_preserves_stereo_bond_kinds():
    g = MolGraph.build(
        ["C", "C", "O", "N"],
        [(0, 1, "Wedge"), (1, 2, "Dash"), (1, 3, "Wavy")],
    )
    again = parse_molfile(write_molfile(g))
    kinds = sorted(b.kind.value for b in again.bonds)
    assert kinds == ["Dash", "Wavy", "Wedge"]
    # wedge begin atom survives the trip
    wedge = next(b for b in again.bonds if b.kind is BondKind.WEDGE_UP)
    assert wedge.a == 0


def test_round_trip_preserves_positions():
    g = parse_smiles("CCO").with_positions([(0.0, 0.0), (1.2, 0.0), (1.8, 1.04)])
    again = parse_molfile(write_molfile(g))
    for orig, back in zip(g.positions(), again.positions()):
        assert back == pytest.approx(orig, abs=1e-4)


def test_round_trip_preserves_explicit_h():
    g = MolGraph.build([("N", 0, 2), "C"], [(0, 1, 1)])
    again = parse_molfile(write_molfile(g))
    assert again.atoms[0].explicit_h == 2
    assert again.atoms[1].explicit_h is None


def test_write_is_deterministic():
    g = parse_smiles("OC(=O)c1ccccc1")
    assert write_molfile(g) == write_molfile(g)


def test_legacy_charge_codes_read():
    text = ETHANOL.replace(
        "    1.5000    0.8660    0.0000 O   0  0  0",
        "    1.5000    0.8660    0.0000 O   0  5  0",
    )
    g = parse_molfile(text)
    assert g.atoms[2].charge == -1


def test_chg_property_overrides_legacy_field():
    text = ETHANOL.replace("M  END", "M  CHG  1   3   1\nM  END")
    g = parse_molfile(text)
    assert g.atoms[2].charge == 1


def test_error_carries_line_number():
    bad = ETHANOL.replace("  1  2  1  0", "  1  9  1  0")
    with pytest.raises(MolfileError) as exc:
        parse_molfile(bad)
    assert "line" in str(exc.value)
    assert exc.value.line_no == 8


def test_truncated_file_rejected():
    lines = ETHANOL.strip("\n").splitlines()
    with pytest.raises(MolfileError):
        parse_molfile("\n".join(lines[:5]))


def test_garbage_counts_line_rejected():
    bad = ETHANOL.replace("  3  2  0", "  x  2  0")
    with pytest.raises(MolfileError):
        parse_molfile(bad)


def test_sdf_round_trip_multiple_records():
    mols = [("mol-0", parse_smiles("CCO")), ("mol-1", parse_smiles("c1ccccc1"))]
    text = write_sdf(mols)
    back = parse_sdf(text)
    assert [name for name, _ in back] == ["mol-0", "mol-1"]
    for (_, orig), (_, parsed) in zip(mols, back):
        assert is_isomorphic(orig, parsed)


def test_sdf_single_record_and_empty():
    assert parse_sdf("") == []
    text = write_sdf([("only", parse_smiles("C"))])
    back = parse_sdf(text)
    assert len(back) == 1 and back[0][0] == "only"
