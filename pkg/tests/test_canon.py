"""Canonical labeling and isomorphism checks.

The key property: relabeling atoms never changes the canonical signature,
and two graphs compare equal exactly when some relabeling maps one onto
the other.  Small cases are cross-checked against a permutation search.
"""

import random

import pytest

from molrecon.chemgraph import (
    MolGraph,
    canonical_labels,
    canonical_signature,
    is_isomorphic,
    parse_smiles,
    write_smiles,
)
from molrecon.chemgraph.canon import brute_force_isomorphic

MOLECULES = [
    "C",
    "CC",
    "CCO",
    "CC(C)C",
    "C1CC1",
    "C1CCCCC1",
    "c1ccccc1",
    "Cc1ccccc1",
    "OC(=O)c1ccccc1",
    "CN1CCCC1",
    "C1CC2CCC1CC2",
    "[NH4+]",
    "[O-]S(=O)(=O)[O-]",
    "ClC(Cl)(Cl)Cl",
    "N#Cc1ccc(O)cc1",
    "CC(=O)OC1=CC=CC=C1C(O)=O",
]


def _random_perm(n, rng):
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


@pytest.mark.parametrize("smiles", MOLECULES)
def test_signature_invariant_under_relabeling(smiles):
    g = parse_smiles(smiles)
    sig = canonical_signature(g)
    rng = random.Random(hash(smiles) & 0xFFFF)
    for _ in range(25):
        h = g.permuted(_random_perm(len(g), rng))
        assert canonical_signature(h) == sig


@pytest.mark.parametrize("smiles", MOLECULES)
def test_canonical_smiles_invariant_under_relabeling(smiles):
    g = parse_smiles(smiles)
    expected = write_smiles(g)
    rng = random.Random(len(smiles))
    for _ in range(25):
        h = g.permuted(_random_perm(len(g), rng))
        assert write_smiles(h) == expected


def test_canonical_labels_is_a_permutation():
    g = parse_smiles("CC(=O)OC1=CC=CC=C1C(O)=O")
    order = canonical_labels(g)
    assert sorted(order) == list(range(len(g)))


def test_distinguishes_constitutional_isomers():
    butane = parse_smiles("CCCC")
    isobutane = parse_smiles("CC(C)C")
    assert not is_isomorphic(butane, isobutane)
    assert canonical_signature(butane) != canonical_signature(isobutane)


def test_distinguishes_charge():
    assert not is_isomorphic(parse_smiles("[NH4+]"), parse_smiles("N"))


def test_distinguishes_bond_order():
    assert not is_isomorphic(parse_smiles("C=C"), parse_smiles("CC"))


def test_explicit_h_count_does_not_block_match():
    # an atom with a pinned hydrogen count still matches its computed twin
    bare = parse_smiles("N")
    pinned = parse_smiles("[NH3]")
    assert is_isomorphic(bare, pinned)


def test_stereo_ignored_by_default_but_strict_mode_separates():
    plain = MolGraph.build(["C", "C", "O"], [(0, 1, 1), (1, 2, 1)])
    wedged = MolGraph.build(["C", "C", "O"], [(0, 1, "Wedge"), (1, 2, 1)])
    assert is_isomorphic(plain, wedged)
    assert not is_isomorphic(plain, wedged, strictness="stereo-strict")
    # wedge and dash differ under strict comparison
    dashed = MolGraph.build(["C", "C", "O"], [(0, 1, "Dash"), (1, 2, 1)])
    assert not is_isomorphic(wedged, dashed, strictness="stereo-strict")


def test_wedge_direction_never_compared():
    up = MolGraph.build(["C", "O"], [(0, 1, "Wedge")])
    down = MolGraph.build(["O", "C"], [(0, 1, "Wedge")])
    assert is_isomorphic(up, down, strictness="stereo-strict")


def test_agrees_with_permutation_search_on_random_pairs():
    rng = random.Random(40419)
    checked_equal = 0
    for _ in range(120):
        n = rng.randint(2, 6)
        elements = [rng.choice(["C", "N", "O"]) for _ in range(n)]
        possible = [(i, j) for i in range(n) for j in range(i + 1, n)]
        rng.shuffle(possible)
        chosen = possible[: rng.randint(1, min(len(possible), n + 1))]
        bonds = [(i, j, rng.choice([1, 1, 1, 2])) for i, j in chosen]
        g1 = MolGraph.build(elements, bonds)
        if rng.random() < 0.5:
            g2 = g1.permuted(_random_perm(n, rng))
        else:
            other = [rng.choice(["C", "N", "O"]) for _ in range(n)]
            g2 = MolGraph.build(other, bonds)
        expected = brute_force_isomorphic(g1, g2)
        assert is_isomorphic(g1, g2) == expected
        checked_equal += expected
    assert checked_equal > 20  # both branches actually exercised


def test_empty_and_single_atom():
    empty = MolGraph()
    assert is_isomorphic(empty, MolGraph())
    single = MolGraph.build(["C"], [])
    assert is_isomorphic(single, MolGraph.build(["C"], []))
    assert not is_isomorphic(single, MolGraph.build(["N"], []))
    assert not is_isomorphic(single, empty)
