"""Common-subgraph search vs the exhaustive oracle, plus the consistency index."""

import random

import pytest

from molrecon.chemgraph import MolGraph, parse_smiles
from molrecon.mcs import (
    MatchConfig,
    MCSResult,
    brute_force_mcs,
    consistency_index,
    max_common_subgraph,
)


def _random_molecule(rng, max_atoms=8):
    n = rng.randint(1, max_atoms)
    elements = [rng.choice(["C", "C", "C", "N", "O"]) for _ in range(n)]
    atoms = elements
    bonds = []
    # random spanning tree keeps it connected, then a few extra edges
    for i in range(1, n):
        j = rng.randrange(i)
        bonds.append((j, i, rng.choice([1, 1, 1, 2])))
    pairs = {frozenset((a, b)) for a, b, _ in bonds}
    for _ in range(rng.randint(0, 2)):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j and frozenset((i, j)) not in pairs:
            pairs.add(frozenset((i, j)))
            bonds.append((i, j, 1))
    return MolGraph.build(atoms, bonds)


def _assert_valid_common_subgraph(res: MCSResult, g1, g2, cfg):
    fwd = dict(res.atom_mapping)
    assert len(fwd) == len(res.atom_mapping)
    assert len(set(fwd.values())) == len(fwd)  # injective
    seen2 = set()
    for b1, b2 in res.bond_mapping:
        bond1, bond2 = g1.bonds[b1], g2.bonds[b2]
        assert b2 not in seen2
        seen2.add(b2)
        assert {fwd[bond1.a], fwd[bond1.b]} == {bond2.a, bond2.b}
        if cfg.bond_compat == "exact-kind":
            assert bond1.kind == bond2.kind
        else:
            assert bond1.order == bond2.order
    for i, j in res.atom_mapping:
        if cfg.element_must_match:
            assert g1.atoms[i].element == g2.atoms[j].element
    # mapped piece is connected (or a single atom, or empty)
    if len(res.atom_mapping) > 1:
        mapped = {i for i, _ in res.atom_mapping}
        adj = {i: set() for i in mapped}
        for b1, _ in res.bond_mapping:
            bond = g1.bonds[b1]
            adj[bond.a].add(bond.b)
            adj[bond.b].add(bond.a)
        stack = [next(iter(mapped))]
        seen = set(stack)
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        assert seen == mapped


def test_identity_maps_everything():
    g = parse_smiles("OC(=O)c1ccccc1")
    res = max_common_subgraph(g, g)
    assert res.matched_atoms == len(g.atoms)
    assert res.matched_bonds == len(g.bonds)
    assert not res.timed_out


def test_benzene_vs_cyclohexane():
    benzene = parse_smiles("C1=CC=CC=C1")
    cyclohexane = parse_smiles("C1CCCCC1")
    for cfg in (MatchConfig(), MatchConfig(bond_compat="exact-kind")):
        res = max_common_subgraph(benzene, cyclohexane, cfg)
        # alternating double bonds separate the single bonds, so the largest
        # connected common piece is a lone C-C single bond
        assert res.matched_bonds == 1
        assert res.matched_atoms == 2


def test_ethanol_vs_dimethyl_ether():
    res = max_common_subgraph(parse_smiles("CCO"), parse_smiles("COC"))
    assert res.matched_bonds == 1
    assert res.matched_atoms == 2


def test_disjoint_elements_empty_result():
    res = max_common_subgraph(parse_smiles("CC"), parse_smiles("OO"))
    assert res.matched_atoms == 0
    assert res.matched_bonds == 0
    assert consistency_index(parse_smiles("CC"), parse_smiles("OO")) == 0.0


def test_single_atom_fallback():
    res = max_common_subgraph(parse_smiles("C"), parse_smiles("C"))
    assert res.matched_atoms == 1
    assert res.matched_bonds == 0


def test_agrees_with_brute_force_on_100_seeded_pairs():
    rng = random.Random(1337)
    for trial in range(100):
        g1 = _random_molecule(rng)
        g2 = _random_molecule(rng)
        cfg = MatchConfig()
        exact = max_common_subgraph(g1, g2, cfg)
        oracle = brute_force_mcs(g1, g2, cfg)
        assert not exact.timed_out
        assert (exact.matched_bonds, exact.matched_atoms) == (
            oracle.matched_bonds,
            oracle.matched_atoms,
        ), f"trial {trial}"
        _assert_valid_common_subgraph(exact, g1, g2, cfg)
        _assert_valid_common_subgraph(oracle, g1, g2, cfg)


def test_exact_kind_agreement_with_oracle():
    rng = random.Random(99)
    cfg = MatchConfig(bond_compat="exact-kind")
    for _ in range(30):
        g1 = _random_molecule(rng, max_atoms=6)
        g2 = _random_molecule(rng, max_atoms=6)
        exact = max_common_subgraph(g1, g2, cfg)
        oracle = brute_force_mcs(g1, g2, cfg)
        assert (exact.matched_bonds, exact.matched_atoms) == (
            oracle.matched_bonds,
            oracle.matched_atoms,
        )


def test_size_symmetry():
    rng = random.Random(7)
    for _ in range(30):
        g1 = _random_molecule(rng)
        g2 = _random_molecule(rng)
        a = max_common_subgraph(g1, g2)
        b = max_common_subgraph(g2, g1)
        assert (a.matched_bonds, a.matched_atoms) == (b.matched_bonds, b.matched_atoms)


def test_deterministic_mappings():
    g1 = parse_smiles("CC(C)CO")
    g2 = parse_smiles("CC(O)CC")
    first = max_common_subgraph(g1, g2)
    for _ in range(5):
        again = max_common_subgraph(g1, g2)
        assert again.atom_mapping == first.atom_mapping
        assert again.bond_mapping == first.bond_mapping


def test_consistency_index_identity_and_bounds():
    g = parse_smiles("Cc1ccccc1")
    assert consistency_index(g, g) == 1.0
    other = parse_smiles("CCO")
    value = consistency_index(g, other)
    assert 0.0 < value < 1.0


def test_consistency_index_benzene_vs_cyclohexane():
    value = consistency_index(parse_smiles("C1=CC=CC=C1"), parse_smiles("C1CCCCC1"))
    assert value == pytest.approx((2 + 1) / 12)


def test_consistency_index_one_deleted_ring_bond():
    g = parse_smiles("C1CCCCC1")  # dropping one ring bond keeps every atom connected
    pruned = MolGraph(g.atoms, g.bonds[:-1])
    assert len(pruned.connected_components()) == 1
    size = len(g.atoms) + len(g.bonds)
    expected = (size - 1) / size
    assert consistency_index(g, pruned) == pytest.approx(expected)


def test_consistency_index_empty_inputs():
    with pytest.warns(UserWarning):
        assert consistency_index(MolGraph(), MolGraph()) == 1.0
    assert consistency_index(MolGraph(), parse_smiles("C")) == 0.0


def test_oracle_rejects_large_graphs():
    big = parse_smiles("CCCCCCCCC")
    with pytest.raises(ValueError):
        brute_force_mcs(big, big)


def test_timeout_flag_on_tight_deadline():
    # two fused-ring systems with element repetition force a wide search
    g1 = parse_smiles("C1CC2CCC1CC2" * 1)
    g2 = parse_smiles("C1CC2CCC1CC2")
    cfg = MatchConfig(timeout_ms=1)
    res = max_common_subgraph(g1, g2, cfg)
    # with a 1 ms budget the search may or may not finish; the result must
    # still be a valid common subgraph either way
    _assert_valid_common_subgraph(res, g1, g2, cfg)


def test_oversize_graphs_use_flagged_greedy():
    chain = "C" * 30
    g = parse_smiles(chain)
    cfg = MatchConfig(max_atoms_for_search=10)
    res = max_common_subgraph(g, g, cfg)
    assert res.timed_out
    assert res.matched_bonds >= 1


def test_charge_must_match_toggle():
    cation = parse_smiles("[NH4+]")
    neutral = parse_smiles("N")
    assert max_common_subgraph(cation, neutral).matched_atoms == 0
    relaxed = MatchConfig(charge_must_match=False)
    assert max_common_subgraph(cation, neutral, relaxed).matched_atoms == 1


def test_bad_config_rejected():
    with pytest.raises(ValueError):
        MatchConfig(bond_compat="loose")
    with pytest.raises(ValueError):
        MatchConfig(timeout_ms=0)
