"""Replace pendant fragments with abbreviation labels before rendering.

A fragment from the table is collapsed when it appears as a pendant group:
every replaced atom is internal except the attachment atom, which carries
exactly one plain single bond to the rest of the molecule.  The replaced
atoms become one wildcard node that the renderer draws as text.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from molrecon.chemgraph import Atom, Bond, BondKind, MolGraph
from molrecon.labelparse import FragmentTable


@dataclass(frozen=True)
class CollapsedGroup:
    """One abbreviation applied to the display graph."""

    node_index: int                 # wildcard node in the display graph
    key: str                        # label text shown in the depiction
    hidden_atoms: tuple[int, ...]   # source atom indices replaced, sorted
    attachment_atom: int            # source atom that carried the outside bond


def _atoms_equal(a: Atom, b: Atom) -> bool:
    return (a.element == b.element and a.charge == b.charge
            and a.explicit_h == b.explicit_h)


def _match_pendant(graph: MolGraph, fragment: MolGraph, attach: int,
                   anchor: int, blocked: set[int]) -> dict[int, int] | None:
    """Embed `fragment` into `graph` with fragment atom `attach` at `anchor`.

    Succeeds only when the image is a pendant: no replaced atom other than
    the anchor touches the outside, and the anchor has exactly one plain
    single bond leaving the image.
    """
    if anchor in blocked or not _atoms_equal(graph.atoms[anchor],
                                             fragment.atoms[attach]):
        return None

    frag_adj = fragment.adjacency()
    graph_adj = graph.adjacency()

    # visit fragment atoms in BFS order from the attachment so each new atom
    # extends an already-mapped neighbor
    order = [attach]
    seen = {attach}
    for v in order:
        for nbr, _ in frag_adj[v]:
            if nbr not in seen:
                seen.add(nbr)
                order.append(nbr)
    if len(order) != fragment.n_atoms:
        return None  # disconnected fragment cannot be a pendant

    mapping = {attach: anchor}

    def extend(pos: int) -> bool:
        if pos == len(order):
            return _verify(graph, fragment, mapping, attach, graph_adj)
        fv = order[pos]
        fprev = next(n for n, _ in frag_adj[fv] if n in mapping)
        fbond = next(fragment.bonds[bi] for n, bi in frag_adj[fv] if n == fprev)
        for gnbr, gbi in graph_adj[mapping[fprev]]:
            if gnbr in blocked or gnbr in mapping.values():
                continue
            if not _atoms_equal(graph.atoms[gnbr], fragment.atoms[fv]):
                continue
            if graph.bonds[gbi].kind is not fbond.kind:
                continue
            mapping[fv] = gnbr
            if extend(pos + 1):
                return True
            del mapping[fv]
        return False

    return mapping if extend(1) else None


def _verify(graph: MolGraph, fragment: MolGraph, mapping: dict[int, int],
            attach: int, graph_adj) -> bool:
    image = set(mapping.values())
    if len(image) >= graph.n_atoms:
        return False  # nothing left to attach the label to

    # internal bond sets must agree exactly
    frag_pairs = {frozenset((mapping[b.a], mapping[b.b])): b.kind
                  for b in fragment.bonds}
    internal = 0
    outside = []
    for v in image:
        for nbr, bi in graph_adj[v]:
            if nbr in image:
                bond = graph.bonds[bi]
                key = frozenset((bond.a, bond.b))
                if key not in frag_pairs or frag_pairs[key] is not bond.kind:
                    return False
                internal += 1
            else:
                outside.append((v, bi))
    if internal != 2 * fragment.n_bonds:
        return False

    if len(outside) != 1:
        return False
    v, bi = outside[0]
    return v == mapping[attach] and graph.bonds[bi].kind is BondKind.SINGLE


def collapse_superatoms(graph: MolGraph, table: FragmentTable, prob: float,
                        seed: int) -> tuple[MolGraph, dict[int, CollapsedGroup]]:
    """Probabilistically abbreviate pendant fragments.

    Returns the display graph and a map from wildcard node index to the
    group it stands for.  Replacements never overlap; an atom already used
    by one group (or serving as another group's outside neighbor) stays put.
    """
    if not 0.0 <= prob <= 1.0:
        raise ValueError(f"collapse probability {prob} outside [0, 1]")
    if prob == 0.0 or graph.n_atoms < 2:
        return graph, {}

    rng = random.Random(seed)
    entries = []
    for key, _aliases, _ in table.rows():
        g = table.group(key)
        if g.attachment_count == 1:
            entries.append((key, g.fragment, g.attachment_indices[0]))
    # try bigger fragments first so OMe wins over its embedded Me
    entries.sort(key=lambda e: (-e[1].n_atoms, e[0]))

    blocked: set[int] = set()
    groups: list[tuple[str, tuple[int, ...], int, int]] = []
    for key, fragment, attach in entries:
        if fragment.n_atoms >= graph.n_atoms:
            continue
        for anchor in range(graph.n_atoms):
            if anchor in blocked:
                continue
            mapping = _match_pendant(graph, fragment, attach, anchor, blocked)
            if mapping is None:
                continue
            if rng.random() >= prob:
                continue
            image = tuple(sorted(mapping.values()))
            neighbor = next(b.other(anchor) for b in graph.bonds
                            if anchor in b.pair and b.other(anchor) not in image)
            blocked.update(image)
            blocked.add(neighbor)  # keep the label's partner a real atom
            groups.append((key, image, anchor, neighbor))

    if not groups:
        return graph, {}

    hidden = {v for _, image, _, _ in groups for v in image}
    old_to_new: dict[int, int] = {}
    atoms: list[Atom] = []
    for i, atom in enumerate(graph.atoms):
        if i not in hidden:
            old_to_new[i] = len(atoms)
            atoms.append(atom)

    label_map: dict[int, CollapsedGroup] = {}
    group_node: dict[int, int] = {}  # source attachment atom -> display node
    for key, image, anchor, _ in groups:
        idx = len(atoms)
        atoms.append(Atom("*", position=graph.atoms[anchor].position))
        group_node[anchor] = idx
        label_map[idx] = CollapsedGroup(idx, key, image, anchor)

    bonds = []
    for bond in graph.bonds:
        a_hidden = bond.a in hidden
        b_hidden = bond.b in hidden
        if a_hidden and b_hidden:
            continue
        if not a_hidden and not b_hidden:
            bonds.append(Bond(old_to_new[bond.a], old_to_new[bond.b], bond.kind))
        elif a_hidden:
            bonds.append(Bond(group_node[bond.a], old_to_new[bond.b], bond.kind))
        else:
            bonds.append(Bond(old_to_new[bond.a], group_node[bond.b], bond.kind))

    return MolGraph.build(atoms, bonds), label_map
