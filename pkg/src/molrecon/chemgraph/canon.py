"""Canonical atom ordering and graph isomorphism.

Canonicalization refines an initial (element, charge, degree) partition by
iterated neighborhood hashing; remaining ties are resolved by exhaustively
individualizing each atom of the smallest ambiguous cell and keeping the
branch whose signature is lexicographically smallest.  The signature is
layered (connectivity with bond orders, then bond kinds, then explicit-H
counts) so the same order serves both isomorphism checks, which ignore the
later layers, and deterministic SMILES emission, which does not.
"""

from __future__ import annotations

from itertools import permutations

from .model import Bond, BondKind, MolGraph

STRICTNESS_ORDER_ONLY = "order-only"
STRICTNESS_STEREO = "stereo-strict"


def _rank(keys: list) -> list[int]:
    index = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [index[k] for k in keys]


def _initial_colors(graph: MolGraph, adj) -> list[int]:
    keys = []
    for v, atom in enumerate(graph.atoms):
        orders = tuple(sorted(bk for _, bk in adj[v]))
        keys.append((atom.element, atom.charge, len(adj[v]), orders))
    return _rank(keys)


def _refine(n: int, adj, colors: list[int]) -> list[int]:
    while True:
        keys = [
            (colors[v], tuple(sorted((bk, colors[u]) for u, bk in adj[v])))
            for v in range(n)
        ]
        new = _rank(keys)
        if new == colors:
            return colors
        colors = new


def _cells(colors: list[int]) -> dict[int, list[int]]:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    return cells


def _signature(graph: MolGraph, order: tuple[int, ...]):
    """Layered signature of `graph` under the atom order (canonical pos -> index)."""
    pos = {orig: k for k, orig in enumerate(order)}
    atoms_weak = tuple((graph.atoms[i].element, graph.atoms[i].charge) for i in order)
    weak_bonds = []
    kind_bonds = []
    for b in graph.bonds:
        i, j = pos[b.a], pos[b.b]
        if i > j:
            i, j = j, i
        weak_bonds.append((i, j, b.order))
        kind_bonds.append((i, j, b.kind.value))
    h_layer = tuple(
        -1 if graph.atoms[i].explicit_h is None else graph.atoms[i].explicit_h for i in order
    )
    return (atoms_weak, tuple(sorted(weak_bonds)), tuple(sorted(kind_bonds)), h_layer)


def _search(graph: MolGraph, adj, colors: list[int], best: list):
    n = len(graph.atoms)
    colors = _refine(n, adj, colors)
    cells = _cells(colors)
    ambiguous = [(len(vs), c) for c, vs in cells.items() if len(vs) > 1]
    if not ambiguous:
        order = tuple(sorted(range(n), key=lambda v: colors[v]))
        sig = _signature(graph, order)
        if best[0] is None or sig < best[0]:
            best[0], best[1] = sig, order
        return
    _, cell_color = min(ambiguous)
    for v in cells[cell_color]:
        branched = _rank([(colors[u], 0 if u == v else 1) for u in range(n)])
        _search(graph, adj, branched, best)


def _labelled_adjacency(graph: MolGraph):
    adj: list[list[tuple[int, int]]] = [[] for _ in graph.atoms]
    for b in graph.bonds:
        adj[b.a].append((b.b, b.order))
        adj[b.b].append((b.a, b.order))
    return adj


def canonical_labels(graph: MolGraph) -> tuple[int, ...]:
    """Atom order invariant under relabeling: position k holds order[k]."""
    n = len(graph.atoms)
    if n == 0:
        return ()
    adj = _labelled_adjacency(graph)
    best: list = [None, None]
    _search(graph, adj, _initial_colors(graph, adj), best)
    return best[1]


def canonical_signature(graph: MolGraph, strictness: str = STRICTNESS_ORDER_ONLY):
    """Hashable form equal for two graphs iff they are isomorphic at `strictness`."""
    sig = _signature(graph, canonical_labels(graph))
    if strictness == STRICTNESS_ORDER_ONLY:
        return sig[:2]
    if strictness == STRICTNESS_STEREO:
        return (sig[0], sig[2])
    raise ValueError(f"unknown strictness {strictness!r}")


def is_isomorphic(g1: MolGraph, g2: MolGraph, strictness: str = STRICTNESS_ORDER_ONLY) -> bool:
    """True iff a bijection preserves element, charge and bond kind.

    `order-only` compares wedge/dash/wavy as plain single bonds;
    `stereo-strict` requires identical bond kinds.
    """
    if len(g1.atoms) != len(g2.atoms) or len(g1.bonds) != len(g2.bonds):
        return False
    return canonical_signature(g1, strictness) == canonical_signature(g2, strictness)


def brute_force_isomorphic(
    g1: MolGraph, g2: MolGraph, strictness: str = STRICTNESS_ORDER_ONLY, max_atoms: int = 8
) -> bool:
    """Permutation-search oracle for small graphs; independent of canonical labels."""
    n = len(g1.atoms)
    if n != len(g2.atoms) or len(g1.bonds) != len(g2.bonds):
        return False
    if n > max_atoms:
        raise ValueError(f"brute force limited to {max_atoms} atoms")

    def bond_map(g: MolGraph):
        out = {}
        for b in g.bonds:
            key = (min(b.a, b.b), max(b.a, b.b))
            out[key] = b.order if strictness == STRICTNESS_ORDER_ONLY else b.kind.value
        return out

    def atom_label(g: MolGraph, i: int):
        return (g.atoms[i].element, g.atoms[i].charge)

    bm1, bm2 = bond_map(g1), bond_map(g2)
    for perm in permutations(range(n)):
        if any(atom_label(g1, i) != atom_label(g2, perm[i]) for i in range(n)):
            continue
        mapped = {
            (min(perm[i], perm[j]), max(perm[i], perm[j])): lab for (i, j), lab in bm1.items()
        }
        if mapped == bm2:
            return True
    return False
