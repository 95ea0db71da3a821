"""Connected maximum common edge subgraph search and the consistency index.

The search is McGregor-style backtracking: seed on a compatible bond pair,
grow only along bonds adjacent to the mapped core (so the common subgraph
stays connected), and prune with a bonds-remaining bound.  The objective is
lexicographic: most bonds first, then most atoms.  A wall-clock deadline
turns the exact search into best-so-far with a `timed_out` flag, so batch
evaluation never stalls on a pathological pair.
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field

from .chemgraph import Atom, BondKind, MolGraph, is_isomorphic

BOND_COMPAT_ORDER = "order-only"
BOND_COMPAT_KIND = "exact-kind"


@dataclass(frozen=True)
class MatchConfig:
    element_must_match: bool = True
    charge_must_match: bool = True
    bond_compat: str = BOND_COMPAT_ORDER
    timeout_ms: int = 2000
    max_atoms_for_search: int = 200

    def __post_init__(self):
        if self.bond_compat not in (BOND_COMPAT_ORDER, BOND_COMPAT_KIND):
            raise ValueError(f"bond_compat must be order-only or exact-kind, got {self.bond_compat!r}")
        if self.timeout_ms <= 0:
            raise ValueError("timeout_ms must be positive")
        if self.max_atoms_for_search < 1:
            raise ValueError("max_atoms_for_search must be positive")


@dataclass(frozen=True)
class MCSResult:
    """A common connected edge subgraph; mappings are index pairs (g1, g2)."""

    atom_mapping: tuple[tuple[int, int], ...] = ()
    bond_mapping: tuple[tuple[int, int], ...] = ()
    timed_out: bool = False

    @property
    def matched_atoms(self) -> int:
        return len(self.atom_mapping)

    @property
    def matched_bonds(self) -> int:
        return len(self.bond_mapping)


def _atom_compat(cfg: MatchConfig, a1: Atom, a2: Atom) -> bool:
    if cfg.element_must_match and a1.element != a2.element:
        return False
    if cfg.charge_must_match and a1.charge != a2.charge:
        return False
    return True


def _bond_compat(cfg: MatchConfig, k1: BondKind, k2: BondKind) -> bool:
    if cfg.bond_compat == BOND_COMPAT_KIND:
        return k1 == k2
    return k1.order == k2.order


class _Search:
    """Shared state for one max_common_subgraph call."""

    def __init__(self, g1: MolGraph, g2: MolGraph, cfg: MatchConfig, greedy: bool):
        self.g1 = g1
        self.g2 = g2
        self.cfg = cfg
        self.greedy = greedy
        self.deadline = time.monotonic() + cfg.timeout_ms / 1000.0
        self.timed_out = False
        self.adj1 = g1.adjacency()
        self.adj2 = g2.adjacency()
        self.atom_ok = [
            [_atom_compat(cfg, a1, a2) for a2 in g2.atoms] for a1 in g1.atoms
        ]
        self.best_atoms: list[tuple[int, int]] = []
        self.best_bonds: list[tuple[int, int]] = []
        # current state, mutated in place during recursion
        self.amap: dict[int, int] = {}
        self.rmap: dict[int, int] = {}
        self.bmap: list[tuple[int, int]] = []
        self.used1: set[int] = set()
        self.used2: set[int] = set()
        self.excluded1: set[int] = set()

    def out_of_time(self) -> bool:
        if not self.timed_out and time.monotonic() > self.deadline:
            self.timed_out = True
        return self.timed_out

    def record_if_best(self):
        better = (len(self.bmap), len(self.amap)) > (len(self.best_bonds), len(self.best_atoms))
        if better:
            self.best_bonds = list(self.bmap)
            self.best_atoms = sorted(self.amap.items())

    def frontier_edge(self) -> int | None:
        """Smallest-index unmapped g1 bond touching the mapped core."""
        for bi, bond in enumerate(self.g1.bonds):
            if bi in self.used1 or bi in self.excluded1:
                continue
            if bond.a in self.amap or bond.b in self.amap:
                return bi
        return None

    def images(self, e1: int) -> list[tuple[int, int, int]]:
        """Viable (g2 bond, mapped g1 end, new g1 end) placements for g1 bond e1.

        When both endpoints are already mapped the new end is -1 (ring closure).
        """
        bond1 = self.g1.bonds[e1]
        u, v = bond1.a, bond1.b
        out = []
        if u in self.amap and v in self.amap:
            iu, iv = self.amap[u], self.amap[v]
            for w2, b2 in self.adj2[iu]:
                if w2 == iv and b2 not in self.used2 and _bond_compat(self.cfg, bond1.kind, self.g2.bonds[b2].kind):
                    out.append((b2, u, -1))
            return out
        if v in self.amap:
            u, v = v, u  # u is the mapped end below
        iu = self.amap[u]
        for w2, b2 in sorted(self.adj2[iu], key=lambda p: p[1]):
            if b2 in self.used2 or w2 in self.rmap:
                continue
            if not self.atom_ok[v][w2]:
                continue
            if _bond_compat(self.cfg, bond1.kind, self.g2.bonds[b2].kind):
                out.append((b2, u, v))
        return out

    def extend(self):
        if self.out_of_time():
            self.record_if_best()
            return
        # bound: bonds we could still add
        remaining1 = len(self.g1.bonds) - len(self.bmap) - len(self.excluded1)
        remaining2 = len(self.g2.bonds) - len(self.used2)
        ub_bonds = len(self.bmap) + min(remaining1, remaining2)
        ub_atoms = len(self.amap) + (ub_bonds - len(self.bmap))
        if (ub_bonds, ub_atoms) <= (len(self.best_bonds), len(self.best_atoms)):
            return
        e1 = self.frontier_edge()
        if e1 is None:
            self.record_if_best()
            return
        placements = self.images(e1)
        for b2, mapped_end, new_end in placements:
            bond2 = self.g2.bonds[b2]
            if new_end >= 0:
                img = bond2.other(self.amap[mapped_end])
                self.amap[new_end] = img
                self.rmap[img] = new_end
            self.bmap.append((e1, b2))
            self.used1.add(e1)
            self.used2.add(b2)
            self.extend()
            self.used1.discard(e1)
            self.used2.discard(b2)
            self.bmap.pop()
            if new_end >= 0:
                img = self.amap.pop(new_end)
                self.rmap.pop(img)
            if self.greedy or self.timed_out:
                break
        if self.greedy and placements:
            return
        # the branch where e1 is never part of the mapping
        self.excluded1.add(e1)
        self.extend()
        self.excluded1.discard(e1)


def max_common_subgraph(g1: MolGraph, g2: MolGraph, cfg: MatchConfig | None = None) -> MCSResult:
    cfg = cfg or MatchConfig()
    too_big = max(len(g1), len(g2)) > cfg.max_atoms_for_search
    search = _Search(g1, g2, cfg, greedy=too_big)
    for s1, bond1 in enumerate(g1.bonds):
        if search.out_of_time():
            break
        # partition the space by the smallest-index g1 bond in the mapping
        search.excluded1 = set(range(s1))
        for s2, bond2 in enumerate(g2.bonds):
            if not _bond_compat(cfg, bond1.kind, bond2.kind):
                continue
            for u1, v1 in ((bond1.a, bond1.b), (bond1.b, bond1.a)):
                if not (search.atom_ok[u1][bond2.a] and search.atom_ok[v1][bond2.b]):
                    continue
                search.amap = {u1: bond2.a, v1: bond2.b}
                search.rmap = {bond2.a: u1, bond2.b: v1}
                search.bmap = [(s1, s2)]
                search.used1 = {s1}
                search.used2 = {s2}
                search.extend()
    search.excluded1 = set()
    if not search.best_bonds:
        # no common bond: fall back to the first compatible atom pair
        for i in range(len(g1)):
            hit = next((j for j in range(len(g2)) if search.atom_ok[i][j]), None)
            if hit is not None:
                return MCSResult(((i, hit),), (), timed_out=search.timed_out or too_big)
        return MCSResult((), (), timed_out=search.timed_out)
    return MCSResult(
        tuple(search.best_atoms),
        tuple(search.best_bonds),
        timed_out=search.timed_out or too_big,
    )


def consistency_index(g1: MolGraph, g2: MolGraph, cfg: MatchConfig | None = None) -> float:
    """(matched atoms + matched bonds) / size of the larger molecule, in [0, 1]."""
    cfg = cfg or MatchConfig()
    size1 = len(g1.atoms) + len(g1.bonds)
    size2 = len(g2.atoms) + len(g2.bonds)
    if size1 == 0 and size2 == 0:
        warnings.warn("consistency index of two empty graphs is defined as 1", stacklevel=2)
        return 1.0
    if size1 == 0 or size2 == 0:
        return 0.0
    if cfg.element_must_match and cfg.charge_must_match and size1 == size2:
        strictness = "stereo-strict" if cfg.bond_compat == BOND_COMPAT_KIND else "order-only"
        if is_isomorphic(g1, g2, strictness=strictness):
            return 1.0
    result = max_common_subgraph(g1, g2, cfg)
    return (result.matched_atoms + result.matched_bonds) / max(size1, size2)


def _connected_bond_subsets(graph: MolGraph) -> list[tuple[int, ...]]:
    """All non-empty connected bond subsets, as sorted bond-index tuples."""
    found: set[tuple[int, ...]] = set()
    n_bonds = len(graph.bonds)
    # bonds sharing an atom are neighbors in the line graph
    bond_adj: list[set[int]] = [set() for _ in range(n_bonds)]
    for i in range(n_bonds):
        for j in range(i + 1, n_bonds):
            if graph.bonds[i].pair & graph.bonds[j].pair:
                bond_adj[i].add(j)
                bond_adj[j].add(i)

    def grow(current: frozenset[int], candidates: set[int], banned: frozenset[int]):
        key = tuple(sorted(current))
        if key in found:
            return
        found.add(key)
        usable = sorted(candidates - banned)
        blocked = set()
        for nxt in usable:
            grow(
                current | {nxt},
                candidates | bond_adj[nxt],
                banned | blocked,
            )
            blocked.add(nxt)

    for start in range(n_bonds):
        grow(frozenset({start}), set(bond_adj[start]), frozenset(range(start)))
    return sorted(found, key=lambda t: (len(t), t))


def _embed(sub_bonds: tuple[int, ...], g1: MolGraph, g2: MolGraph, cfg: MatchConfig):
    """Try to embed the given connected g1 bond subset into g2; None if impossible."""
    vertices = sorted({v for bi in sub_bonds for v in (g1.bonds[bi].a, g1.bonds[bi].b)})
    vset = set(vertices)
    incident: dict[int, list[int]] = {v: [] for v in vertices}
    for bi in sub_bonds:
        incident[g1.bonds[bi].a].append(bi)
        incident[g1.bonds[bi].b].append(bi)
    # order vertices so each one after the first touches an earlier one
    ordered = [vertices[0]]
    placed = {vertices[0]}
    while len(ordered) < len(vertices):
        for v in vertices:
            if v in placed:
                continue
            if any((g1.bonds[bi].other(v) in placed) for bi in incident[v]):
                ordered.append(v)
                placed.add(v)
                break

    g2_edge: dict[frozenset[int], list[int]] = {}
    for j, bond in enumerate(g2.bonds):
        g2_edge.setdefault(bond.pair, []).append(j)

    mapping: dict[int, int] = {}
    used2: set[int] = set()

    def ok(v1: int, v2: int) -> bool:
        if not _atom_compat(cfg, g1.atoms[v1], g2.atoms[v2]):
            return False
        for bi in incident[v1]:
            w1 = g1.bonds[bi].other(v1)
            if w1 in mapping:
                images = g2_edge.get(frozenset((v2, mapping[w1])), [])
                if not any(
                    j not in used2 and _bond_compat(cfg, g1.bonds[bi].kind, g2.bonds[j].kind)
                    for j in images
                ):
                    return False
        return True

    def assign(k: int) -> bool:
        if k == len(ordered):
            return True
        v1 = ordered[k]
        for v2 in range(len(g2.atoms)):
            if v2 in mapping.values():
                continue
            if not ok(v1, v2):
                continue
            mapping[v1] = v2
            if assign(k + 1):
                return True
            del mapping[v1]
        return False

    if not assign(0):
        return None
    # pick concrete g2 bonds for the bond mapping
    bond_pairs = []
    for bi in sorted(sub_bonds):
        b = g1.bonds[bi]
        pair = frozenset((mapping[b.a], mapping[b.b]))
        j = next(
            j
            for j in g2_edge[pair]
            if j not in used2 and _bond_compat(cfg, b.kind, g2.bonds[j].kind)
        )
        used2.add(j)
        bond_pairs.append((bi, j))
    return tuple(sorted(mapping.items())), tuple(bond_pairs)


def brute_force_mcs(g1: MolGraph, g2: MolGraph, cfg: MatchConfig | None = None) -> MCSResult:
    """Exhaustive oracle for small graphs; same objective and tie-break as the search."""
    cfg = cfg or MatchConfig()
    if len(g1) > 8 or len(g2) > 8:
        raise ValueError("brute_force_mcs is limited to graphs of at most 8 atoms")
    best: MCSResult | None = None
    for subset in _connected_bond_subsets(g1):
        embedding = _embed(subset, g1, g2, cfg)
        if embedding is None:
            continue
        atoms, bonds = embedding
        if best is None or (len(bonds), len(atoms)) > (best.matched_bonds, best.matched_atoms):
            best = MCSResult(atoms, bonds)
    if best is not None:
        return best
    for i in range(len(g1)):
        for j in range(len(g2)):
            if _atom_compat(cfg, g1.atoms[i], g2.atoms[j]):
                return MCSResult(((i, j),), ())
    return MCSResult((), ())
