"""Atoms, bonds and the immutable molecular graph."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

# Element symbols a detector may emit directly.  Anything outside this set is
# an "other" element: it can only enter a graph through super-group expansion
# or explicit file input, never through an atom detection class.
KNOWN_ELEMENTS = frozenset({"C", "N", "O", "S", "P", "B", "F", "Cl", "Br", "I", "Si", "H"})

MAX_CHARGE = 4
MAX_EXPLICIT_H = 9


class GraphError(ValueError):
    """Raised when a graph or one of its parts violates a structural invariant."""


def _valid_element(e) -> bool:
    if not isinstance(e, str) or not e:
        return False
    if e == "*":
        return True
    return e.isalpha() and e[0].isupper() and (len(e) == 1 or e[1:].islower())


class BondKind(Enum):
    SINGLE = "Single"
    DOUBLE = "Double"
    TRIPLE = "Triple"
    WEDGE_UP = "Wedge"
    WEDGE_DOWN = "Dash"
    WAVY = "Wavy"

    @property
    def order(self) -> int:
        return _BOND_ORDER[self]

    @property
    def is_stereo(self) -> bool:
        return self in (BondKind.WEDGE_UP, BondKind.WEDGE_DOWN, BondKind.WAVY)


_BOND_ORDER = {
    BondKind.SINGLE: 1,
    BondKind.DOUBLE: 2,
    BondKind.TRIPLE: 3,
    BondKind.WEDGE_UP: 1,
    BondKind.WEDGE_DOWN: 1,
    BondKind.WAVY: 1,
}


@dataclass(frozen=True)
class Atom:
    """A labeled atom. `position` is 2D, in whatever unit the producer used."""

    element: str
    charge: int = 0
    explicit_h: int | None = None
    position: tuple[float, float] | None = None

    def __post_init__(self):
        if not _valid_element(self.element):
            raise GraphError(
                f"bad element symbol {self.element!r}: expected '*' or a capitalized symbol"
            )
        if abs(self.charge) > MAX_CHARGE:
            raise GraphError(f"atom charge {self.charge} outside |q| <= {MAX_CHARGE}")
        if self.explicit_h is not None and not 0 <= self.explicit_h <= MAX_EXPLICIT_H:
            raise GraphError(f"explicit_h {self.explicit_h} outside 0..{MAX_EXPLICIT_H}")

    @property
    def is_standard(self) -> bool:
        return self.element in KNOWN_ELEMENTS

    def moved(self, position: tuple[float, float] | None) -> "Atom":
        return Atom(self.element, self.charge, self.explicit_h, position)


@dataclass(frozen=True)
class Bond:
    """Bond between atom indices `a` and `b`.

    For stereo kinds the direction is meaningful: `a` is the begin atom
    (narrow end of a wedge).  Comparisons elsewhere treat bonds as undirected.
    """

    a: int
    b: int
    kind: BondKind = BondKind.SINGLE

    def __post_init__(self):
        if self.a == self.b:
            raise GraphError(f"self-bond on atom {self.a}")
        if self.a < 0 or self.b < 0:
            raise GraphError(f"negative atom index in bond {self.a}-{self.b}")

    @property
    def order(self) -> int:
        return _BOND_ORDER[self.kind]

    @property
    def pair(self) -> frozenset[int]:
        return frozenset((self.a, self.b))

    def other(self, idx: int) -> int:
        if idx == self.a:
            return self.b
        if idx == self.b:
            return self.a
        raise GraphError(f"atom {idx} is not an endpoint of bond {self.a}-{self.b}")


@dataclass(frozen=True)
class MolGraph:
    """Immutable molecular graph. May be disconnected (fragments allowed)."""

    atoms: tuple[Atom, ...] = ()
    bonds: tuple[Bond, ...] = ()

    def __post_init__(self):
        n = len(self.atoms)
        seen: set[frozenset[int]] = set()
        for bond in self.bonds:
            if not (0 <= bond.a < n and 0 <= bond.b < n):
                raise GraphError(f"bond {bond.a}-{bond.b} references atom outside 0..{n - 1}")
            if bond.a == bond.b:
                raise GraphError(f"self-bond on atom {bond.a}")
            if bond.pair in seen:
                raise GraphError(f"duplicate bond between atoms {bond.a} and {bond.b}")
            seen.add(bond.pair)

    @classmethod
    def build(
        cls,
        atoms: Iterable[Atom | str],
        bonds: Iterable[Bond | tuple] = (),
    ) -> "MolGraph":
        """Convenience constructor.

        Atoms may be Atom objects, element strings, or (element[, charge[, explicit_h]])
        tuples; bonds may be Bond objects or (a, b[, kind]) tuples where kind is a
        BondKind, its string value, or a plain order 1..3.
        """
        atom_list = []
        for a in atoms:
            if isinstance(a, Atom):
                atom_list.append(a)
            elif isinstance(a, str):
                atom_list.append(Atom(a))
            else:
                atom_list.append(Atom(*a))
        bond_list = []
        for b in bonds:
            if isinstance(b, Bond):
                bond_list.append(b)
            else:
                a, bb, *rest = b
                kind = rest[0] if rest else BondKind.SINGLE
                if isinstance(kind, str):
                    kind = BondKind(kind)
                elif isinstance(kind, int):
                    kind = {1: BondKind.SINGLE, 2: BondKind.DOUBLE, 3: BondKind.TRIPLE}[kind]
                bond_list.append(Bond(a, bb, kind))
        return cls(tuple(atom_list), tuple(bond_list))

    def __len__(self) -> int:
        return len(self.atoms)

    @property
    def n_atoms(self) -> int:
        return len(self.atoms)

    @property
    def n_bonds(self) -> int:
        return len(self.bonds)

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per-atom list of (neighbor index, bond index). Fresh copy each call."""
        adj: list[list[tuple[int, int]]] = [[] for _ in self.atoms]
        for bi, bond in enumerate(self.bonds):
            adj[bond.a].append((bond.b, bi))
            adj[bond.b].append((bond.a, bi))
        return adj

    def degree(self, idx: int) -> int:
        return sum(1 for b in self.bonds if idx in (b.a, b.b))

    def bond_order_sum(self, idx: int) -> int:
        return sum(b.order for b in self.bonds if idx in (b.a, b.b))

    def connected_components(self) -> list[list[int]]:
        adj = self.adjacency()
        seen = [False] * len(self.atoms)
        comps = []
        for start in range(len(self.atoms)):
            if seen[start]:
                continue
            stack, comp = [start], []
            seen[start] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for u, _ in adj[v]:
                    if not seen[u]:
                        seen[u] = True
                        stack.append(u)
            comps.append(sorted(comp))
        return comps

    @property
    def is_connected(self) -> bool:
        return len(self.atoms) <= 1 or len(self.connected_components()) == 1

    def permuted(self, perm: Sequence[int]) -> "MolGraph":
        """Relabel atoms so new index perm[i] holds old atom i."""
        n = len(self.atoms)
        if sorted(perm) != list(range(n)):
            raise GraphError("perm must be a permutation of atom indices")
        new_atoms: list[Atom | None] = [None] * n
        for old, new in enumerate(perm):
            new_atoms[new] = self.atoms[old]
        new_bonds = tuple(Bond(perm[b.a], perm[b.b], b.kind) for b in self.bonds)
        return MolGraph(tuple(new_atoms), new_bonds)  # type: ignore[arg-type]

    def with_positions(self, coords: Sequence[tuple[float, float]]) -> "MolGraph":
        if len(coords) != len(self.atoms):
            raise GraphError("coords length must equal atom count")
        return MolGraph(
            tuple(a.moved((float(x), float(y))) for a, (x, y) in zip(self.atoms, coords)),
            self.bonds,
        )

    def positions(self) -> list[tuple[float, float] | None]:
        return [a.position for a in self.atoms]

    @property
    def has_all_positions(self) -> bool:
        return all(a.position is not None for a in self.atoms)
