"""SMILES subset: organic-set atoms, brackets with charge/H-count, branches,
ring closures, and kekulization of lowercase aromatic input (6-rings only).

`*` parses as a wildcard atom; the fragment table uses it to mark attachment
points.  Writing emits atoms in canonical order so equal graphs produce equal
strings.
"""

from __future__ import annotations

from .canon import canonical_labels
from .model import Atom, Bond, BondKind, MolGraph
from .rings import rings_of_size
from .valence import default_valence, implicit_hydrogen_count

ORGANIC_SUBSET = ("B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I")
_TWO_LETTER = ("Cl", "Br", "Si")
_AROMATIC = ("b", "c", "n", "o", "p", "s")

_ORDER_TOKEN = {1: "", 2: "=", 3: "#"}
_TOKEN_ORDER = {"-": 1, "=": 2, "#": 3}


class SmilesError(ValueError):
    """Unsupported token or impossible structure; carries the byte offset."""

    def __init__(self, offset: int, message: str):
        super().__init__(f"SMILES offset {offset}: {message}")
        self.offset = offset


class _PendingAtom:
    __slots__ = ("element", "charge", "explicit_h", "aromatic")

    def __init__(self, element, charge=0, explicit_h=None, aromatic=False):
        self.element = element
        self.charge = charge
        self.explicit_h = explicit_h
        self.aromatic = aromatic


def _parse_bracket(text: str, start: int) -> tuple[_PendingAtom, int]:
    """Parse a [...] atom starting at `start` (the '['); return atom and end offset."""
    i = start + 1
    n = len(text)

    def peek():
        return text[i] if i < n else ""

    if peek().isdigit():
        raise SmilesError(i, "isotope labels are not supported")
    aromatic = False
    if peek() == "*":
        element = "*"
        i += 1
    elif peek() in _AROMATIC and (i + 1 >= n or not text[i + 1].islower()):
        element = peek().upper()
        aromatic = True
        i += 1
    elif peek().isupper():
        element = peek()
        i += 1
        while peek().islower():
            element += peek()
            i += 1
    else:
        raise SmilesError(i, f"expected element symbol, found {peek()!r}")
    if peek() == "@":
        raise SmilesError(i, "chirality markers are not supported")
    explicit_h = None
    if peek() == "H":
        i += 1
        count = ""
        while peek().isdigit():
            count += peek()
            i += 1
        explicit_h = int(count) if count else 1
    charge = 0
    if peek() in "+-":
        sign = 1 if peek() == "+" else -1
        run = 0
        while peek() in "+-":
            if (peek() == "+") != (sign == 1):
                raise SmilesError(i, "mixed charge signs")
            run += 1
            i += 1
        digits = ""
        while peek().isdigit():
            digits += peek()
            i += 1
        if digits:
            if run != 1:
                raise SmilesError(i, "malformed charge")
            charge = sign * int(digits)
        else:
            charge = sign * run
    if peek() != "]":
        raise SmilesError(i, f"expected ']', found {peek()!r}")
    return _PendingAtom(element, charge, explicit_h, aromatic), i + 1


def parse_smiles(text: str) -> MolGraph:
    atoms: list[_PendingAtom] = []
    bonds: list[list] = []  # [a, b, token or None]
    bond_seen: set[frozenset[int]] = set()
    stack: list[int] = []
    prev: int | None = None
    pending: str | None = None
    ring_open: dict[int, tuple[int, str | None, int]] = {}  # number -> (atom, token, offset)

    def add_atom(pa: _PendingAtom, offset: int):
        nonlocal prev, pending
        atoms.append(pa)
        idx = len(atoms) - 1
        if prev is not None:
            add_bond(prev, idx, pending, offset)
        prev = idx
        pending = None

    def add_bond(a: int, b: int, token: str | None, offset: int):
        if a == b:
            raise SmilesError(offset, "ring closure to the same atom")
        key = frozenset((a, b))
        if key in bond_seen:
            raise SmilesError(offset, f"duplicate bond between atoms {a} and {b}")
        bond_seen.add(key)
        bonds.append([a, b, token])

    def close_ring(number: int, offset: int):
        nonlocal pending
        if number in ring_open:
            a, opening_token, _ = ring_open.pop(number)
            token = opening_token
            if pending is not None:
                if token is not None and token != pending:
                    raise SmilesError(offset, f"ring closure {number} bond mismatch")
                token = pending
            add_bond(a, prev, token, offset)
        else:
            if prev is None:
                raise SmilesError(offset, "ring closure before any atom")
            ring_open[number] = (prev, pending, offset)
        pending = None

    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "[":
            pa, end = _parse_bracket(text, i)
            add_atom(pa, i)
            i = end
            continue
        if text[i : i + 2] in _TWO_LETTER:
            add_atom(_PendingAtom(text[i : i + 2]), i)
            i += 2
            continue
        if ch == "*":
            add_atom(_PendingAtom("*"), i)
            i += 1
            continue
        if ch.isupper():
            if ch not in ORGANIC_SUBSET:
                raise SmilesError(i, f"element {ch!r} must be written in brackets")
            add_atom(_PendingAtom(ch), i)
            i += 1
            continue
        if ch in _AROMATIC:
            add_atom(_PendingAtom(ch.upper(), aromatic=True), i)
            i += 1
            continue
        if ch in "-=#":
            if pending is not None:
                raise SmilesError(i, "two bond symbols in a row")
            pending = ch
            i += 1
            continue
        if ch == ":":
            if pending is not None:
                raise SmilesError(i, "two bond symbols in a row")
            pending = None  # aromatic bond: same as implicit between aromatic atoms
            i += 1
            continue
        if ch.isdigit():
            if prev is None:
                raise SmilesError(i, "ring closure before any atom")
            close_ring(int(ch), i)
            i += 1
            continue
        if ch == "%":
            if i + 2 >= n or not text[i + 1 : i + 3].isdigit():
                raise SmilesError(i, "'%' must be followed by two digits")
            close_ring(int(text[i + 1 : i + 3]), i)
            i += 3
            continue
        if ch == "(":
            if prev is None:
                raise SmilesError(i, "branch before any atom")
            stack.append(prev)
            i += 1
            continue
        if ch == ")":
            if not stack:
                raise SmilesError(i, "unmatched ')'")
            prev = stack.pop()
            i += 1
            continue
        if ch == ".":
            prev = None
            pending = None
            i += 1
            continue
        raise SmilesError(i, f"unsupported token {ch!r}")
    if stack:
        raise SmilesError(n, "unclosed branch")
    if ring_open:
        number, (_, _, offset) = sorted(ring_open.items())[0]
        raise SmilesError(offset, f"unclosed ring closure {number}")
    if pending is not None:
        raise SmilesError(n, "dangling bond symbol")

    kinds = _resolve_bond_kinds(atoms, bonds, len(text))
    graph_atoms = tuple(Atom(pa.element, pa.charge, pa.explicit_h) for pa in atoms)
    graph_bonds = tuple(Bond(a, b, kind) for (a, b, _), kind in zip(bonds, kinds))
    return MolGraph(graph_atoms, graph_bonds)


def _resolve_bond_kinds(atoms, bonds, text_len: int) -> list[BondKind]:
    aromatic_bond_idx = [
        bi
        for bi, (a, b, token) in enumerate(bonds)
        if token is None and atoms[a].aromatic and atoms[b].aromatic
    ]
    kinds: list[BondKind | None] = []
    for a, b, token in bonds:
        if token is None:
            kinds.append(BondKind.SINGLE)
        else:
            kinds.append(
                {1: BondKind.SINGLE, 2: BondKind.DOUBLE, 3: BondKind.TRIPLE}[_TOKEN_ORDER[token]]
            )
    aromatic_atoms = {i for i, pa in enumerate(atoms) if pa.aromatic}
    if not aromatic_atoms:
        return kinds  # type: ignore[return-value]

    arom_edges = [(bonds[bi][0], bonds[bi][1]) for bi in aromatic_bond_idx]
    in_arom_edge = {v for e in arom_edges for v in e}
    for v in sorted(aromatic_atoms):
        if v not in in_arom_edge:
            raise SmilesError(text_len, f"aromatic atom {v} has no aromatic bonds")
    six = rings_of_size(len(atoms), arom_edges, 6)
    covered = {v for ring in six for v in ring}
    missing = sorted(aromatic_atoms - covered)
    if missing:
        raise SmilesError(
            text_len, f"aromatic atoms outside any aromatic 6-ring: {missing} (only 6-rings kekulized)"
        )

    # an aromatic atom takes one double bond iff single-counting leaves valence room
    order_sum = [0] * len(atoms)
    for (a, b, _), kind in zip(bonds, kinds):
        order_sum[a] += kind.order
        order_sum[b] += kind.order
    def needs_double(v: int) -> bool:
        pa = atoms[v]
        h = pa.explicit_h if pa.explicit_h is not None else 0
        return default_valence(pa.element, pa.charge) - order_sum[v] - h >= 1

    need = {v for v in aromatic_atoms if needs_double(v)}
    arom_pairs = [(bi, bonds[bi][0], bonds[bi][1]) for bi in aromatic_bond_idx]

    def match(remaining: frozenset[int]) -> set[int] | None:
        if not remaining:
            return set()
        v = min(remaining)
        for bi, a, b in arom_pairs:
            if v not in (a, b):
                continue
            u = b if a == v else a
            if u not in remaining:
                continue
            sub = match(remaining - {v, u})
            if sub is not None:
                sub.add(bi)
                return sub
        return None

    chosen = match(frozenset(need))
    if chosen is None:
        raise SmilesError(text_len, "kekulization failed: no alternating bond assignment")
    for bi in chosen:
        kinds[bi] = BondKind.DOUBLE
    return kinds  # type: ignore[return-value]


def _atom_token(graph: MolGraph, idx: int) -> str:
    atom = graph.atoms[idx]
    if atom.element == "*" and atom.charge == 0 and atom.explicit_h is None:
        return "*"
    if atom.element in ORGANIC_SUBSET and atom.charge == 0 and atom.explicit_h is None:
        return atom.element
    h = atom.explicit_h if atom.explicit_h is not None else implicit_hydrogen_count(graph, idx)
    h_part = "" if h == 0 else ("H" if h == 1 else f"H{h}")
    q = atom.charge
    if q == 0:
        q_part = ""
    elif abs(q) == 1:
        q_part = "+" if q > 0 else "-"
    else:
        q_part = f"{'+' if q > 0 else '-'}{abs(q)}"
    return f"[{atom.element}{h_part}{q_part}]"


def write_smiles(graph: MolGraph) -> str:
    """Emit SMILES over the canonical atom ordering; fragments joined by '.'."""
    if not graph.atoms:
        return ""
    order = canonical_labels(graph)
    rank = {orig: k for k, orig in enumerate(order)}
    adj = graph.adjacency()
    for neighbors in adj:
        neighbors.sort(key=lambda pair: rank[pair[0]])

    visited: set[int] = set()
    tree_children: dict[int, list[tuple[int, int]]] = {}
    back_edges: list[tuple[int, int, int]] = []  # (from, to, bond index)

    def explore(root: int):
        seen_bonds: set[int] = set()
        visited.add(root)
        stack = [(root, iter(adj[root]))]
        while stack:
            v, neighbors = stack[-1]
            advanced = False
            for u, bi in neighbors:
                if bi in seen_bonds:
                    continue
                seen_bonds.add(bi)
                if u in visited:
                    back_edges.append((v, u, bi))
                else:
                    visited.add(u)
                    tree_children.setdefault(v, []).append((u, bi))
                    stack.append((u, iter(adj[u])))
                    advanced = True
                    break
            if not advanced:
                stack.pop()

    def emit(root: int) -> str:
        # assign ring-closure numbers in deterministic DFS emission order
        free_numbers = list(range(99, 0, -1))
        open_numbers: dict[int, int] = {}  # bond index -> number
        out: list[str] = []

        def bond_token(bi: int) -> str:
            return _ORDER_TOKEN[graph.bonds[bi].order]

        def walk(v: int, parent_bond: int | None):
            if parent_bond is not None:
                out.append(bond_token(parent_bond))
            out.append(_atom_token(graph, v))
            for frm, to, bi in back_edges:
                if v in (frm, to):
                    if bi not in open_numbers:
                        number = free_numbers.pop()
                        open_numbers[bi] = number
                        out.append(bond_token(bi) + _closure_digits(number))
                    else:
                        number = open_numbers.pop(bi)
                        free_numbers.append(number)
                        out.append(_closure_digits(number))
            children = tree_children.get(v, [])
            for k, (u, bi) in enumerate(children):
                if k < len(children) - 1:
                    out.append("(")
                    walk(u, bi)
                    out.append(")")
                else:
                    walk(u, bi)

        walk(root, None)
        return "".join(out)

    components = graph.connected_components()
    components.sort(key=lambda comp: min(rank[v] for v in comp))
    parts = []
    for comp in components:
        root = min(comp, key=lambda v: rank[v])
        explore(root)
        parts.append(emit(root))
    return ".".join(parts)


def _closure_digits(number: int) -> str:
    return str(number) if number < 10 else f"%{number:02d}"
