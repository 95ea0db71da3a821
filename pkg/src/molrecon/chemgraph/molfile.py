"""MDL molfile (V2000) reading and writing, plus SDF batching.

Write uses bit-exact field widths (coordinates %10.4f).  Charges are emitted
as `M  CHG` property lines; the legacy atom-block charge codes are still
understood on read.  Wedge/dash map to bond-stereo codes 1/6, wavy to 4.
"""

from __future__ import annotations

from typing import Iterable

from .model import Atom, Bond, BondKind, MolGraph

_HEADER_PROGRAM = "  molrecon      2D"

_LEGACY_CHARGE = {0: 0, 1: 3, 2: 2, 3: 1, 5: -1, 6: -2, 7: -3}
_BOND_TYPE = {BondKind.SINGLE: 1, BondKind.DOUBLE: 2, BondKind.TRIPLE: 3,
              BondKind.WEDGE_UP: 1, BondKind.WEDGE_DOWN: 1, BondKind.WAVY: 1}
_BOND_STEREO = {BondKind.WEDGE_UP: 1, BondKind.WEDGE_DOWN: 6, BondKind.WAVY: 4}


class MolfileError(ValueError):
    """Malformed molfile content; carries the 1-based offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"molfile line {line_no}: {message}")
        self.line_no = line_no


def _int_field(text: str, line_no: int, what: str) -> int:
    try:
        return int(text.strip() or "0")
    except ValueError:
        raise MolfileError(line_no, f"non-numeric {what}: {text.strip()!r}") from None


def _float_field(text: str, line_no: int, what: str) -> float:
    try:
        return float(text.strip())
    except ValueError:
        raise MolfileError(line_no, f"non-numeric {what}: {text.strip()!r}") from None


def parse_molfile(text: str) -> MolGraph:
    lines = text.splitlines()
    if len(lines) < 4:
        raise MolfileError(len(lines) or 1, "molfile shorter than header + counts line")
    counts_no = 4
    counts = lines[3]
    if len(counts) < 6:
        raise MolfileError(counts_no, f"counts line too short: {counts!r}")
    n_atoms = _int_field(counts[0:3], counts_no, "atom count")
    n_bonds = _int_field(counts[3:6], counts_no, "bond count")
    if n_atoms < 0 or n_bonds < 0:
        raise MolfileError(counts_no, "negative counts")
    atom_end = 4 + n_atoms
    bond_end = atom_end + n_bonds
    if len(lines) < bond_end:
        raise MolfileError(len(lines), f"expected {n_atoms} atom and {n_bonds} bond lines")

    atoms: list[Atom] = []
    for i in range(4, atom_end):
        line = lines[i]
        no = i + 1
        if len(line) < 34:
            raise MolfileError(no, f"atom line too short: {line!r}")
        x = _float_field(line[0:10], no, "x coordinate")
        y = _float_field(line[10:20], no, "y coordinate")
        symbol = line[31:34].strip()
        if not symbol:
            raise MolfileError(no, "empty element symbol")
        charge = _LEGACY_CHARGE.get(_int_field(line[36:39], no, "charge code") if len(line) >= 39 else 0, 0)
        h_field = _int_field(line[42:45], no, "hydrogen count") if len(line) >= 45 else 0
        explicit_h = h_field - 1 if h_field > 0 else None
        atoms.append(Atom(symbol, charge, explicit_h, (x, y)))

    bonds: list[Bond] = []
    for i in range(atom_end, bond_end):
        line = lines[i]
        no = i + 1
        if len(line) < 9:
            raise MolfileError(no, f"bond line too short: {line!r}")
        a = _int_field(line[0:3], no, "first atom index")
        b = _int_field(line[3:6], no, "second atom index")
        btype = _int_field(line[6:9], no, "bond type")
        stereo = _int_field(line[9:12], no, "bond stereo") if len(line) >= 12 else 0
        if not (1 <= a <= n_atoms and 1 <= b <= n_atoms):
            raise MolfileError(no, f"bond atom index out of range: {a}-{b}")
        if btype == 1:
            kind = {1: BondKind.WEDGE_UP, 6: BondKind.WEDGE_DOWN, 4: BondKind.WAVY}.get(
                stereo, BondKind.SINGLE
            )
        elif btype == 2:
            kind = BondKind.DOUBLE
        elif btype == 3:
            kind = BondKind.TRIPLE
        else:
            raise MolfileError(no, f"unsupported bond type {btype}")
        bonds.append(Bond(a - 1, b - 1, kind))

    # property block: M  CHG pairs override legacy charge codes
    charges: dict[int, int] = {}
    for i in range(bond_end, len(lines)):
        line = lines[i]
        no = i + 1
        if line.startswith("M  END"):
            break
        if line.startswith("M  CHG"):
            count = _int_field(line[6:9], no, "charge entry count")
            for k in range(count):
                base = 9 + 8 * k
                idx = _int_field(line[base : base + 4], no, "charge atom index")
                val = _int_field(line[base + 4 : base + 8], no, "charge value")
                if not 1 <= idx <= n_atoms:
                    raise MolfileError(no, f"charge atom index out of range: {idx}")
                charges[idx - 1] = val
    if charges:
        atoms = [
            Atom(a.element, charges.get(i, a.charge), a.explicit_h, a.position)
            for i, a in enumerate(atoms)
        ]
    return MolGraph(tuple(atoms), tuple(bonds))


def write_molfile(graph: MolGraph, name: str = "") -> str:
    lines = [name, _HEADER_PROGRAM, ""]
    lines.append(f"{len(graph.atoms):3d}{len(graph.bonds):3d}  0  0  0  0  0  0  0  0999 V2000")
    for atom in graph.atoms:
        x, y = atom.position if atom.position is not None else (0.0, 0.0)
        h_field = 0 if atom.explicit_h is None else atom.explicit_h + 1
        lines.append(
            f"{x:10.4f}{y:10.4f}{0.0:10.4f} {atom.element:<3s} 0  0  0{h_field:3d}"
            "  0  0  0  0  0  0  0  0"
        )
    for bond in graph.bonds:
        stereo = _BOND_STEREO.get(bond.kind, 0)
        lines.append(f"{bond.a + 1:3d}{bond.b + 1:3d}{_BOND_TYPE[bond.kind]:3d}{stereo:3d}")
    charged = [(i + 1, a.charge) for i, a in enumerate(graph.atoms) if a.charge != 0]
    for start in range(0, len(charged), 8):
        chunk = charged[start : start + 8]
        lines.append("M  CHG" + f"{len(chunk):3d}" + "".join(f"{i:4d}{q:4d}" for i, q in chunk))
    lines.append("M  END")
    return "\n".join(lines) + "\n"


def write_sdf(records: Iterable[tuple[str, MolGraph]]) -> str:
    """Concatenate (record name, graph) pairs with $$$$ separators."""
    parts = []
    for name, graph in records:
        block = write_molfile(graph, name=name)
        parts.append(block + f"> <id>\n{name}\n\n$$$$\n")
    return "".join(parts)


def parse_sdf(text: str) -> list[tuple[str, MolGraph]]:
    """Split on $$$$ lines; record name is each block's title line."""
    records = []
    block: list[str] = []

    def flush():
        if any(entry.strip() for entry in block):
            name = block[0].strip()
            records.append((name, parse_molfile("\n".join(block))))
        block.clear()

    for line in text.splitlines():
        if line.strip() == "$$$$":
            flush()
        else:
            block.append(line)
    flush()
    return records
