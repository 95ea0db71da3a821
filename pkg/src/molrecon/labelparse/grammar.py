"""Text-label grammar.

Resolution order: exact table hit, then single-atom label, then a
linear-formula reading, then Unparsed.  Labels drawn on the left of the
skeleton read outward (e.g. "H2N", "EtO"), so each stage retries the
mirrored token sequence before giving up.  parse_label never raises.
"""

from __future__ import annotations

import re

from ..chemgraph import Atom, Bond, BondKind, MolGraph, default_valence
from .fragments import FragmentTable, builtin_fragment_table
from .interpretation import AtomLabel, SuperGroup, TextInterpretation, Unparsed

MAX_LABEL_LEN = 32

_ELEMENTS = ("Cl", "Br", "Si", "B", "C", "N", "O", "P", "S", "F", "I", "H")
_CHARGE_VALUE = {"+": 1, "-": -1, "2+": 2, "2-": -2, "+2": 2, "-2": -2}

_ELEM_ALT = "Cl|Br|Si|[BCNOPSFIH]"
_CHARGE_ALT = r"\+2|-2|2\+|2-|\+|-"
_FORWARD = re.compile(rf"^({_ELEM_ALT})(?:H(\d)?)?({_CHARGE_ALT})?$")
_MIRRORED = re.compile(rf"^({_CHARGE_ALT})?(?:(\d)?H)?({_ELEM_ALT})$")


def _atom_label(text: str) -> AtomLabel | None:
    m = _FORWARD.match(text)
    if m:
        element, h_digit, charge = m.group(1), m.group(2), m.group(3)
        explicit_h = None
        if "H" in text[len(element):] or h_digit is not None:
            explicit_h = int(h_digit) if h_digit is not None else 1
        return AtomLabel(element, _CHARGE_VALUE.get(charge or "", 0), explicit_h)
    m = _MIRRORED.match(text)
    if m:
        charge, h_digit, element = m.group(1), m.group(2), m.group(3)
        rest = text[: len(text) - len(element)]
        explicit_h = None
        if "H" in rest:
            explicit_h = int(h_digit) if h_digit is not None else 1
        return AtomLabel(element, _CHARGE_VALUE.get(charge or "", 0), explicit_h)
    return None


def _tokenize_formula(text: str, table: FragmentTable | None) -> list[tuple[str, int]] | None:
    """Longest-match split into (unit, count) tokens.

    A unit is an element symbol or a table abbreviation; count is a trailing
    digit run (default 1).  Ties go to the element reading.  Returns None
    when any character fails to match.
    """
    keys = list(table.keys()) if table is not None else []
    tokens: list[tuple[str, int]] = []
    i = 0
    n = len(text)
    while i < n:
        unit = None
        for sym in _ELEMENTS:
            if text.startswith(sym, i) and (unit is None or len(sym) > len(unit)):
                unit = sym
        for key in keys:
            if text.startswith(key, i) and (unit is None or len(key) > len(unit)):
                unit = key
        if unit is None:
            return None
        i += len(unit)
        digits = ""
        while i < n and text[i].isdigit():
            digits += text[i]
            i += 1
        tokens.append((unit, int(digits) if digits else 1))
    return tokens


def _fold_hydrogens(tokens: list[tuple[str, int]]) -> list[tuple[str, int, int | None]] | None:
    """Attach each H run to its element: the one just before it, else the one after.

    Returns (unit, count, h) triples with the H tokens folded away, so the
    binding survives mirroring.
    """
    units: list[tuple[str, int, int | None]] = []
    pending_h: int | None = None
    for unit, count in tokens:
        if unit == "H" and len(tokens) > 1:
            if count > 9:
                return None
            if units and units[-1][2] is None and units[-1][0] in _ELEMENTS and units[-1][1] == 1:
                last = units[-1]
                units[-1] = (last[0], last[1], count)
            elif pending_h is None:
                pending_h = count
            else:
                return None
            continue
        h = None
        if pending_h is not None:
            if unit not in _ELEMENTS or count != 1:
                return None
            h = pending_h
            pending_h = None
        units.append((unit, count, h))
    if pending_h is not None or not units:
        return None
    return units


def _chain_from_units(
    units: list[tuple[str, int, int | None]], table: FragmentTable | None
) -> TextInterpretation | None:
    """Read units as a chain bonded left to right; first chain atom is the attachment."""
    atoms: list[Atom] = []
    bonds: list[Bond] = []
    head: int | None = None
    used_fragment = False

    for pos, (unit, count, h) in enumerate(units):
        is_last = pos == len(units) - 1
        if unit in _ELEMENTS:
            if unit == "H" or not 1 <= count <= 12:
                return None
            if head is None or count == 1:
                # a leading repeat is a chain: C3 means C-C-C
                if count > 1 and h is not None:
                    return None
                for _ in range(count):
                    atoms.append(Atom(unit, explicit_h=h))
                    if head is not None:
                        bonds.append(Bond(head, len(atoms) - 1, BondKind.SINGLE))
                    head = len(atoms) - 1
            else:
                # mid-chain repeats hang off the current head: CCl3
                if h is not None:
                    return None
                for _ in range(count):
                    atoms.append(Atom(unit))
                    bonds.append(Bond(head, len(atoms) - 1, BondKind.SINGLE))
            continue
        group = table.lookup(unit) if table is not None else None
        if group is None:
            return None
        # abbreviations are only valid at the end of a chain
        if not is_last or count != 1 or h is not None or group.attachment_count != 1:
            return None
        if head is None:
            return None  # a lone abbreviation is an exact table hit, not a formula
        offset = len(atoms)
        atoms.extend(group.fragment.atoms)
        for b in group.fragment.bonds:
            bonds.append(Bond(b.a + offset, b.b + offset, b.kind))
        bonds.append(Bond(head, group.attachment_indices[0] + offset, BondKind.SINGLE))
        used_fragment = True

    graph = MolGraph(tuple(atoms), tuple(bonds))
    # every atom must fit its valence; the attachment needs one spare slot
    for i in range(len(graph.atoms)):
        cap = default_valence(graph.atoms[i].element, graph.atoms[i].charge)
        load = graph.bond_order_sum(i) + (graph.atoms[i].explicit_h or 0)
        if i == 0:
            load += 1
        if load > cap:
            return None
    if len(graph.atoms) == 1 and not used_fragment:
        only = graph.atoms[0]
        return AtomLabel(only.element, only.charge, only.explicit_h)
    return SuperGroup("formula", graph, (0,))


def _formula(text: str, table: FragmentTable | None) -> TextInterpretation | None:
    tokens = _tokenize_formula(text, table)
    if tokens is None:
        return None
    units = _fold_hydrogens(tokens)
    if units is None:
        return None
    forward = _chain_from_units(units, table)
    if forward is not None:
        return forward
    return _chain_from_units(list(reversed(units)), table)


def parse_label(text: str, table: FragmentTable | None = None) -> TextInterpretation:
    """Total: every string maps to AtomLabel, SuperGroup, or Unparsed."""
    if table is None:
        table = builtin_fragment_table()
    stripped = text.strip()
    if not stripped or len(stripped) > MAX_LABEL_LEN:
        return Unparsed(text)
    hit = table.lookup(stripped)
    if hit is not None:
        return hit
    label = _atom_label(stripped)
    if label is not None:
        return label
    formula = _formula(stripped, table)
    if formula is not None:
        return formula
    return Unparsed(text)
