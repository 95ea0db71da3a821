"""Superatom abbreviation table: load, validate, look up."""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources
from pathlib import Path

from ..chemgraph import Bond, MolGraph, SmilesError, parse_smiles
from .interpretation import SuperGroup

# single atom labels must stay in the grammar's hands, never in the table
_ATOM_LABEL_SHAPED = re.compile(
    r"^(Cl|Br|Si|[BCNOPSFIH])(H\d?)?(\+2|-2|2\+|2-|\+|-)?$"
)


class FragmentTableError(ValueError):
    """Bad table content; carries the 1-based line number when file-sourced."""

    def __init__(self, message: str, line_no: int | None = None):
        prefix = f"fragment table line {line_no}: " if line_no is not None else "fragment table: "
        super().__init__(prefix + message)
        self.line_no = line_no


def split_fragment(marked: MolGraph) -> tuple[MolGraph, tuple[int, ...]]:
    """Drop `*` stub atoms; return the bare fragment and the stubs' neighbor indices."""
    stars = [i for i, a in enumerate(marked.atoms) if a.element == "*"]
    if not stars:
        raise ValueError("fragment has no * attachment marker")
    attach_old = []
    for s in stars:
        neighbors = [b.other(s) for b in marked.bonds if s in (b.a, b.b)]
        if len(neighbors) != 1:
            raise ValueError("each * marker must have exactly one neighbor")
        if marked.atoms[neighbors[0]].element == "*":
            raise ValueError("* markers must not bond to each other")
        attach_old.append(neighbors[0])
    star_set = set(stars)
    old_to_new = {}
    kept = []
    for i, atom in enumerate(marked.atoms):
        if i not in star_set:
            old_to_new[i] = len(kept)
            kept.append(atom)
    bonds = tuple(
        Bond(old_to_new[b.a], old_to_new[b.b], b.kind)
        for b in marked.bonds
        if b.a not in star_set and b.b not in star_set
    )
    return MolGraph(tuple(kept), bonds), tuple(old_to_new[i] for i in attach_old)


class FragmentTable:
    """Immutable mapping from abbreviation text to its fragment.

    Keys are case-sensitive; aliases resolve to their primary key.
    """

    def __init__(self, rows: list[tuple[str, tuple[str, ...], str]]):
        self._rows = tuple(rows)
        self._groups: dict[str, SuperGroup] = {}
        self._by_text: dict[str, str] = {}
        for key, aliases, smiles in rows:
            fragment, attachments = split_fragment(parse_smiles(smiles))
            self._groups[key] = SuperGroup(key, fragment, attachments)
            for text in (key, *aliases):
                if text in self._by_text:
                    raise FragmentTableError(f"duplicate entry text {text!r}")
                self._by_text[text] = key

    def lookup(self, text: str) -> SuperGroup | None:
        key = self._by_text.get(text)
        return self._groups[key] if key is not None else None

    def __contains__(self, text: str) -> bool:
        return text in self._by_text

    def __len__(self) -> int:
        return len(self._groups)

    def keys(self):
        return self._groups.keys()

    def rows(self) -> tuple[tuple[str, tuple[str, ...], str], ...]:
        """(key, aliases, fragment text) in file order, for dumping."""
        return self._rows

    def group(self, key: str) -> SuperGroup:
        return self._groups[key]


def _parse_rows(text: str, source: str) -> FragmentTable:
    rows: list[tuple[str, tuple[str, ...], str]] = []
    seen: set[str] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise FragmentTableError(
                f"expected 3 tab-separated fields, found {len(parts)}", line_no
            )
        key, alias_field, smiles = (p.strip() for p in parts)
        if not key:
            raise FragmentTableError("empty key", line_no)
        aliases = tuple(a.strip() for a in alias_field.split(",") if a.strip())
        for text_form in (key, *aliases):
            if text_form in seen:
                raise FragmentTableError(f"duplicate key {text_form!r}", line_no)
            if _ATOM_LABEL_SHAPED.match(text_form):
                raise FragmentTableError(
                    f"{text_form!r} collides with the atom-label grammar", line_no
                )
            seen.add(text_form)
        try:
            marked = parse_smiles(smiles)
            split_fragment(marked)
        except (SmilesError, ValueError) as exc:
            raise FragmentTableError(f"bad fragment for {key!r}: {exc}", line_no) from exc
        rows.append((key, aliases, smiles))
    return FragmentTable(rows)


def load_fragment_table(path: str | Path) -> FragmentTable:
    return _parse_rows(Path(path).read_text(encoding="utf-8"), str(path))


@lru_cache(maxsize=1)
def builtin_fragment_table() -> FragmentTable:
    text = resources.files("molrecon.data").joinpath("fragments_builtin.tsv").read_text("utf-8")
    return _parse_rows(text, "builtin")
