"""The three possible readings of a text label."""

from __future__ import annotations

from dataclasses import dataclass

from ..chemgraph import MolGraph


@dataclass(frozen=True)
class AtomLabel:
    """A single atom: element symbol, formal charge, optional pinned H count."""

    element: str
    formal_charge: int = 0
    explicit_h: int | None = None


@dataclass(frozen=True)
class SuperGroup:
    """A multi-atom fragment standing behind an abbreviation.

    `fragment` contains no attachment stubs; `attachment_indices` are the
    fragment atoms that receive the incident bonds, in stub order.
    """

    key: str
    fragment: MolGraph
    attachment_indices: tuple[int, ...]

    def __post_init__(self):
        if not self.attachment_indices:
            raise ValueError(f"super group {self.key!r} has no attachment point")
        for idx in self.attachment_indices:
            if not 0 <= idx < len(self.fragment.atoms):
                raise ValueError(f"super group {self.key!r} attachment index {idx} out of range")

    @property
    def attachment_count(self) -> int:
        return len(self.attachment_indices)


@dataclass(frozen=True)
class Unparsed:
    """Grammar gave up; construction turns this into a diagnostic."""

    raw: str


TextInterpretation = AtomLabel | SuperGroup | Unparsed
