"""Replace a placeholder node with its super-group fragment."""

from __future__ import annotations

import math

from ..chemgraph import Bond, MolGraph
from .interpretation import SuperGroup


class DegreeMismatchError(ValueError):
    """Node degree differs from the fragment's attachment count."""

    def __init__(self, node_index: int, expected: int, actual: int):
        super().__init__(
            f"node {node_index} has degree {actual}, fragment expects {expected}"
        )
        self.node_index = node_index
        self.expected = expected
        self.actual = actual


def _incident_order(graph: MolGraph, node_index: int) -> list[int]:
    """Incident bond indices sorted by outgoing angle; index order when positions miss."""
    incident = [bi for bi, b in enumerate(graph.bonds) if node_index in (b.a, b.b)]
    origin = graph.atoms[node_index].position
    if origin is None:
        return incident

    def angle(bi: int) -> tuple[float, int]:
        other = graph.bonds[bi].other(node_index)
        pos = graph.atoms[other].position
        if pos is None:
            return (math.inf, other)
        return (math.atan2(pos[1] - origin[1], pos[0] - origin[0]), other)

    return sorted(incident, key=angle)


def expand_superatom(graph: MolGraph, node_index: int, interp: SuperGroup) -> MolGraph:
    """Splice the fragment in place of the node; incident bonds go to the
    attachment atoms in angle order.  Fragment atoms inherit the node position."""
    if not 0 <= node_index < len(graph.atoms):
        raise ValueError(f"node index {node_index} out of range")
    incident = _incident_order(graph, node_index)
    if len(incident) != interp.attachment_count:
        raise DegreeMismatchError(node_index, interp.attachment_count, len(incident))

    position = graph.atoms[node_index].position
    old_to_new: dict[int, int] = {}
    atoms = []
    for i, atom in enumerate(graph.atoms):
        if i == node_index:
            continue
        old_to_new[i] = len(atoms)
        atoms.append(atom)
    frag_base = len(atoms)
    atoms.extend(a.moved(position) for a in interp.fragment.atoms)

    bonds = []
    incident_rank = {bi: k for k, bi in enumerate(incident)}
    for bi, bond in enumerate(graph.bonds):
        if bi in incident_rank:
            attach = interp.attachment_indices[incident_rank[bi]] + frag_base
            other = old_to_new[bond.other(node_index)]
            # keep the surviving endpoint first so wedge narrow ends stay put
            if bond.a == node_index:
                bonds.append(Bond(attach, other, bond.kind))
            else:
                bonds.append(Bond(other, attach, bond.kind))
        else:
            bonds.append(Bond(old_to_new[bond.a], old_to_new[bond.b], bond.kind))
    for b in interp.fragment.bonds:
        bonds.append(Bond(b.a + frag_base, b.b + frag_base, b.kind))
    return MolGraph(tuple(atoms), tuple(bonds))
