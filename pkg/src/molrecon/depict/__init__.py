"""Annotated raster depiction of molecular graphs."""

from __future__ import annotations

from molrecon.chemgraph import MolGraph
from molrecon.depict.collapse import CollapsedGroup, collapse_superatoms
from molrecon.depict.layout import (LayoutError, crossing_bond_pairs, layout_2d,
                                    median_bond_length)
from molrecon.depict.render import (Annotation, Depiction, DepictionError,
                                    NoiseSpec, StyleParams, atom_label_text,
                                    depiction_to_annotation_dict, pgm_bytes,
                                    png_bytes, render_depiction)
from molrecon.labelparse import FragmentTable, builtin_fragment_table

__all__ = [
    "Annotation",
    "CollapsedGroup",
    "Depiction",
    "DepictionError",
    "LayoutError",
    "NoiseSpec",
    "StyleParams",
    "atom_label_text",
    "collapse_superatoms",
    "crossing_bond_pairs",
    "depict",
    "depiction_to_annotation_dict",
    "layout_2d",
    "median_bond_length",
    "pgm_bytes",
    "png_bytes",
    "render_depiction",
]


def depict(graph: MolGraph, style: StyleParams | None = None,
           table: FragmentTable | None = None,
           name: str | None = None) -> Depiction:
    """Full pipeline: optional superatom collapse, layout, then raster.

    The returned depiction's annotations reference the ORIGINAL graph's atom
    and bond indices even when groups were collapsed.
    """
    style = style or StyleParams()
    display, label_map = graph, {}
    if style.superatom_collapse_prob > 0.0:
        display, label_map = collapse_superatoms(
            graph, table or builtin_fragment_table(),
            style.superatom_collapse_prob, style.seed)

    coords = layout_2d(display, name=name)

    hidden = {v for g in label_map.values() for v in g.hidden_atoms}
    survivors = [i for i in range(graph.n_atoms) if i not in hidden]
    source_ids = {di: si for di, si in enumerate(survivors)}
    text_labels = {g.node_index: (g.key, g.hidden_atoms)
                   for g in label_map.values()}

    return render_depiction(display, coords, style,
                            text_labels=text_labels,
                            source_atom_ids=source_ids,
                            crossings=tuple(crossing_bond_pairs(display, coords)))
