"""2D coordinate assignment for molecular graphs.

Graphs that already carry positions are only normalized (uniform scale and
translation) so the median bond length becomes 1.0.  Position-free graphs go
through a deterministic force-directed relaxation with an extra term that
pulls rings toward regular polygons.
"""

from __future__ import annotations

import math
import statistics

from molrecon.chemgraph import MolGraph
from molrecon.chemgraph.rings import cycle_basis

MIN_ATOM_DISTANCE = 0.5

_ITERATIONS = 600
_SPRING = 0.32
_REPULSION = 0.26
_RING_PULL = 0.30
_REPULSION_RANGE = 1.65


class LayoutError(ValueError):
    pass


Point = tuple[float, float]


def median_bond_length(graph: MolGraph, coords: list[Point]) -> float:
    lengths = [math.dist(coords[b.a], coords[b.b]) for b in graph.bonds]
    if not lengths:
        return 1.0
    return statistics.median(lengths)


def _normalize(graph: MolGraph, coords: list[Point]) -> list[Point]:
    scale = 1.0
    if graph.bonds:
        med = median_bond_length(graph, coords)
        if med <= 1e-9:
            raise LayoutError("degenerate coordinates: median bond length is zero")
        scale = 1.0 / med
    cx = sum(p[0] for p in coords) / len(coords)
    cy = sum(p[1] for p in coords) / len(coords)
    return [((x - cx) * scale, (y - cy) * scale) for x, y in coords]


def _min_pair_distance(coords: list[Point]) -> float:
    best = math.inf
    for i in range(len(coords)):
        for j in range(i + 1, len(coords)):
            best = min(best, math.dist(coords[i], coords[j]))
    return best


def _ring_targets(ring: list[int], coords: list[Point]) -> list[Point]:
    k = len(ring)
    cx = sum(coords[i][0] for i in ring) / k
    cy = sum(coords[i][1] for i in ring) / k
    radius = 0.5 / math.sin(math.pi / k)
    # keep the ring's current orientation: anchor on the first vertex's angle
    # and preserve the cyclic direction of traversal
    a0 = math.atan2(coords[ring[0]][1] - cy, coords[ring[0]][0] - cx)
    a1 = math.atan2(coords[ring[1]][1] - cy, coords[ring[1]][0] - cx)
    direction = 1.0 if math.sin(a1 - a0) >= 0 else -1.0
    step = direction * 2.0 * math.pi / k
    return [(cx + radius * math.cos(a0 + step * i),
             cy + radius * math.sin(a0 + step * i)) for i in range(k)]


def _relax_component(graph: MolGraph, nodes: list[int]) -> dict[int, Point]:
    if len(nodes) == 1:
        return {nodes[0]: (0.0, 0.0)}
    local = {v: i for i, v in enumerate(nodes)}
    n = len(nodes)
    bonds = [(local[b.a], local[b.b]) for b in graph.bonds
             if b.a in local and b.b in local]
    rings = [[local[v] for v in ring]
             for ring in cycle_basis(n, bonds) if 3 <= len(ring) <= 8]

    radius = max(1.0, n / (2.0 * math.pi))
    pos = [(radius * math.cos(2.0 * math.pi * i / n),
            radius * math.sin(2.0 * math.pi * i / n)) for i in range(n)]

    for it in range(_ITERATIONS):
        step = 0.9 * (1.0 - it / _ITERATIONS) + 0.1
        force = [[0.0, 0.0] for _ in range(n)]
        for a, b in bonds:
            dx = pos[b][0] - pos[a][0]
            dy = pos[b][1] - pos[a][1]
            d = math.hypot(dx, dy) or 1e-9
            f = _SPRING * (d - 1.0) / d
            force[a][0] += f * dx
            force[a][1] += f * dy
            force[b][0] -= f * dx
            force[b][1] -= f * dy
        for i in range(n):
            for j in range(i + 1, n):
                dx = pos[j][0] - pos[i][0]
                dy = pos[j][1] - pos[i][1]
                d = math.hypot(dx, dy)
                if d >= _REPULSION_RANGE:
                    continue
                if d < 1e-9:
                    # deterministic symmetry breaking for coincident points
                    dx, dy, d = 1e-3 * (i + 1), 1e-3 * (j + 1), 1e-3
                f = _REPULSION * (_REPULSION_RANGE - d) / d
                force[i][0] -= f * dx
                force[i][1] -= f * dy
                force[j][0] += f * dx
                force[j][1] += f * dy
        for ring in rings:
            for v, target in zip(ring, _ring_targets(ring, pos)):
                force[v][0] += _RING_PULL * (target[0] - pos[v][0])
                force[v][1] += _RING_PULL * (target[1] - pos[v][1])
        pos = [(p[0] + step * f[0], p[1] + step * f[1])
               for p, f in zip(pos, force)]

    return {v: pos[local[v]] for v in nodes}


def layout_2d(graph: MolGraph, name: str | None = None) -> list[Point]:
    """Coordinates with median bond length 1.0, centered on the origin.

    Raises LayoutError when atoms cannot be separated by at least 0.5 bond
    lengths (the message names the molecule when a name is given).
    """
    if graph.n_atoms == 0:
        raise LayoutError("cannot lay out an empty graph")

    if graph.has_all_positions:
        coords = _normalize(graph, [a.position for a in graph.atoms])
    else:
        placed: dict[int, Point] = {}
        x_cursor = 0.0
        for comp in graph.connected_components():
            nodes = sorted(comp)
            local = _relax_component(graph, nodes)
            xs = [p[0] for p in local.values()]
            ys = [p[1] for p in local.values()]
            shift = x_cursor - min(xs)
            cy = (min(ys) + max(ys)) / 2.0
            for v, (x, y) in local.items():
                placed[v] = (x + shift, y - cy)
            x_cursor += (max(xs) - min(xs)) + 1.5
        coords = _normalize(graph, [placed[i] for i in range(graph.n_atoms)])

    if graph.n_atoms > 1 and _min_pair_distance(coords) < MIN_ATOM_DISTANCE:
        label = name if name else "molecule"
        raise LayoutError(
            f"layout failed for {label}: atoms closer than "
            f"{MIN_ATOM_DISTANCE} after relaxation")
    return coords


def _orient(ax: float, ay: float, bx: float, by: float, cx: float, cy: float) -> float:
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def _segments_cross(p: Point, q: Point, r: Point, s: Point) -> bool:
    """Proper interior intersection of segments pq and rs."""
    d1 = _orient(*p, *q, *r)
    d2 = _orient(*p, *q, *s)
    d3 = _orient(*r, *s, *p)
    d4 = _orient(*r, *s, *q)
    return ((d1 > 0) != (d2 > 0) and (d3 > 0) != (d4 > 0)
            and d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0)


def crossing_bond_pairs(graph: MolGraph, coords: list[Point]) -> list[tuple[int, int]]:
    """Bond index pairs whose segments cross away from any shared atom."""
    out = []
    for i in range(graph.n_bonds):
        bi = graph.bonds[i]
        for j in range(i + 1, graph.n_bonds):
            bj = graph.bonds[j]
            if {bi.a, bi.b} & {bj.a, bj.b}:
                continue
            if _segments_cross(coords[bi.a], coords[bi.b],
                               coords[bj.a], coords[bj.b]):
                out.append((i, j))
    return out
