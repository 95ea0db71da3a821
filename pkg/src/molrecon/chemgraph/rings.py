"""Small cycle utilities: fundamental cycle basis and fixed-size ring search."""

from __future__ import annotations


def cycle_basis(n: int, edges: list[tuple[int, int]]) -> list[list[int]]:
    """Fundamental cycles from a BFS spanning forest, as atom-index lists."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for ei, (a, b) in enumerate(edges):
        adj[a].append((b, ei))
        adj[b].append((a, ei))
    parent = [-1] * n
    parent_edge = [-1] * n
    depth = [-1] * n
    cycles: list[list[int]] = []
    used_edges: set[int] = set()
    for root in range(n):
        if depth[root] >= 0:
            continue
        depth[root] = 0
        queue = [root]
        while queue:
            v = queue.pop(0)
            for u, ei in adj[v]:
                if depth[u] < 0:
                    depth[u] = depth[v] + 1
                    parent[u] = v
                    parent_edge[u] = ei
                    used_edges.add(ei)
                    queue.append(u)
    for ei, (a, b) in enumerate(edges):
        if ei in used_edges:
            continue
        # walk both endpoints up to their lowest common ancestor
        pa, pb = [a], [b]
        x, y = a, b
        while depth[x] > depth[y]:
            x = parent[x]
            pa.append(x)
        while depth[y] > depth[x]:
            y = parent[y]
            pb.append(y)
        while x != y:
            x = parent[x]
            y = parent[y]
            pa.append(x)
            pb.append(y)
        cycle = pa + pb[-2::-1]
        cycles.append(cycle)
    return cycles


def rings_of_size(n: int, edges: list[tuple[int, int]], size: int) -> list[tuple[int, ...]]:
    """All simple cycles of exactly `size` vertices, deduplicated up to rotation/reflection."""
    adj: list[set[int]] = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    found: set[frozenset[int]] = set()
    rings: list[tuple[int, ...]] = []

    def walk(path: list[int]):
        head = path[-1]
        if len(path) == size:
            if path[0] in adj[head]:
                key = frozenset(path)
                if key not in found:
                    found.add(key)
                    rings.append(tuple(path))
            return
        for nxt in sorted(adj[head]):
            if nxt <= path[0] or nxt in path:
                continue
            walk(path + [nxt])

    for start in range(n):
        walk([start])
    return rings
