"""Simple undirected graphs and the structural primitives the colorers use.

Vertices are dense integer ids ``0..n-1``. Edges are stored as canonical
pairs ``(min, max)`` in ascending order, so iteration order is stable and
every derived object is reproducible.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import GraphError, PreconditionError

log = logging.getLogger(__name__)

Edge = tuple[int, int]


def edge_id(u: int, v: int) -> Edge:
    """Canonical ``(min, max)`` form of an undirected edge."""
    if u == v:
        raise GraphError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...]
    adj: tuple[frozenset[int], ...] = field(repr=False, compare=False)
    duplicates: int = field(default=0, repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def vertices(self) -> range:
        return range(self.n)


def build_graph(n: int, edge_list: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph on ``n`` vertices.

    Self-loops and out-of-range endpoints raise :class:`GraphError`.
    Repeated edges are merged; the number merged is kept in
    ``Graph.duplicates`` and logged as a warning.
    """
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    seen: set[Edge] = set()
    dups = 0
    for u, v in edge_list:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        e = edge_id(u, v)
        if e in seen:
            dups += 1
        seen.add(e)
    if dups:
        log.warning("merged %d duplicate edge(s)", dups)
    edges = tuple(sorted(seen))
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, edges, tuple(frozenset(s) for s in nbrs), dups)


# -- metrics -----------------------------------------------------------------

def bfs_distances(g: Graph, source: int) -> list[int]:
    """Hop distances from ``source``; unreachable vertices get -1."""
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return min(bfs_distances(g, 0)) >= 0


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise PreconditionError("disconnected", "graph is not connected")


@dataclass(frozen=True)
class MetricSummary:
    eccentricity: tuple[int, ...]
    radius: int
    diameter: int
    centers: tuple[int, ...]


def metrics(g: Graph) -> MetricSummary:
    """Eccentricities, radius, diameter and centers of a connected graph."""
    if g.n == 0:
        raise PreconditionError("empty", "graph has no vertices")
    ecc = []
    for s in g.vertices():
        dist = bfs_distances(g, s)
        if min(dist) < 0:
            raise PreconditionError("disconnected", "graph is not connected")
        ecc.append(max(dist))
    rad = min(ecc)
    return MetricSummary(
        eccentricity=tuple(ecc),
        radius=rad,
        diameter=max(ecc),
        centers=tuple(v for v in g.vertices() if ecc[v] == rad),
    )


# -- structure ---------------------------------------------------------------

def find_bridges(g: Graph) -> set[Edge]:
    """Cut edges, by an iterative low-link depth-first search."""
    disc = [-1] * g.n
    low = [0] * g.n
    bridges: set[Edge] = set()
    counter = 0
    for root in g.vertices():
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = counter
        counter += 1
        # frames: (vertex, parent, iterator over sorted neighbors)
        stack = [(root, -1, iter(sorted(g.adj[root])))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if disc[w] < 0:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, v, iter(sorted(g.adj[w]))))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent >= 0:
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    bridges.add(edge_id(parent, v))
    return bridges


def triangle_free_edges(g: Graph) -> set[Edge]:
    """Edges ``uv`` with no common neighbor of ``u`` and ``v``."""
    return {(u, v) for u, v in g.edges if not (g.adj[u] & g.adj[v])}


def induced_subgraph(g: Graph, S: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """``G[S]`` relabelled to ``0..|S|-1`` in ascending order of old id."""
    verts = sorted(set(S))
    mapping = {old: new for new, old in enumerate(verts)}
    keep = set(verts)
    edges = [(mapping[u], mapping[v]) for u, v in g.edges if u in keep and v in keep]
    return build_graph(len(verts), edges), mapping


def isolated_in(g: Graph, S: Iterable[int]) -> set[int]:
    S = set(S)
    return {v for v in S if not (g.adj[v] & S)}


@dataclass(frozen=True)
class ForestBipartition:
    forest: frozenset[Edge]
    x_part: frozenset[int]
    y_part: frozenset[int]

    def part_of(self, v: int) -> str:
        return "X" if v in self.x_part else "Y"


def forest_bipartition(g: Graph, S: Iterable[int]) -> ForestBipartition:
    """Spanning forest of ``G[S]`` and the 2-coloring of that forest.

    Components are visited in ascending order of their smallest vertex; each
    is spanned by a BFS tree rooted at that vertex, and the root goes to the
    X part. Raises :class:`PreconditionError` if ``G[S]`` has an isolated
    vertex.
    """
    S = set(S)
    lonely = isolated_in(g, S)
    if lonely:
        raise PreconditionError(
            "isolated_vertex", f"G[S] has isolated vertices {sorted(lonely)}"
        )
    depth: dict[int, int] = {}
    forest: set[Edge] = set()
    for root in sorted(S):
        if root in depth:
            continue
        depth[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in sorted(g.adj[x] & S):
                if y not in depth:
                    depth[y] = depth[x] + 1
                    forest.add(edge_id(x, y))
                    queue.append(y)
    xs = frozenset(v for v, d in depth.items() if d % 2 == 0)
    return ForestBipartition(frozenset(forest), xs, frozenset(S - xs))


def line_graph(g: Graph) -> tuple[Graph, dict[Edge, int]]:
    """Line graph; vertex ``i`` of the result is ``g.edges[i]``."""
    index = {e: i for i, e in enumerate(g.edges)}
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        incident[u].append(i)
        incident[v].append(i)
    pairs = []
    for ids in incident:
        for a in range(len(ids)):
            for b in range(a + 1, len(ids)):
                pairs.append((ids[a], ids[b]))
    return build_graph(g.m, pairs), index
