"""Rainbow coloring with at most 3*rad(G) colors.

Applies to bridgeless graphs in which every edge lies in a triangle. Layer
``i`` of the BFS decomposition around a center owns the color triple
``(3i-2, 3i-1, 3i)``; every vertex of layer ``i`` then has two ways down to
layer ``i-1`` that use disjoint parts of the triple, which is what lets two
descents to the center be glued into one rainbow path.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from .families import gen_example1
from .graph import (
    Edge,
    ForestBipartition,
    Graph,
    bfs_distances,
    edge_id,
    find_bridges,
    forest_bipartition,
    isolated_in,
    metrics,
    require_connected,
    triangle_free_edges,
)
from .verify import EdgeColoring, require_rainbow


@dataclass(frozen=True)
class LayeredDecomposition:
    center: int
    layers: tuple[frozenset[int], ...]  # layers[0] == {center}
    isolated: tuple[frozenset[int], ...]  # isolated[i] within G[layers[i]]
    bipartitions: tuple[ForestBipartition | None, ...]

    @property
    def depth(self) -> int:
        return len(self.layers) - 1

    def layer_of(self, v: int) -> int:
        for i, layer in enumerate(self.layers):
            if v in layer:
                return i
        raise KeyError(v)


def layered_decomposition(g: Graph, x: int) -> LayeredDecomposition:
    require_connected(g)
    dist = bfs_distances(g, x)
    depth = max(dist)
    layers = [set() for _ in range(depth + 1)]
    for v, d in enumerate(dist):
        layers[d].add(v)
    isolated = [frozenset()]
    parts: list[ForestBipartition | None] = [None]
    for i in range(1, depth + 1):
        z = isolated_in(g, layers[i])
        isolated.append(frozenset(z))
        rest = layers[i] - z
        parts.append(forest_bipartition(g, rest) if rest else ForestBipartition(
            frozenset(), frozenset(), frozenset()))
    return LayeredDecomposition(
        x, tuple(frozenset(s) for s in layers), tuple(isolated), tuple(parts)
    )


def layer_invariant_violations(g: Graph, dec: LayeredDecomposition) -> list[str]:
    """Structural facts the 3*rad construction relies on; empty when all hold."""
    problems = []
    for i in range(1, dec.depth + 1):
        below = dec.layers[i - 1]
        for v in sorted(dec.layers[i]):
            back = g.adj[v] & below
            if not back:
                problems.append(f"vertex {v} in layer {i} has no neighbor in layer {i - 1}")
        if i == 1 and dec.isolated[1]:
            problems.append(f"layer 1 has isolated vertices {sorted(dec.isolated[1])}")
        for z in sorted(dec.isolated[i]):
            if len(g.adj[z] & below) < 2:
                problems.append(f"isolated vertex {z} of layer {i} has < 2 back-neighbors")
    return problems


def _check_radius_preconditions(g: Graph) -> None:
    require_connected(g)
    bridges = find_bridges(g)
    if bridges:
        raise PreconditionError("bridge", f"graph has bridge {min(bridges)}")
    loose = triangle_free_edges(g)
    if loose:
        raise PreconditionError(
            "triangle_free_edge", f"edge {min(loose)} lies in no triangle"
        )


def color_by_radius(g: Graph, verify: bool = True) -> EdgeColoring:
    """Rainbow coloring with at most ``3 * rad(g)`` colors.

    The smallest-id center anchors the layers. For layer ``i`` with forest
    parts ``X_i``/``Y_i`` and isolated set ``Z_i``: back-edges into ``X_i``
    take ``3i-2`` and into ``Y_i`` take ``3i-1``; each ``z`` in ``Z_i`` sends
    ``3i-2`` to its smallest back-neighbor and ``3i-1`` to the others; every
    edge inside the layer takes ``3i``.
    The result carries a ``provenance`` map from edge to rule tag.
    """
    _check_radius_preconditions(g)
    center = min(metrics(g).centers)
    dec = layered_decomposition(g, center)
    colors: dict[Edge, int] = {}
    tags: dict[Edge, str] = {}

    def put(e, col, tag):
        colors[e] = col
        tags[e] = tag

    for i in range(1, dec.depth + 1):
        a, b, c = 3 * i - 2, 3 * i - 1, 3 * i
        layer, below = dec.layers[i], dec.layers[i - 1]
        bp = dec.bipartitions[i]
        for w in sorted(layer):
            back = sorted(g.adj[w] & below)
            if w in dec.isolated[i]:
                put(edge_id(w, back[0]), a, f"L{i}:isolated-first")
                for p in back[1:]:
                    put(edge_id(w, p), b, f"L{i}:isolated-rest")
            elif w in bp.x_part:
                for p in back:
                    put(edge_id(w, p), a, f"L{i}:back-X")
            else:
                for p in back:
                    put(edge_id(w, p), b, f"L{i}:back-Y")
        for u, v in g.edges:
            if u in layer and v in layer:
                e = (u, v)
                if e in bp.forest:
                    tag = "forest"
                elif bp.part_of(u) != bp.part_of(v):
                    tag = "cross"
                else:
                    tag = "leftover"
                put(e, c, f"L{i}:{tag}")

    coloring = EdgeColoring(colors, k=max(3 * dec.depth, 1), provenance=tags)
    if verify:
        require_rainbow(g, coloring, "radius")
    return coloring


def example1_explicit_coloring(r: int, t: int, graph: Graph | None = None) -> EdgeColoring:
    """The hand-built 3r coloring of the ``gen_example1(r, t)`` graph.

    Along each branch, step ``j -> j+1`` uses the triple ``3j+1`` (path
    edge), ``3j+2`` (root side of the apex) and ``3j+3`` (far side of the
    apex).
    """
    fam = gen_example1(r, t)
    if graph is not None and graph != fam.graph:
        raise ValueError(f"graph is not the example-1 graph with r={r}, t={t}")
    colors = {}
    for i in range(1, t + 1):
        prev = 0
        for j in range(r):
            u = fam.vertex(f"u{i}.{j + 1}")
            v = fam.vertex(f"v{i}.{j + 1}")
            colors[edge_id(prev, u)] = 3 * j + 1
            colors[edge_id(prev, v)] = 3 * j + 2
            colors[edge_id(v, u)] = 3 * j + 3
            prev = u
    return EdgeColoring(colors, k=3 * r)
