"""Graph generators: the two lower-bound families plus seeded random corpora."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import BudgetExhausted, GraphError
from .graph import (
    Edge,
    Graph,
    bfs_distances,
    build_graph,
    edge_id,
    find_bridges,
    triangle_free_edges,
)


@dataclass(frozen=True)
class LabeledFamilyGraph:
    graph: Graph
    labels: dict[int, str]
    branches: list[list[Edge]] = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def vertex(self, label: str) -> int:
        for v, name in self.labels.items():
            if name == label:
                return v
        raise KeyError(label)

    def sidecar(self) -> dict:
        """JSON-ready labels and branch sequences (1-indexed, like the graph files)."""
        return {
            "params": self.params,
            "labels": {str(v + 1): name for v, name in sorted(self.labels.items())},
            "branches": [[[a + 1, b + 1] for a, b in br] for br in self.branches],
        }


def gen_example1(r: int, t: int) -> LabeledFamilyGraph:
    """``t`` triangle-strip branches of length ``r`` glued at a common root.

    Branch ``i`` is the path ``u0, u{i}.1, ..., u{i}.r`` where every path
    edge ``u{i}.(j-1) u{i}.j`` gets a private apex ``v{i}.j``. The root
    ``u0`` is vertex 0 and a center; for ``t >= 2`` the radius is ``r``.
    """
    if r < 1 or t < 1:
        raise GraphError(f"need r >= 1 and t >= 1, got r={r}, t={t}")
    labels = {0: "u0"}
    edges: list[Edge] = []
    branches = []
    for i in range(1, t + 1):
        base = 1 + (i - 1) * 2 * r
        prev = 0
        branch = []
        for j in range(1, r + 1):
            u = base + 2 * (j - 1)
            v = u + 1
            labels[u] = f"u{i}.{j}"
            labels[v] = f"v{i}.{j}"
            edges += [(prev, u), (prev, v), (v, u)]
            branch.append(edge_id(prev, u))
            prev = u
        branches.append(branch)
    g = build_graph(1 + 2 * r * t, edges)
    return LabeledFamilyGraph(g, labels, branches, {"family": "example1", "r": r, "t": t})


def gen_example2(n: int) -> LabeledFamilyGraph:
    """Complete graph ``K_n`` with a 3-edge path hung from every vertex.

    The far ends of all hung paths are one shared vertex ``v``. Vertex ids:
    ``v{i}`` is ``i-1``, ``v{i}.1`` and ``v{i}.2`` follow in pairs from
    ``n``, and ``v`` is ``3n``.
    """
    if n < 3:
        raise GraphError(f"need n >= 3, got {n}")
    hub = 3 * n
    labels = {hub: "v"}
    edges = [(a, b) for a in range(n) for b in range(a + 1, n)]
    branches = []
    for i in range(1, n + 1):
        vi, p1 = i - 1, n + 2 * (i - 1)
        p2 = p1 + 1
        labels[vi] = f"v{i}"
        labels[p1] = f"v{i}.1"
        labels[p2] = f"v{i}.2"
        path = [(vi, p1), (p1, p2), (p2, hub)]
        edges += path
        branches.append([edge_id(*e) for e in path])
    g = build_graph(3 * n + 1, edges)
    return LabeledFamilyGraph(g, labels, branches, {"family": "example2", "n": n})


_MIN_ORDER = {"path": 1, "cycle": 3, "complete": 1, "wheel": 4}


def gen_standard(kind: str, n: int) -> Graph:
    """Path, cycle, complete graph or wheel on ``n`` vertices (wheel hub is 0)."""
    if kind not in _MIN_ORDER:
        raise GraphError(f"unknown kind {kind!r}")
    if n < _MIN_ORDER[kind]:
        raise GraphError(f"{kind} needs at least {_MIN_ORDER[kind]} vertices")
    if kind == "path":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif kind == "cycle":
        edges = [(i, (i + 1) % n) for i in range(n)]
    elif kind == "complete":
        edges = [(a, b) for a in range(n) for b in range(a + 1, n)]
    else:
        rim = n - 1
        edges = [(0, i) for i in range(1, n)]
        edges += [(1 + i, 1 + (i + 1) % rim) for i in range(rim)]
    return build_graph(n, edges)


def _diameter_if_connected(g: Graph) -> int | None:
    diam = 0
    for s in g.vertices():
        d = bfs_distances(g, s)
        if min(d) < 0:
            return None
        diam = max(diam, max(d))
    return diam


def gen_random_bridgeless_diam3(
    n: int,
    edge_prob: float,
    seed: int,
    want_triangle_free_edge: bool = True,
    max_tries: int = 20000,
) -> Graph:
    """Rejection-sample G(n, p) until the graph is bridgeless with diameter 3.

    With ``want_triangle_free_edge`` the sample must also contain an edge
    lying in no triangle. Deterministic for a given seed.
    """
    if n < 5:
        raise GraphError("need n >= 5")
    rng = random.Random(seed)
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    for _ in range(max_tries):
        g = build_graph(n, [e for e in pairs if rng.random() < edge_prob])
        if _diameter_if_connected(g) != 3:
            continue
        if find_bridges(g):
            continue
        if want_triangle_free_edge and not triangle_free_edges(g):
            continue
        return g
    raise BudgetExhausted(
        f"no bridgeless diameter-3 graph in {max_tries} samples "
        f"(n={n}, p={edge_prob}, seed={seed}; acceptance rate 0/{max_tries})"
    )


def gen_random_regular(n: int, d: int, seed: int, max_tries: int = 10000) -> Graph:
    """Random simple ``d``-regular graph from the pairing model with rejection."""
    if d < 3:
        raise GraphError("need d >= 3")
    if (n * d) % 2:
        raise GraphError(f"n*d = {n * d} is odd")
    if d >= n:
        raise GraphError(f"no simple {d}-regular graph on {n} vertices")
    rng = random.Random(seed)
    points = [v for v in range(n) for _ in range(d)]
    for _ in range(max_tries):
        rng.shuffle(points)
        edges = set()
        for a, b in zip(points[::2], points[1::2]):
            if a == b:
                break
            e = edge_id(a, b)
            if e in edges:
                break
            edges.add(e)
        else:
            return build_graph(n, edges)
    raise BudgetExhausted(f"pairing model failed {max_tries} times for n={n}, d={d}")
