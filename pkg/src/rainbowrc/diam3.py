"""Nine-color rainbow coloring of bridgeless diameter-3 graphs.

When the graph has an edge ``uv`` lying in no triangle, the vertices are
sorted into classes by how they see ``u`` and ``v``:

* ``A``/``B`` are the other neighbors of ``u``/``v``;
* ``X``/``Y``/``Z`` are the remaining vertices adjacent to ``A`` only,
  ``B`` only, or both;
* everything else is at distance 3 from both ``u`` and ``v`` and is split
  into ``W`` (sees ``X`` and ``Y``), ``I`` (``X`` and ``Z``), ``K`` (``Y``
  and ``Z``) and ``J`` (only ``Z``).

``A``, ``B``, ``X``, ``Y`` and ``J`` are refined further, and a fixed table
of rules then colors the edges between classes. Graphs where every edge is
in a triangle are handed to the 3*rad colorer instead, which needs at most
9 colors because the radius is at most 3.

Each assignment records the rule that made it; a second rule touching an
already colored edge raises :class:`RuleConflict`.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PreconditionError, RuleConflict, VerificationFailure
from .graph import (
    Edge,
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
from .radius import color_by_radius
from .verify import EdgeColoring, require_rainbow

# Finest classes, in the order used for labels.
CLASS_NAMES = (
    "u", "v", "A1", "A2", "A3", "B1", "B2", "B3",
    "X1", "X2", "X3", "X4", "Y1", "Y2", "Y3", "Y4",
    "Z", "W", "I", "K", "J0", "J1", "J2", "J3", "J4",
)


@dataclass(frozen=True)
class Diam3Partition:
    graph: Graph
    u: int
    v: int
    classes: dict[str, frozenset[int]]

    def __getitem__(self, name: str) -> frozenset[int]:
        if name in self.classes:
            return self.classes[name]
        # coarse classes are unions of their refinements
        parts = [k for k in self.classes if k[0] == name and k[1:].isdigit()]
        if not parts:
            raise KeyError(name)
        return frozenset().union(*(self.classes[k] for k in parts))

    def label(self, w: int) -> str:
        for name in CLASS_NAMES:
            if w in self.classes[name]:
                return name
        raise KeyError(w)

    def labels(self) -> dict[int, str]:
        return {w: self.label(w) for w in self.graph.vertices()}

    @property
    def D(self) -> frozenset[int]:
        return self["A"] | self["B"] | self["X"] | self["Y"] | self["Z"] | {self.u, self.v}


@dataclass
class PartialColoring:
    """Edge colors under construction, with the rule tag behind each one."""

    colors: dict[Edge, int] = field(default_factory=dict)
    tags: dict[Edge, str] = field(default_factory=dict)

    def assign(self, a: int, b: int, color: int, tag: str) -> None:
        e = edge_id(a, b)
        if e in self.colors:
            raise RuleConflict(e, self.tags[e], tag)
        self.colors[e] = color
        self.tags[e] = tag

    def update(self, other: "PartialColoring") -> None:
        for e, col in other.colors.items():
            self.assign(*e, col, other.tags[e])

    def __contains__(self, e) -> bool:
        return edge_id(*e) in self.colors

    def get(self, a: int, b: int) -> int | None:
        return self.colors.get(edge_id(a, b))

    def to_coloring(self, k: int = 9) -> EdgeColoring:
        return EdgeColoring(dict(self.colors), k=k, provenance=dict(self.tags))


def find_anchor_edge(g: Graph) -> Edge | None:
    """Smallest edge that lies in no triangle, if any."""
    loose = triangle_free_edges(g)
    return min(loose) if loose else None


def _require_diam3(g: Graph) -> None:
    require_connected(g)
    bridges = find_bridges(g)
    if bridges:
        raise PreconditionError("bridge", f"graph has bridge {min(bridges)}")
    diam = metrics(g).diameter
    if diam != 3:
        raise PreconditionError("diameter", f"diameter is {diam}, not 3")


def _nbhd(g: Graph, S) -> set[int]:
    out: set[int] = set()
    for s in S:
        out |= g.adj[s]
    return out


def diam3_partition(g: Graph, uv: Edge) -> Diam3Partition:
    _require_diam3(g)
    u, v = uv
    if not g.has_edge(u, v):
        raise PreconditionError("anchor", f"{uv} is not an edge")
    if g.adj[u] & g.adj[v]:
        raise PreconditionError("anchor", f"{uv} lies in a triangle")
    adj = g.adj
    A = set(adj[u]) - {v}
    B = set(adj[v]) - {u}
    core = A | B | {u, v}
    NA, NB = _nbhd(g, A), _nbhd(g, B)
    X = (NA - NB) - core
    Y = (NB - NA) - core
    Z = (NA & NB) - core
    D = core | X | Y | Z
    NX, NY, NZ = _nbhd(g, X), _nbhd(g, Y), _nbhd(g, Z)
    W = (NX & NY) - D
    I = (NX & NZ) - W - D
    K = (NY & NZ) - W - I - D
    J = set(g.vertices()) - D - W - I - K

    def split3(S, hub_side):
        first = {s for s in S if adj[s] & hub_side}
        rest = S - first
        second = rest - isolated_in(g, rest)
        return first, second, rest - second

    A1, A2, A3 = split3(A, B | X | Z)
    B1, B2, B3 = split3(B, A | Y | Z)
    X1, X2, rest = split3(X, Y | Z | I | W)
    X3 = {x for x in rest if adj[x] <= A}
    X4 = rest - X3
    Y1, Y2, rest = split3(Y, X | Z | K | W)
    Y3 = {y for y in rest if adj[y] <= B}
    Y4 = rest - Y3

    J0 = J - isolated_in(g, J)
    left = J - J0
    J1 = {x for x in left if adj[x] & K}
    J2 = {x for x in left - J1 if adj[x] & I}
    J3 = {x for x in left - J1 - J2 if adj[x] & W}
    J4 = left - J1 - J2 - J3

    found = dict(
        u={u}, v={v}, A1=A1, A2=A2, A3=A3, B1=B1, B2=B2, B3=B3,
        X1=X1, X2=X2, X3=X3, X4=X4, Y1=Y1, Y2=Y2, Y3=Y3, Y4=Y4,
        Z=Z, W=W, I=I, K=K, J0=J0, J1=J1, J2=J2, J3=J3, J4=J4,
    )
    return Diam3Partition(g, u, v, {k: frozenset(found[k]) for k in CLASS_NAMES})


def partition_violations(p: Diam3Partition) -> list[str]:
    """Checks the class definitions promise; an empty list means all hold."""
    g, adj = p.graph, p.graph.adj
    problems = []
    seen: set[int] = set()
    for name in CLASS_NAMES:
        clash = seen & p.classes[name]
        if clash:
            problems.append(f"{name} overlaps earlier classes at {sorted(clash)}")
        seen |= p.classes[name]
    if seen != set(g.vertices()):
        problems.append(f"classes miss {sorted(set(g.vertices()) - seen)}")
    if p["A"] & p["B"]:
        problems.append("A and B intersect")
    far = set(g.vertices()) - p.D
    if far:
        du, dv = bfs_distances(g, p.u), bfs_distances(g, p.v)
        for w in sorted(far):
            if du[w] != 3 or dv[w] != 3:
                problems.append(f"vertex {w} outside D is not at distance 3 from u and v")
    for low, high in (("A3", "A1"), ("B3", "B1"), ("X4", "X1"), ("Y4", "Y1")):
        for w in sorted(p[low]):
            if not adj[w] & p[high]:
                problems.append(f"{w} in {low} has no neighbor in {high}")
    for w in sorted(p["J"]):
        if not adj[w] & p["Z"]:
            problems.append(f"{w} in J has no neighbor in Z")
    return problems


def _edges_between(g: Graph, S, T):
    T = set(T)
    for s in sorted(S):
        for t in sorted(g.adj[s] & T):
            yield s, t


def _edges_within(g: Graph, S):
    S = set(S)
    for a, b in g.edges:
        if a in S and b in S:
            yield a, b


def lemma1_coloring(
    g: Graph, S, T, alpha: int, beta: int, gamma: int,
    forest_only: bool = False, tag: str = "lemma1",
) -> PartialColoring:
    """Two-route coloring of ``G[S]`` plus the edges from ``S`` to ``T``.

    With ``(X, Y)`` the forest bipartition of ``S``: edges ``T``-``X`` get
    ``alpha``, ``T``-``Y`` get ``beta`` and edges of ``G[S]`` get ``gamma``
    (only the forest edges when ``forest_only``). Every ``s`` in ``S`` then
    reaches ``T`` by one edge of color ``alpha`` or ``beta``, and by a forest
    edge followed by an edge of the other color.
    """
    S, T = set(S), set(T)
    if S & T:
        raise PreconditionError("lemma1", "S and T intersect")
    for s in sorted(S):
        if not g.adj[s] & T:
            raise PreconditionError("lemma1", f"{s} has no neighbor in T")
    bp = forest_bipartition(g, S)
    pc = PartialColoring()
    for s, t in _edges_between(g, bp.x_part, T):
        pc.assign(s, t, alpha, f"{tag}:alpha")
    for s, t in _edges_between(g, bp.y_part, T):
        pc.assign(s, t, beta, f"{tag}:beta")
    for a, b in _edges_within(g, S):
        if (a, b) in bp.forest:
            pc.assign(a, b, gamma, f"{tag}:forest")
        elif not forest_only:
            pc.assign(a, b, gamma, f"{tag}:gamma")
    return pc


def base_table_coloring(p: Diam3Partition, crossed: bool = True) -> PartialColoring:
    """The fixed class-to-class color table.

    ``crossed`` keeps colors 2 and 3 paired as ``u-A1``/``v-B3`` and
    ``u-A3``/``v-B1``; ``crossed=False`` uses ``u-A1``/``v-B1`` for 2 and
    ``u-A3``/``v-B3`` for 3 instead.
    """
    g = p.graph
    u, v = {p.u}, {p.v}
    pc = PartialColoring()

    def rule(color, tag, S, T):
        for a, b in _edges_between(g, S, T):
            pc.assign(a, b, color, tag)

    def rule_within(color, tag, S):
        for a, b in _edges_within(g, S):
            pc.assign(a, b, color, tag)

    pc.assign(p.u, p.v, 1, "1:uv")
    if crossed:
        rule(2, "2:u-A1", u, p["A1"])
        rule(2, "2:v-B3", v, p["B3"])
        rule(3, "3:u-A3", u, p["A3"])
        rule(3, "3:v-B1", v, p["B1"])
    else:
        rule(2, "2:u-A1", u, p["A1"])
        rule(2, "2:v-B1", v, p["B1"])
        rule(3, "3:u-A3", u, p["A3"])
        rule(3, "3:v-B3", v, p["B3"])
    rule(4, "4:A1-X1Z", p["A1"], p["X1"] | p["Z"])
    rule_within(4, "4:G[A1]", p["A1"])
    rule(5, "5:B1-Y1Z", p["B1"], p["Y1"] | p["Z"])
    rule_within(5, "5:G[B1]", p["B1"])
    rule(6, "6:A1-B1", p["A1"], p["B1"])
    rule(6, "6:Z-K", p["Z"], p["K"])
    rule(6, "6:X1-IZWY1", p["X1"], p["I"] | p["Z"] | p["W"] | p["Y1"])
    rule(7, "7:Z-I", p["Z"], p["I"])
    rule(7, "7:Y1-KZW", p["Y1"], p["K"] | p["Z"] | p["W"])
    rule(8, "8:A1-A3", p["A1"], p["A3"])
    rule(8, "8:B1-B3", p["B1"], p["B3"])
    rule(8, "8:X1-X4", p["X1"], p["X4"])
    rule(8, "8:Y1-Y4", p["Y1"], p["Y4"])
    rule(8, "8:J-IKW", p["J"], p["I"] | p["K"] | p["W"])
    rule(9, "9:A1-X4", p["A1"], p["X4"])
    rule(9, "9:B1-Y4", p["B1"], p["Y4"])
    return pc


def _pick_gate(g: Graph, x: int, hubs, far_side) -> tuple[int, str]:
    """Neighbor of ``x`` in ``hubs`` to receive color 7 and why it was chosen."""
    far = set(far_side)
    reach = _nbhd(g, far)
    cands = sorted(g.adj[x] & set(hubs))
    for y in cands:
        if y in reach:
            return y, "adjacent"
    for y in cands:
        if g.adj[y] & reach:
            return y, "two-step"
    return cands[0], "fallback"


def auxiliary_rules(p: Diam3Partition, pc: PartialColoring) -> PartialColoring:
    """Rules that complete the base table; ``pc`` is extended in place and returned."""
    g = p.graph
    adj = g.adj

    # X3 / Y3 gates: one edge to the A1 (B1) side gets 7, the rest 9
    for low, hubs, far, name in (("X3", "A1", "B1", "X3"), ("Y3", "B1", "A1", "Y3")):
        for x in sorted(p[low]):
            gate, why = _pick_gate(g, x, p[hubs], p[far])
            pc.assign(x, gate, 7, f"{name}:gate-{why}")
            for y in sorted(adj[x] & p[hubs]):
                if y != gate:
                    pc.assign(x, y, 9, f"{name}:rest")

    # J vertices without J-neighbors
    for x, z in _edges_between(g, p["J1"] | p["J2"] | p["J3"], p["Z"]):
        pc.assign(x, z, 7, "J123-Z")
    for x in sorted(p["J4"]):
        zs = sorted(adj[x] & p["Z"])
        for i, z in enumerate(zs):
            pc.assign(x, z, 7 if i == 0 else 9, "J4-Z:first" if i == 0 else "J4-Z:rest")

    pc.update(lemma1_coloring(g, p["A2"], {p.u}, 2, 3, 8, tag="lemma1[A2,u]"))
    pc.update(lemma1_coloring(g, p["B2"], {p.v}, 2, 3, 8, tag="lemma1[B2,v]"))
    pc.update(lemma1_coloring(g, p["X2"], p["A1"], 8, 9, 7, forest_only=True,
                              tag="lemma1[X2,A1]"))
    pc.update(lemma1_coloring(g, p["Y2"], p["B1"], 8, 9, 7, forest_only=True,
                              tag="lemma1[Y2,B1]"))
    pc.update(lemma1_coloring(g, p["J0"], p["Z"], 7, 9, 8, tag="lemma1[J0,Z]"))

    for name in ("X2", "Y2"):
        for a, b in _edges_within(g, p[name]):
            if (a, b) not in pc:
                pc.assign(a, b, 4, f"G[{name}]:non-forest")

    # X2-X1 and Y2-Y1: opposite of the color on the vertex's hub edges
    for low, high, hubs in (("X2", "X1", "A1"), ("Y2", "Y1", "B1")):
        for x in sorted(p[low]):
            hub_colors = {pc.get(x, h) for h in adj[x] & p[hubs]}
            flip = 9 if 8 in hub_colors else 8
            for y in sorted(adj[x] & p[high]):
                pc.assign(x, y, flip, f"{low}-{high}:flip")

    for a, b in g.edges:
        if (a, b) not in pc:
            pc.assign(a, b, 9, "leftover")
    return pc


def diam3_construction(
    g: Graph, uv: Edge | None = None, crossed: bool = True
) -> tuple[Diam3Partition, PartialColoring]:
    """Partition plus full rule-tagged coloring, without verification."""
    if uv is None:
        uv = find_anchor_edge(g)
        if uv is None:
            raise PreconditionError("anchor", "every edge lies in a triangle")
    part = diam3_partition(g, uv)
    pc = auxiliary_rules(part, base_table_coloring(part, crossed=crossed))
    return part, pc


def anchor_candidates(g: Graph) -> list[Edge]:
    """Triangle-free edges in canonical order, each tried as ``(u, v)`` then ``(v, u)``."""
    out = []
    for a, b in sorted(triangle_free_edges(g)):
        out += [(a, b), (b, a)]
    return out


def color_diam3(
    g: Graph, crossed: bool = True, verify: bool = True, retry_anchors: bool = True
) -> EdgeColoring:
    """Rainbow coloring with at most 9 colors for a bridgeless diameter-3 graph.

    Falls back to :func:`color_by_radius` when every edge is in a triangle.
    Otherwise the smallest triangle-free edge anchors the construction; if
    that coloring fails verification and ``retry_anchors`` is set, the other
    anchors from :func:`anchor_candidates` are tried in order. When nothing
    verifies, :class:`~rainbowrc.errors.VerificationFailure` is raised for
    the first anchor, carrying the failing pair, the class labels of its
    endpoints and the rules behind nearby edges.
    """
    _require_diam3(g)
    if find_anchor_edge(g) is None:
        return color_by_radius(g, verify=verify)
    anchors = anchor_candidates(g)
    if not verify or not retry_anchors:
        anchors = anchors[:1]
    first_failure = None
    for uv in anchors:
        part, pc = diam3_construction(g, uv, crossed=crossed)
        coloring = pc.to_coloring(9)
        if not verify:
            return coloring
        try:
            require_rainbow(g, coloring, "diam3", labels=part.labels())
        except VerificationFailure as exc:
            if first_failure is None:
                exc.diagnostic["anchor"] = [uv[0] + 1, uv[1] + 1]
                first_failure = exc
            continue
        return coloring
    first_failure.diagnostic["anchors_tried"] = len(anchors)
    raise first_failure
