"""Edge colorings and rainbow-connectivity checks.

The verifier explores states ``(vertex, set of colors used so far)``. A
state is reachable from ``s`` exactly when some walk from ``s`` with
pairwise distinct edge colors ends there; cutting the loops out of such a
walk leaves a simple path whose colors are a subset, so reaching any state
at ``t`` means a rainbow ``s``-``t`` path exists.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import ColoringError, VerificationFailure
from .graph import Edge, Graph, edge_id

MAX_COLORS = 30


@dataclass
class EdgeColoring:
    """Map from canonical edge to a color in ``1..k``."""

    colors: dict[Edge, int]
    k: int = 0
    provenance: dict[Edge, str] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        self.colors = {edge_id(*e): int(c) for e, c in self.colors.items()}
        if not self.k:
            self.k = max(self.colors.values(), default=0)
        for e, c in self.colors.items():
            if not 1 <= c <= self.k:
                raise ColoringError(f"edge {e} has color {c} outside 1..{self.k}")

    def color(self, u: int, v: int) -> int:
        return self.colors[edge_id(u, v)]

    def __getitem__(self, e: Edge) -> int:
        return self.colors[edge_id(*e)]

    def __contains__(self, e) -> bool:
        return edge_id(*e) in self.colors

    def __len__(self) -> int:
        return len(self.colors)

    def used_colors(self) -> set[int]:
        return set(self.colors.values())

    @property
    def n_colors(self) -> int:
        return len(self.used_colors())

    def missing(self, g: Graph) -> list[Edge]:
        return [e for e in g.edges if e not in self.colors]

    def is_total(self, g: Graph) -> bool:
        return not self.missing(g)

    def check_against(self, g: Graph) -> None:
        """Raise :class:`ColoringError` unless this is a total coloring of ``g``."""
        extra = [e for e in self.colors if not (e[1] < g.n and g.has_edge(*e))]
        if extra:
            raise ColoringError(f"colored edge {extra[0]} is not in the graph")
        missing = self.missing(g)
        if missing:
            raise ColoringError(f"edge {missing[0]} is uncolored")


@dataclass
class VerificationReport:
    connected: bool
    witness: tuple[int, int] | None = None
    paths: dict[tuple[int, int], list[int]] | None = None
    failures: list[tuple[int, int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.connected


def is_rainbow_path(g: Graph, c: EdgeColoring, path: Sequence[int]) -> bool:
    """True iff ``path`` is a path of ``g`` whose edge colors are all distinct."""
    if len(set(path)) != len(path):
        raise ValueError("path repeats a vertex")
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            raise ValueError(f"({a}, {b}) is not an edge")
    cols = [c.color(a, b) for a, b in zip(path, path[1:])]
    return len(cols) == len(set(cols))


def _colored_adjacency(g, c, allowed):
    nbr: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for (u, v) in g.edges:
        col = c.colors[(u, v)]
        if allowed is not None and col not in allowed:
            continue
        bit = 1 << (col - 1)
        nbr[u].append((v, bit))
        nbr[v].append((u, bit))
    for lst in nbr:
        lst.sort()
    return nbr


def _shortcut(walk: list[int]) -> list[int]:
    out: list[int] = []
    pos: dict[int, int] = {}
    for v in walk:
        if v in pos:
            cut = pos[v]
            for w in out[cut + 1:]:
                del pos[w]
            out = out[:cut + 1]
        else:
            pos[v] = len(out)
            out.append(v)
    return out


def _search(nbr, s, targets, want_paths):
    """Level-synchronous search from ``s``; stops once every target is hit.

    Returns ``(unreached targets, {target: path})``.
    """
    seen: list[set[int]] = [set() for _ in nbr]
    seen[s].add(0)
    remaining = set(targets)
    remaining.discard(s)
    hit: dict[int, tuple[int, int]] = {}
    parent: dict[tuple[int, int], tuple[int, int]] = {}
    frontier = [(s, 0)]
    while frontier and remaining:
        nxt = []
        for v, mask in frontier:
            for w, bit in nbr[v]:
                if mask & bit:
                    continue
                nm = mask | bit
                if nm in seen[w]:
                    continue
                seen[w].add(nm)
                if want_paths:
                    parent[(w, nm)] = (v, mask)
                if w in remaining:
                    remaining.discard(w)
                    hit[w] = (w, nm)
                nxt.append((w, nm))
        frontier = nxt
    paths = {}
    if want_paths:
        for t, state in hit.items():
            walk = [t]
            while state != (s, 0):
                state = parent[state]
                walk.append(state[0])
            paths[t] = _shortcut(walk[::-1])
    return remaining, paths


def rainbow_connected(
    g: Graph,
    c: EdgeColoring,
    allowed: Iterable[int] | None = None,
    pairs: Iterable[tuple[int, int]] | None = None,
    paths: bool = False,
    full_report: bool = False,
) -> VerificationReport:
    """Decide whether every requested pair is joined by a rainbow path.

    ``allowed`` restricts the path to edges whose color is in the set.
    ``pairs`` defaults to all unordered pairs of distinct vertices. The
    reported witness is the lexicographically smallest failing pair; unless
    ``full_report`` is set the search stops at the first source with a
    failure.
    """
    c.check_against(g)
    if c.k > MAX_COLORS or max(c.used_colors(), default=0) > MAX_COLORS:
        raise ColoringError(f"verifier supports at most {MAX_COLORS} colors")
    allowed_set = None if allowed is None else set(allowed)
    nbr = _colored_adjacency(g, c, allowed_set)

    by_source: dict[int, set[int]] = {}
    if pairs is None:
        for s in range(g.n):
            by_source[s] = set(range(s + 1, g.n))
    else:
        for a, b in pairs:
            if a == b:
                continue
            s, t = min(a, b), max(a, b)
            by_source.setdefault(s, set()).add(t)

    report = VerificationReport(True, paths={} if paths else None)
    for s in sorted(by_source):
        targets = by_source[s]
        if not targets:
            continue
        missed, found = _search(nbr, s, targets, paths)
        if paths:
            for t, p in found.items():
                report.paths[(s, t)] = p
        if missed:
            bad = [(s, t) for t in sorted(missed)]
            if report.connected:
                report.connected = False
                report.witness = bad[0]
            report.failures.extend(bad)
            if not full_report:
                break
    return report


def pigeonhole_witness(
    branches: Sequence[Sequence[Edge]], c: EdgeColoring | Mapping[Edge, int]
) -> tuple[int, int] | None:
    """First pair of branches (by index) carrying identical color sequences."""
    if not branches:
        return None
    length = len(branches[0])
    if any(len(b) != length for b in branches):
        raise ValueError("branches have unequal lengths")
    colors = c.colors if isinstance(c, EdgeColoring) else {edge_id(*e): v for e, v in c.items()}
    first_seen: dict[tuple[int, ...], int] = {}
    best = None
    for i, branch in enumerate(branches):
        key = tuple(colors[edge_id(*e)] for e in branch)
        if key in first_seen:
            cand = (first_seen[key], i)
            if best is None or cand < best:
                best = cand
        else:
            first_seen[key] = i
    return best


def require_rainbow(g: Graph, coloring: EdgeColoring, method: str, labels=None) -> None:
    """Raise :class:`VerificationFailure` with a diagnostic unless ``coloring`` is rainbow."""
    report = rainbow_connected(g, coloring)
    if report:
        return
    s, t = report.witness
    diag = {"method": method, "witness": [s + 1, t + 1]}
    if labels:
        diag["labels"] = {str(s + 1): labels.get(s), str(t + 1): labels.get(t)}
    tags = coloring.provenance or {}
    diag["incident_rules"] = {
        f"{a + 1}-{b + 1}": [coloring.colors[(a, b)], tags.get((a, b))]
        for (a, b) in g.edges
        if a in (s, t) or b in (s, t)
    }
    raise VerificationFailure(f"no rainbow path between {s + 1} and {t + 1}", diag)
