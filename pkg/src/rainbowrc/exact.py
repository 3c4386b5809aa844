"""Exact rainbow connection number by canonical backtracking.

Meant for desk-scale graphs (roughly fifteen edges or a small target k).
Colorings are enumerated with edges in canonical order and a new color only
ever introduced as one more than the largest color used so far, so each
coloring is visited once up to a permutation of the color names.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .graph import Graph, metrics, require_connected
from .verify import EdgeColoring, rainbow_connected

EXACT = "exact"
LOWER_BOUND_ONLY = "lower-bound-only"
EXHAUSTED = "budget-exhausted"

PROVEN = "proven"
REFUTED = "refuted"


@dataclass
class Budget:
    max_nodes: int | None = None
    max_seconds: float | None = None
    nodes: int = 0
    started: float = field(default_factory=time.perf_counter)

    def tick(self) -> bool:
        """Count one search node; False once the budget is spent."""
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            return False
        if self.max_seconds is not None and self.nodes % 256 == 0:
            if time.perf_counter() - self.started > self.max_seconds:
                return False
        return True

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.started


class _OutOfBudget(Exception):
    pass


@dataclass
class KSearchResult:
    status: str  # PROVEN (no k-coloring), REFUTED (certificate found) or EXHAUSTED
    certificate: EdgeColoring | None
    nodes: int


@dataclass
class RcResult:
    status: str
    lo: int
    hi: int | None
    certificate: EdgeColoring | None = None
    nodes: int = 0
    seconds: float = 0.0

    @property
    def value(self) -> int | None:
        return self.lo if self.status == EXACT else None

    def as_dict(self, timing: bool = False) -> dict:
        out = {"status": self.status}
        if self.status == EXACT:
            out["value"] = self.lo
        out["lo"] = self.lo
        out["hi"] = self.hi
        out["nodes"] = self.nodes
        if timing:
            out["seconds"] = round(self.seconds, 6)
        return out


def _search_k(g: Graph, k: int, budget: Budget) -> EdgeColoring | None:
    edges = g.edges
    m = len(edges)
    assign = [0] * m

    def rec(i: int, top: int) -> EdgeColoring | None:
        if not budget.tick():
            raise _OutOfBudget
        if i == m:
            c = EdgeColoring(dict(zip(edges, assign)), k=max(k, 1))
            return c if rainbow_connected(g, c) else None
        for col in range(1, min(top + 1, k) + 1):
            assign[i] = col
            found = rec(i + 1, max(top, col))
            if found is not None:
                return found
        return None

    return rec(0, 0)


def no_k_coloring_exists(
    g: Graph, k: int, max_nodes: int | None = None, max_seconds: float | None = None
) -> KSearchResult:
    """Exhaustively decide whether some coloring with at most ``k`` colors works."""
    require_connected(g)
    budget = Budget(max_nodes, max_seconds)
    try:
        cert = _search_k(g, k, budget)
    except _OutOfBudget:
        return KSearchResult(EXHAUSTED, None, budget.nodes)
    if cert is None:
        return KSearchResult(PROVEN, None, budget.nodes)
    return KSearchResult(REFUTED, cert, budget.nodes)


def exact_rc(
    g: Graph,
    max_k: int | None = None,
    max_nodes: int | None = None,
    max_seconds: float | None = None,
) -> RcResult:
    """Smallest k admitting a rainbow coloring, by iterative deepening from the diameter.

    Returns status ``exact`` with a certificate, ``lower-bound-only`` when
    every k up to ``max_k`` was refuted, or ``budget-exhausted`` with the
    bracket ``[lo, hi]`` known so far (``hi`` is the edge count, which
    always suffices).
    """
    require_connected(g)
    if g.n <= 1:
        return RcResult(EXACT, 0, 0, EdgeColoring({}, 0))
    lo = metrics(g).diameter
    hi = g.m
    if max_k is None:
        max_k = hi
    budget = Budget(max_nodes, max_seconds)
    k = lo
    while k <= max_k:
        try:
            cert = _search_k(g, k, budget)
        except _OutOfBudget:
            return RcResult(EXHAUSTED, k, hi, None, budget.nodes, budget.elapsed)
        if cert is not None:
            return RcResult(EXACT, k, k, cert, budget.nodes, budget.elapsed)
        k += 1
    return RcResult(LOWER_BOUND_ONLY, k, hi if hi >= k else None, None,
                    budget.nodes, budget.elapsed)
