"""Independent oracles and shared corpora for the test suite.

The oracles here deliberately avoid the package's own search code: rainbow
connectivity is checked by enumerating simple paths, rc by trying every
coloring without symmetry breaking, bridges by deleting edges one at a time.
"""
import itertools
import random
import sys

import pytest

from rainbowrc.errors import BudgetExhausted
from rainbowrc.families import gen_example1, gen_random_bridgeless_diam3, gen_random_regular, gen_standard
from rainbowrc.graph import build_graph, find_bridges, is_connected, line_graph, metrics, triangle_free_edges


# -- oracles -------------------------------------------------------------------

def simple_paths(g, s, t):
    """All simple s-t paths as vertex lists (exponential; tiny graphs only)."""
    stack = [(s, [s])]
    while stack:
        v, path = stack.pop()
        if v == t:
            yield path
            continue
        for w in sorted(g.adj[v]):
            if w not in path:
                stack.append((w, path + [w]))


def oracle_pair_ok(g, colors, s, t, allowed=None):
    for path in simple_paths(g, s, t):
        cols = [colors[(min(a, b), max(a, b))] for a, b in zip(path, path[1:])]
        if allowed is not None and any(c not in allowed for c in cols):
            continue
        if len(cols) == len(set(cols)):
            return True
    return False


def oracle_failures(g, colors, allowed=None):
    return [(s, t) for s in range(g.n) for t in range(s + 1, g.n)
            if not oracle_pair_ok(g, colors, s, t, allowed)]


def oracle_rc(g):
    """rc by brute force over all k^m colorings, k = 1, 2, ..."""
    if g.n <= 1:
        return 0
    for k in range(1, g.m + 1):
        for assignment in itertools.product(range(1, k + 1), repeat=g.m):
            colors = dict(zip(g.edges, assignment))
            if not oracle_failures(g, colors):
                return k
    raise AssertionError("m colors always suffice")


def oracle_bridges(g):
    out = set()
    for e in g.edges:
        h = build_graph(g.n, [f for f in g.edges if f != e])
        if not is_connected(h):
            out.add(e)
    return out


# -- random graphs -------------------------------------------------------------

def random_connected_graph(rng, n, p):
    """Random spanning tree plus independent extra edges."""
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for i in range(1, n):
        a, b = order[i], order[rng.randrange(i)]
        edges.add((min(a, b), max(a, b)))
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < p:
                edges.add((a, b))
    return build_graph(n, edges)


def thin(g, rng):
    """Drop edges in random order while the graph stays a valid diam3 input."""
    edges = list(g.edges)
    rng.shuffle(edges)
    cur = set(g.edges)
    for e in edges:
        trial = cur - {e}
        h = build_graph(g.n, trial)
        if (is_connected(h) and not find_bridges(h) and metrics(h).diameter == 3
                and triangle_free_edges(h)):
            cur = trial
    return build_graph(g.n, cur)


def diam3_corpus(count, n_max=14, seed=0):
    out = []
    rng = random.Random(seed)
    attempt = 0
    while len(out) < count:
        n = rng.randint(6, n_max)
        p = rng.choice((0.25, 0.3, 0.35, 0.4))
        try:
            out.append(gen_random_bridgeless_diam3(n, p, seed * 100000 + attempt, max_tries=3000))
        except BudgetExhausted:
            pass
        attempt += 1
    return out


def triangular_grid(rows, cols):
    """Grid with one diagonal per square; every edge lies in a triangle."""
    vid = lambda i, j: i * cols + j
    edges = []
    for i in range(rows):
        for j in range(cols):
            if j + 1 < cols:
                edges.append((vid(i, j), vid(i, j + 1)))
            if i + 1 < rows:
                edges.append((vid(i, j), vid(i + 1, j)))
            if i + 1 < rows and j + 1 < cols:
                edges.append((vid(i, j), vid(i + 1, j + 1)))
    return build_graph(rows * cols, edges)


def radius_corpus():
    """Bridgeless graphs with every edge in a triangle, as (name, graph)."""
    out = [(f"K{n}", gen_standard("complete", n)) for n in range(3, 9)]
    out += [(f"W{n}", gen_standard("wheel", n)) for n in range(4, 13)]
    out += [(f"ex1-r{r}-t{t}", gen_example1(r, t).graph)
            for r in (1, 2, 3) for t in (2, 3, 5, 10)]
    out += [(f"tri{a}x{b}", triangular_grid(a, b)) for a, b in ((2, 2), (2, 4), (3, 3), (3, 5), (4, 4))]
    seed = 0
    while len(out) < 60:
        n = (4, 6, 8, 10, 12, 14, 16)[seed % 7]
        base = gen_random_regular(n, 3, seed)
        seed += 1
        if is_connected(base):
            out.append((f"L(cubic{n}-s{seed - 1})", line_graph(base)[0]))
    return out


@pytest.fixture(scope="session")
def diam3_graphs():
    return diam3_corpus(60, seed=1)


@pytest.fixture(scope="session")
def thinned_diam3_graphs():
    rng = random.Random(7)
    return [thin(g, rng) for g in diam3_corpus(40, n_max=13, seed=2)]


@pytest.fixture(scope="session")
def radius_graphs():
    return radius_corpus()


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.RESULTS[number])
