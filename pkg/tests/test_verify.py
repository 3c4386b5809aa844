import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import oracle_failures, oracle_pair_ok, random_connected_graph
from rainbowrc.errors import ColoringError, VerificationFailure
from rainbowrc.families import gen_standard
from rainbowrc.graph import build_graph
from rainbowrc.radius import color_by_radius
from rainbowrc.verify import (
    MAX_COLORS,
    EdgeColoring,
    is_rainbow_path,
    pigeonhole_witness,
    rainbow_connected,
    require_rainbow,
)


def cyclic(g, seq):
    """Color cycle edges (i, i+1) in order with ``seq``."""
    return EdgeColoring({(i, (i + 1) % g.n): c for i, c in enumerate(seq)})


def uniform(g, col=1):
    return EdgeColoring({e: col for e in g.edges})


C4, C6, P3, K3 = (gen_standard("cycle", 4), gen_standard("cycle", 6),
                  gen_standard("path", 3), gen_standard("complete", 3))


# -- EdgeColoring --------------------------------------------------------------

def test_coloring_bounds_and_totality():
    with pytest.raises(ColoringError):
        EdgeColoring({(0, 1): 3}, k=2)
    with pytest.raises(ColoringError):
        EdgeColoring({(0, 1): 0})
    c = EdgeColoring({(1, 0): 2})
    assert c.k == 2 and c.color(0, 1) == 2 and (1, 0) in c
    assert not c.is_total(P3) and c.missing(P3) == [(1, 2)]
    with pytest.raises(ColoringError, match="uncolored"):
        c.check_against(P3)
    with pytest.raises(ColoringError, match="not in the graph"):
        EdgeColoring({(0, 1): 1, (1, 2): 1, (0, 2): 1}).check_against(P3)


def test_too_many_colors():
    g = gen_standard("path", MAX_COLORS + 2)
    c = EdgeColoring({e: i + 1 for i, e in enumerate(g.edges)})
    with pytest.raises(ColoringError, match="at most"):
        rainbow_connected(g, c)


# -- is_rainbow_path -----------------------------------------------------------

def test_is_rainbow_path_examples():
    assert is_rainbow_path(K3, uniform(K3), [0, 1])
    assert not is_rainbow_path(P3, uniform(P3), [0, 1, 2])
    c = cyclic(C4, (1, 2, 1, 2))
    for i in range(4):
        assert is_rainbow_path(C4, c, [i, (i + 1) % 4, (i + 2) % 4])


def test_is_rainbow_path_rejects_non_paths():
    with pytest.raises(ValueError):
        is_rainbow_path(P3, uniform(P3), [0, 2])
    with pytest.raises(ValueError):
        is_rainbow_path(C4, uniform(C4), [0, 1, 0])


# -- rainbow_connected ---------------------------------------------------------

def test_rainbow_connected_examples():
    assert rainbow_connected(K3, uniform(K3))
    rep = rainbow_connected(P3, uniform(P3))
    assert not rep and rep.witness == (0, 2)
    assert rainbow_connected(C4, cyclic(C4, (1, 2, 1, 2)))
    assert rainbow_connected(C6, cyclic(C6, range(1, 7)))


def test_c4_alternating_by_path_enumeration():
    c = cyclic(C4, (1, 2, 1, 2))
    assert oracle_failures(C4, c.colors) == []


def test_witness_is_lexicographically_smallest():
    # P5 with colors 1,1,2,2 fails on (0,2), (1,3) is fine, (2,4) fails, ...
    g = gen_standard("path", 5)
    c = EdgeColoring({(0, 1): 1, (1, 2): 1, (2, 3): 2, (3, 4): 2})
    rep = rainbow_connected(g, c, full_report=True)
    assert rep.witness == min(rep.failures) == (0, 2)
    assert rep.failures == sorted(oracle_failures(g, c.colors))


def test_short_circuit_without_full_report():
    g = gen_standard("path", 5)
    c = uniform(g)
    assert rainbow_connected(g, c).failures == [(0, 2), (0, 3), (0, 4)]
    assert len(rainbow_connected(g, c, full_report=True).failures) == 6


def test_allowed_and_pairs():
    c = cyclic(C6, range(1, 7))
    assert rainbow_connected(C6, c, allowed={1, 2}, pairs=[(0, 2)])
    rep = rainbow_connected(C6, c, allowed={1, 2}, pairs=[(3, 0)])
    assert not rep and rep.witness == (0, 3)
    assert rainbow_connected(C6, c, allowed={1, 2, 3}, pairs=[(3, 0)])
    assert rainbow_connected(C6, c, pairs=[(2, 2)])


def test_paths_are_valid_rainbow_paths():
    c = cyclic(C6, (1, 2, 3, 1, 2, 3))
    rep = rainbow_connected(C6, c, paths=True)
    assert rep and len(rep.paths) == 15
    for (s, t), path in rep.paths.items():
        assert path[0] == s and path[-1] == t
        assert is_rainbow_path(C6, c, path)


def random_coloring(rng, g, k):
    return EdgeColoring({e: rng.randint(1, k) for e in g.edges}, k=k)


def test_oracle_equivalence_500_samples():
    rng = random.Random(2024)
    for _ in range(520):
        n = rng.randint(2, 7)
        g = random_connected_graph(rng, n, rng.choice((0.1, 0.3, 0.5)))
        c = random_coloring(rng, g, rng.randint(1, 4))
        rep = rainbow_connected(g, c, full_report=True, paths=True)
        expected = oracle_failures(g, c.colors)
        assert rep.failures == expected
        assert bool(rep) == (not expected)
        for (s, t), path in rep.paths.items():
            assert path[0] == s and path[-1] == t and is_rainbow_path(g, c, path)


def test_oracle_equivalence_restricted():
    rng = random.Random(99)
    for _ in range(200):
        g = random_connected_graph(rng, rng.randint(2, 7), 0.35)
        c = random_coloring(rng, g, 4)
        allowed = {x for x in range(1, 5) if rng.random() < 0.6}
        for s, t in itertools.combinations(range(g.n), 2):
            got = bool(rainbow_connected(g, c, allowed=allowed, pairs=[(s, t)]))
            assert got == oracle_pair_ok(g, c.colors, s, t, allowed)


@st.composite
def colored_graphs(draw):
    n = draw(st.integers(2, 7))
    seed = draw(st.integers(0, 10**6))
    rng = random.Random(seed)
    g = random_connected_graph(rng, n, draw(st.sampled_from((0.1, 0.3, 0.6))))
    k = draw(st.integers(1, 5))
    colors = {e: draw(st.integers(1, k)) for e in g.edges}
    return g, EdgeColoring(colors, k=k)


@settings(max_examples=200, deadline=None)
@given(colored_graphs(), st.sets(st.integers(1, 5)), st.sets(st.integers(1, 5)))
def test_monotone_in_allowed_set(gc, small, extra):
    g, c = gc
    if rainbow_connected(g, c, allowed=small):
        assert rainbow_connected(g, c, allowed=small | extra)
        assert rainbow_connected(g, c)


@settings(max_examples=200, deadline=None)
@given(colored_graphs(), st.data())
def test_fresh_color_refinement_keeps_verdict(gc, data):
    g, c = gc
    if not rainbow_connected(g, c):
        return
    e = data.draw(st.sampled_from(g.edges))
    fresh = max(c.used_colors()) + 1
    refined = EdgeColoring({**c.colors, e: fresh})
    assert rainbow_connected(g, refined)


def test_fresh_color_refinement_on_constructed_colorings(radius_graphs):
    rng = random.Random(5)
    for _, g in radius_graphs[:30]:
        c = color_by_radius(g)
        e = rng.choice(g.edges)
        refined = EdgeColoring({**c.colors, e: max(c.used_colors()) + 1})
        assert rainbow_connected(g, refined)


# -- pigeonhole ----------------------------------------------------------------

def test_pigeonhole_examples():
    branches = [[(0, 1), (1, 2), (2, 3)], [(0, 4), (4, 5), (5, 6)]]
    same = {(0, 1): 1, (1, 2): 2, (2, 3): 3, (0, 4): 1, (4, 5): 2, (5, 6): 3}
    assert pigeonhole_witness(branches, same) == (0, 1)
    diff = dict(same)
    diff[(4, 5)], diff[(5, 6)] = 3, 2
    assert pigeonhole_witness(branches, diff) is None
    assert pigeonhole_witness([], {}) is None


def test_pigeonhole_nine_branches_two_colors():
    rng = random.Random(1)
    branches = [[(10 * i, 10 * i + j) for j in range(1, 4)] for i in range(9)]
    for _ in range(50):
        colors = {e: rng.randint(1, 2) for br in branches for e in br}
        assert pigeonhole_witness(branches, colors) is not None


def test_pigeonhole_returns_smallest_pair():
    branches = [[(0, 1)], [(0, 2)], [(0, 3)], [(0, 4)]]
    colors = {(0, 1): 1, (0, 2): 2, (0, 3): 2, (0, 4): 1}
    assert pigeonhole_witness(branches, colors) == (0, 3)


def test_pigeonhole_unequal_lengths():
    with pytest.raises(ValueError):
        pigeonhole_witness([[(0, 1)], [(0, 2), (2, 3)]], {(0, 1): 1, (0, 2): 1, (2, 3): 1})


@pytest.mark.parametrize("k, length", [(1, 1), (1, 3), (2, 1), (2, 2), (3, 1), (2, 3)])
def test_pigeonhole_exhaustive_grid(k, length):
    t = k ** length + 1
    branches = [[(100 * i + j, 100 * i + j + 1) for j in range(length)] for i in range(t)]
    flat = [e for br in branches for e in br]
    rng = random.Random(k * 10 + length)
    # exhaustive when small, otherwise sampled
    space = itertools.product(range(1, k + 1), repeat=len(flat))
    samples = list(space) if k ** len(flat) <= 5000 else [
        [rng.randint(1, k) for _ in flat] for _ in range(2000)]
    for assignment in samples:
        assert pigeonhole_witness(branches, dict(zip(flat, assignment))) is not None


# -- require_rainbow -----------------------------------------------------------

def test_require_rainbow_diagnostic():
    c = EdgeColoring({(0, 1): 1, (1, 2): 1}, provenance={(0, 1): "a", (1, 2): "b"})
    with pytest.raises(VerificationFailure) as exc:
        require_rainbow(P3, c, "radius", labels={0: "x", 2: "y"})
    d = exc.value.diagnostic
    assert d["method"] == "radius" and d["witness"] == [1, 3]
    assert d["labels"] == {"1": "x", "3": "y"}
    assert d["incident_rules"] == {"1-2": [1, "a"], "2-3": [1, "b"]}
    require_rainbow(K3, uniform(K3), "radius")


def test_empty_and_single_vertex():
    assert rainbow_connected(build_graph(1, []), EdgeColoring({}))
    assert rainbow_connected(build_graph(0, []), EdgeColoring({}))
