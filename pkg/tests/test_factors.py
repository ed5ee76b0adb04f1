import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edgesample.elementary import lone_density, test_loneliness as check_loneliness, test_starness as check_starness
from edgesample.graph import GraphInstance, disjoint_union, generate
from edgesample.harness.factors import (
    brute_force_factor,
    factor_density,
    high_degree_score_prob,
    loneliness_exact,
    neighborhood_exact,
    starness_exact,
    tininess,
)
from edgesample.oracle import OracleSession


def subset_weight(n, p, members, free=None):
    free = n if free is None else free
    return p ** len(members) * (1 - p) ** (free - len(members))


def all_subsets(n):
    for mask in range(1 << n):
        yield {i for i in range(n) if mask >> i & 1}


def reference_factor(graph, kind, mtilde, u, v=None):
    """Direct enumeration through the test procedures themselves."""
    p = factor_density(kind, mtilde)
    s = OracleSession(graph)
    total = 0.0
    for subset in all_subsets(graph.n):
        w = subset_weight(graph.n, p, subset)
        if kind == "starness":
            rest = subset - {u}
            if not s.query_is(rest):
                continue
            hits = len(rest & graph.adjacency_sets[u])
            total += w * (0.5 if hits == 1 else float(hits >= 2))
        else:
            total += w * check_loneliness(s, subset, u, v)
    return total


def test_single_edge_loneliness_is_one(single_edge):
    f = brute_force_factor(single_edge, "loneliness", 1.0, 0, 1)
    assert f.exact and f.value == pytest.approx(1.0) and f.low == f.value == f.high


def test_isolated_vertex_starness_is_zero():
    g = GraphInstance(4, [(0, 1), (1, 2)])
    assert brute_force_factor(g, "starness", 2.0, 3).value == 0.0


def test_path_loneliness_by_hand(path3):
    p = lone_density(2.0)
    assert brute_force_factor(path3, "loneliness", 2.0, 0, 1).value == pytest.approx(1 - p)
    # (0,2) is not an edge; both (0,1) and (1,2) are killed by vertex 1.
    assert loneliness_exact(path3, 2.0, 0, 2) == pytest.approx(1 - p)


def test_star_starness_closed_form():
    d = 6
    p = lone_density(4.0)
    closed = 1 - (1 - p) ** d - 0.5 * d * p * (1 - p) ** (d - 1)
    assert starness_exact(generate("star", [d]), 4.0, 0) == pytest.approx(closed)


def test_neighborhood_density_is_inverse_advice():
    g = generate("star", [5])
    q = 1 / 8.0
    # The edge (0,1) is lonely while no other leaf is drawn.
    assert neighborhood_exact(g, 8.0, 0, 1) == pytest.approx((1 - q) ** 4)
    assert factor_density("neighborhood", 0.5) == 1.0


@pytest.mark.parametrize(
    "kind,u,v",
    [("neighborhood", 0, 2), ("loneliness", 0, None), ("starness", 0, 1), ("loneliness", 0, 0),
     ("starness", 9, None), ("tininess", 0, None)],
)
def test_bad_arguments(path3, kind, u, v):
    with pytest.raises(ValueError):
        brute_force_factor(path3, kind, 2.0, u, v)


def test_high_degree_score_star_center():
    d, mtilde = 7, 9.0
    q = 1 / (8 * 3.0)
    assert high_degree_score_prob(generate("star", [d]), mtilde, 0) == pytest.approx(1 - (1 - q) ** d)


def test_tininess_direct():
    g = disjoint_union(generate("star", [9]), generate("matching", [2]))
    assert tininess(g, 40.0, 0) == 1.0
    assert tininess(g, 1.0, 1) == 0.0
    with pytest.raises(ValueError):
        tininess(GraphInstance(3), 4.0, 0)


def test_monte_carlo_path_above_exact_limit():
    d = 19
    g = generate("star", [d])
    mtilde = 4.0
    p = lone_density(mtilde)
    closed = (1 - p) ** (d - 1)
    f = brute_force_factor(g, "loneliness", mtilde, 0, 1, samples=40_000, seed=3)
    assert not f.exact and f.low <= closed <= f.high
    star = 1 - (1 - p) ** d - 0.5 * d * p * (1 - p) ** (d - 1)
    f = brute_force_factor(g, "starness", mtilde, 0, samples=40_000, seed=4)
    assert f.low <= star <= f.high
    q = 1 / mtilde
    f = brute_force_factor(g, "neighborhood", mtilde, 0, 1, samples=40_000, seed=5)
    assert f.low <= (1 - q) ** (d - 1) <= f.high


@st.composite
def small_graph_pair(draw):
    n = draw(st.integers(min_value=2, max_value=7))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, min_size=1))
    u, v = draw(st.sampled_from(edges))
    mtilde = draw(st.sampled_from([0.01, 0.25, 1.0, 3.0]))
    return GraphInstance(n, edges), u, v, mtilde


@settings(max_examples=40, deadline=None)
@given(small_graph_pair())
def test_vectorized_enumeration_matches_procedures(case):
    g, u, v, mtilde = case
    for kind, args in (("loneliness", (u, v)), ("neighborhood", (u, v)), ("starness", (u,)), ("starness", (v,))):
        exact = brute_force_factor(g, kind, mtilde, *args).value
        assert exact == pytest.approx(reference_factor(g, kind, mtilde, *args), abs=1e-12)


@pytest.mark.parametrize("mtilde", [0.5, 2.0, 9.0])
def test_factors_are_probabilities(mtilde):
    g = generate("gnm", [10, 12], seed=3)
    for e in g.edges:
        for value in (loneliness_exact(g, mtilde, *e), neighborhood_exact(g, mtilde, *e)):
            assert 0.0 <= value <= 1.0
    for u in range(g.n):
        assert 0.0 <= starness_exact(g, mtilde, u) <= 1.0
        assert math.isfinite(high_degree_score_prob(g, mtilde, u))
