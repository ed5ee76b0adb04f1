import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import binomial_z
from edgesample.lowerbound import (
    LowerBoundParams,
    build_g,
    build_h,
    distinguishability_experiment,
    verify_construction,
)

GRID = [(n, m) for n in (16, 32, 64, 128) for m in (9, n, n * n // 16)]


def test_params_16_9():
    p = LowerBoundParams(16, 9)
    assert p.as_dict() == {"n": 16, "m": 9, "k": 3, "mprime": 6, "h": 1, "ell": 6}


def test_params_100_100():
    p = LowerBoundParams(100, 100)
    assert (p.k, p.mprime, p.h, p.ell) == (10, 55, 2, 28)


def test_build_g_examples():
    g = build_g(LowerBoundParams(16, 9))
    assert g.m == 3 and g.edges == {(0, 1), (0, 2), (1, 2)}
    assert sum(1 for d in g.degrees() if d == 0) == 13
    g = build_g(LowerBoundParams(100, 100))
    assert g.m == 45 and 2 * g.m <= 100


def test_build_h_examples():
    p = LowerBoundParams(16, 9)
    h = build_h(p)
    extra = h.edges - build_g(p).edges
    assert len(extra) == 6 and 4.5 <= 6 <= 9
    # Low side ids 3..8, high side id 9.
    assert extra == {(a, 9) for a in range(3, 9)}
    h = build_h(LowerBoundParams(100, 100))
    assert h.m - 45 == 56


@pytest.mark.parametrize("n,m", GRID)
def test_grid_constructions_verify(n, m):
    report = verify_construction(LowerBoundParams(n, m))
    assert report.passed, report.to_dict()
    assert set(report.checks) == {"singletons_nonnegative", "g_edges_at_most_half_m",
                                  "extra_edges_at_least_half_m", "extra_edges_at_most_m",
                                  "g_subgraph_of_h"}


@pytest.mark.parametrize("n,m", [(15, 9), (16, 8), (16, 17)])
def test_precondition_violations_reported(n, m):
    report = verify_construction(LowerBoundParams(n, m))
    assert not report.passed and report.precondition_errors and report.checks == {}
    with pytest.raises(ValueError):
        build_g(LowerBoundParams(n, m))


@given(st.integers(min_value=16, max_value=400), st.floats(min_value=0, max_value=1))
def test_constructions_hold_on_whole_domain(n, frac):
    m = 9 + int(frac * (n * n // 16 - 9))
    p = LowerBoundParams(n, m)
    assert p.k + p.ell + p.h <= n
    g, h = build_g(p), build_h(p)
    assert g.edges <= h.edges
    assert 2 * g.m <= m <= 2 * (h.m - g.m) <= 2 * m


def test_experiment_zero_trials():
    report = distinguishability_experiment("is", LowerBoundParams(16, 9), 0)
    assert report.to_dict() == {
        "params": {"n": 16, "m": 9, "k": 3, "mprime": 6, "h": 1, "ell": 6, "sampler": "is",
                   "eps": 0.2, "seed": 0},
        "trials": 0, "g_side_rate": 0.0, "h_side_rate": 0.0,
        "mean_queries_g": 0.0, "mean_queries_h": 0.0,
    }


def test_experiment_small_instance_rates():
    # Both sides fall below the brute-force threshold of the IS sampler, so H is sampled exactly uniformly.
    trials = 3000
    report = distinguishability_experiment("is", LowerBoundParams(16, 9), trials, seed=3)
    assert report.g_side_rate == 0.0
    assert binomial_z(round(report.h_side_rate * trials), trials, 6 / 9) < 4
    assert report.mean_queries_g > 0 and report.mean_queries_h > 0


def test_experiment_hybrid_runs_and_is_deterministic():
    p = LowerBoundParams(16, 9)
    a = distinguishability_experiment("hybrid", p, 2, seed=1)
    b = distinguishability_experiment("hybrid", p, 2, seed=1)
    assert a == b and a.g_side_rate == 0.0


def test_experiment_unknown_sampler():
    with pytest.raises(ValueError):
        distinguishability_experiment("pairs", LowerBoundParams(16, 9), 1)


def test_experiment_time_budget_stops_early():
    report = distinguishability_experiment("is", LowerBoundParams(16, 9), 50, seed=0, time_budget=0.0)
    assert report.trials == 0
    assert report.g_side_rate == 0.0
