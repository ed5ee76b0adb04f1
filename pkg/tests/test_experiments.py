import csv
import io
import json
import math

import pytest

from conftest import binomial_z
from edgesample.graph import Edge, GraphInstance, generate
from edgesample.harness.advice import AdviceProvider, parse_advice
from edgesample.harness.corpus import SMALL_CORPUS, UNIFORMITY_SUITE, load_graph, named_graph, parse_graph_spec
from edgesample.harness.exact import _amplify, effective_masses
from edgesample.harness.experiments import (
    SweepTable,
    UniformityTally,
    cost_scale,
    ratio_slack,
    run_complexity_sweep,
    run_uniformity,
    sweep_edge_count,
    to_json,
    tv_distance,
)
from edgesample.oracle import OracleSession


# Advice providers.

def test_exact_advice_is_free():
    s = OracleSession(generate("gnm", [20, 30], seed=1))
    assert AdviceProvider("exact").estimate(s, 0.01) == 30.0
    assert s.total_queries == 0


def test_noisy_advice_stays_in_contract():
    s = OracleSession(generate("gnm", [20, 30], seed=1), seed=2)
    advice = AdviceProvider("noisy_exact")
    values = [advice.estimate(s, 0.01) for _ in range(2000)]
    assert all(30 * math.exp(-0.1) <= v <= 30 * math.exp(0.1) for v in values)
    assert len(set(values)) > 1000


def test_noisy_advice_failure_injection():
    s = OracleSession(generate("gnm", [20, 30], seed=1), seed=3)
    advice = AdviceProvider("noisy_exact", failure_prob=0.25)
    trials = 20_000
    bad = sum(not 30 * math.exp(-0.1) <= advice.estimate(s, 0.01) <= 30 * math.exp(0.1) for _ in range(trials))
    assert binomial_z(bad, trials, 0.25) < 4


def test_external_advice_queries_are_billed():
    from edgesample.hybrid import sample_edge_hyb

    def estimator(s, r):
        s.query_is([0, 1])
        s.query_degree(0)
        return 1.0

    s = OracleSession(GraphInstance(4, [(0, 1), (2, 3)]), seed=4)
    assert sample_edge_hyb(s, 0.2, AdviceProvider("external", estimator=estimator)) in {(0, 1), (2, 3)}
    assert s.advice_by_kind == {"is": 1, "degree": 1, "neighbor": 0}
    assert s.sampling_counters()["degree"] == 0


@pytest.mark.parametrize(
    "kwargs",
    [{"mode": "guess"}, {"mode": "noisy_exact", "noise": 0.5}, {"mode": "adversarial_fixed"},
     {"mode": "external"}, {"failure_prob": 2.0}],
)
def test_advice_validation(kwargs):
    with pytest.raises(ValueError):
        AdviceProvider(**kwargs)


@pytest.mark.parametrize("text,mode,described", [("exact", "exact", "exact"), ("noisy", "noisy_exact", "noisy"),
                                                 ("fixed:4", "adversarial_fixed", "fixed:4")])
def test_parse_advice(text, mode, described):
    advice = parse_advice(text)
    assert advice.mode == mode and advice.describe() == described


@pytest.mark.parametrize("text", ["fixed:x", "median", ""])
def test_parse_advice_rejects(text):
    with pytest.raises(ValueError):
        parse_advice(text)


def test_fixed_advice_degrades_gracefully():
    from edgesample.hybrid import sample_edge_hyb

    g = generate("gnm", [64, 200], seed=1)
    for seed in range(3):
        s = OracleSession(g, seed=seed)
        e = sample_edge_hyb(s, 0.2, AdviceProvider("adversarial_fixed", value=4.0))
        assert e is None or e in g.edges


# Corpus.

def test_corpus_sizes():
    assert all(named_graph(name).n <= 14 for name in SMALL_CORPUS)
    sizes = {name: (named_graph(name).n, named_graph(name).m) for name in UNIFORMITY_SUITE}
    assert sizes["gnm_64_200"] == (64, 200) and sizes["gnm_128_512"] == (128, 512)
    assert sizes["two_edge"] == (4, 2)
    assert sizes["mix"] == (31, 45)


def test_graph_specs(tmp_path):
    assert parse_graph_spec("clique:4").m == 6
    assert parse_graph_spec("gnm:30,40", seed=3) == generate("gnm", [30, 40], seed=3)
    assert parse_graph_spec("two_edge").m == 2
    path = tmp_path / "g.txt"
    path.write_text("3 2\n0 1\n1 2\n")
    assert load_graph(str(path)) == generate("path", [3])
    for bad in ("gnm:a,b", "nothing"):
        with pytest.raises(ValueError):
            parse_graph_spec(bad)


# Statistics helpers.

@pytest.mark.parametrize(
    "d1,d2,expected",
    [({"a": 0.5, "b": 0.5}, {"a": 0.5, "b": 0.5}, 0.0), ({"a": 1.0}, {"b": 1.0}, 1.0),
     ({"a": 0.5, "b": 0.5}, {"a": 1.0}, 0.5)],
)
def test_tv_distance(d1, d2, expected):
    assert tv_distance(d1, d2) == pytest.approx(expected)


def test_ratio_slack_shrinks_with_samples():
    small, big = ratio_slack(10_000, 10), ratio_slack(1_000_000, 10)
    assert 0 < big < small
    assert ratio_slack(5, 10) == math.inf
    assert ratio_slack(0, 3) == math.inf


def test_effective_masses_and_amplify():
    assert effective_masses([("a", 0.5), ("b", 0.7), ("c", 0.1)]) == pytest.approx({"a": 0.5, "b": 0.5, "c": 0.0})
    out = _amplify({Edge(0, 1): 0.01, Edge(1, 2): 0.03}, 100)
    total = 1 - 0.96**100
    assert out == pytest.approx({(0, 1): total / 4, (1, 2): 3 * total / 4})
    assert _amplify({}, 10) == {}


# Uniformity experiments.

def test_two_edge_uniformity_passes():
    report = run_uniformity(named_graph("two_edge"), "hybrid", 0.2, 4000, seed=1, graph_name="two_edge")
    assert report.verdict == "pass" and report.accepted == 4000
    assert report.metrics["max_min_ratio"] <= math.exp(0.4) * (1 + report.metrics["slack"])
    assert sum(report.edge_counts.values()) + report.rejects == report.trials
    assert report.config["graph"] == "two_edge"


def test_single_trial_is_insufficient():
    report = run_uniformity(named_graph("two_edge"), "is", 0.2, 1)
    assert report.verdict == "insufficient-data" and not report.passed


def test_empty_graph_verdict():
    report = run_uniformity(GraphInstance(3), "is", 0.2, 10)
    assert report.verdict == "no-edges" and report.rejects == 10
    json.loads(report.to_json())


def test_zero_trials_rejected():
    with pytest.raises(ValueError):
        run_uniformity(named_graph("two_edge"), "is", 0.2, 0)


def test_tally_rejects_non_edges():
    tally = UniformityTally(generate("path", [3]))
    s = OracleSession(tally.graph)
    with pytest.raises(AssertionError):
        tally.add((0, 2), s)


def test_tally_merge_is_order_independent():
    g = named_graph("two_edge")
    parts = []
    for lo in (0, 300, 700):
        tally = UniformityTally(g)
        for t in range(lo, lo + 300):
            s = OracleSession(g, seed=t)
            tally.add((0, 1) if t % 3 else ((2, 3) if t % 5 else None), s)
        parts.append(tally)
    ab = UniformityTally(g)
    for p in parts:
        ab.merge(p)
    ba = UniformityTally(g)
    for p in reversed(parts):
        ba.merge(p)
    assert ab.report({}, 0.2).to_json() == ba.report({}, 0.2).to_json()
    with pytest.raises(ValueError):
        ab.merge(UniformityTally(generate("path", [3])))


def test_fail_verdict_on_skewed_counts():
    g = named_graph("two_edge")
    tally = UniformityTally(g)
    s = OracleSession(g)
    for t in range(3000):
        tally.add((0, 1) if t % 4 else (2, 3), s)
    report = tally.report({}, 0.2)
    assert report.verdict == "fail" and report.checks == {"accept_rate": True, "frequency_ratio": False}


def test_report_determinism_and_schema():
    g = named_graph("gnm_10_12")
    a = run_uniformity(g, "is", 0.2, 300, seed=9).to_json()
    b = run_uniformity(g, "is", 0.2, 300, seed=9).to_json()
    assert a == b
    data = json.loads(a)
    assert set(data) == {"config", "trials", "accepted", "rejects", "edge_counts", "query_means",
                         "query_maxima", "advice_query_mean", "metrics", "checks", "verdict"}
    assert data["query_means"]["degree"] == data["query_means"]["neighbor"] == 0
    assert {"max_min_ratio", "empirical_lambda", "tv_to_uniform"} <= set(data["metrics"])
    assert run_uniformity(g, "is", 0.2, 300, seed=10).to_json() != a


def test_to_json_is_canonical():
    assert to_json({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'


# Cost sweeps.

def test_sweep_edge_counts():
    assert sweep_edge_count(256, "sparse") == 256
    assert sweep_edge_count(256, "dense") == 4096
    assert sweep_edge_count(8, "dense") == 14
    with pytest.raises(ValueError):
        sweep_edge_count(8, "medium")


def test_cost_scale_branches():
    # Dense IS regime uses n / sqrt(m), which falls as m grows.
    r1, _ = cost_scale("is", 1024, 1024 * 32)
    r2, _ = cost_scale("is", 1024, 1024 * 64)
    assert r1 == pytest.approx(1024 / math.sqrt(1024 * 32)) and r2 < r1
    r, scale = cost_scale("hybrid", 256, 256)
    assert r == pytest.approx(min(16, math.sqrt(256 / 16))) and scale == pytest.approx(r * math.log(256))


def test_sweep_single_row_has_no_verdict():
    table = run_complexity_sweep("is", "sparse", [16], trials=2)
    assert len(table.rows) == 1 and table.verdict is None and table.spread is None


def test_sweep_two_rows():
    seen = []
    table = run_complexity_sweep("hybrid", "sparse", [16, 32], trials=2, seed=1, progress=seen.append)
    assert seen == table.rows and table.verdict in ("pass", "fail")
    rows = list(csv.DictReader(io.StringIO(table.to_csv())))
    assert [int(r["n"]) for r in rows] == [16, 32]
    assert json.loads(table.to_json())["config"]["sizes"] == [16, 32]
    assert table.to_json() == run_complexity_sweep("hybrid", "sparse", [16, 32], trials=2, seed=1).to_json()
    with pytest.raises(ValueError):
        run_complexity_sweep("hybrid", "sparse", [32, 16])
