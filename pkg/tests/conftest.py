import sys

import pytest

from edgesample.graph import GraphInstance, generate
from edgesample.oracle import OracleSession


def binomial_z(observed: int, trials: int, p: float) -> float:
    """Standard score of ``observed`` successes against Binomial(trials, p)."""
    sd = (trials * p * (1.0 - p)) ** 0.5
    if sd == 0.0:
        return 0.0 if observed == trials * p else float("inf")
    return abs(observed - trials * p) / sd


def rate_z(counts: dict, expected: dict, trials: int) -> float:
    """Largest per-outcome standard score over the union of outcomes."""
    worst = 0.0
    for key in set(counts) | set(expected):
        worst = max(worst, binomial_z(counts.get(key, 0), trials, expected.get(key, 0.0)))
    return worst


def tally(fn, trials: int) -> dict:
    counts: dict = {}
    for _ in range(trials):
        out = fn()
        if out is not None:
            counts[out] = counts.get(out, 0) + 1
    return counts


@pytest.fixture
def session_for():
    def make(graph: GraphInstance, seed: int = 0) -> OracleSession:
        return OracleSession(graph, seed=seed)

    return make


@pytest.fixture
def single_edge():
    return GraphInstance(2, [(0, 1)])


@pytest.fixture
def path3():
    return generate("path", [3])


@pytest.fixture
def triangle():
    return generate("clique", [3])


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "summary_lines", None)
    lines = results() if results else []
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
