"""Uniformity and cost experiments with JSON/CSV reporting.

Each trial runs one sampler call on a fresh :class:`OracleSession` whose
seed is derived from ``(seed, trial index)``, so reports depend only on the
configuration and merge in any order.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

from scipy import stats

from ..graph import Edge, GraphInstance, generate
from ..hybrid import sample_edge_hyb
from ..is_sampler import sample_edge_is
from ..oracle import OracleSession, derive_seed
from .advice import AdviceProvider

__all__ = [
    "SAMPLERS",
    "SIGNIFICANCE",
    "UniformityTally",
    "ExperimentReport",
    "run_uniformity",
    "ratio_slack",
    "tv_distance",
    "SweepRow",
    "SweepTable",
    "sweep_edge_count",
    "run_complexity_sweep",
    "to_json",
]

SAMPLERS: dict[str, Callable] = {"hybrid": sample_edge_hyb, "is": sample_edge_is}
#: Per-family significance of frequency verdicts (split over edges).
SIGNIFICANCE = 1e-6
#: Minimum success probability the samplers guarantee.
TARGET_ACCEPT = 2.0 / 3.0
ORACLES = ("is", "degree", "neighbor")


def to_json(data) -> str:
    """Canonical JSON text (sorted keys, fixed indentation)."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def tv_distance(d1: Mapping, d2: Mapping) -> float:
    """Total variation distance between two distributions given as mappings."""
    keys = set(d1) | set(d2)
    return 0.5 * sum(abs(d1.get(k, 0.0) - d2.get(k, 0.0)) for k in keys)


def ratio_slack(accepted: int, m: int, significance: float = SIGNIFICANCE) -> float:
    """Statistical allowance on the max/min edge-count ratio.

    Returns ``upper / lower - 1``, where ``upper`` and ``lower`` are two-sided
    binomial quantiles of one edge's count under exact uniformity, at level
    ``significance / m`` (Bonferroni over the edges). Infinite when the lower
    quantile is zero.
    """
    if m <= 0 or accepted <= 0:
        return math.inf
    q = 1.0 / m
    tail = significance / (2.0 * m)
    lower = stats.binom.ppf(tail, accepted, q)
    upper = stats.binom.isf(tail, accepted, q)
    if lower <= 0:
        return math.inf
    return float(upper / lower - 1.0)


@dataclass
class ExperimentReport:
    """Outcome of a uniformity experiment."""

    config: dict
    trials: int
    accepted: int
    rejects: int
    edge_counts: dict[Edge, int]
    query_means: dict[str, float]
    query_maxima: dict[str, int]
    advice_query_mean: float
    metrics: dict[str, float | None]
    verdict: str
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "trials": self.trials,
            "accepted": self.accepted,
            "rejects": self.rejects,
            "edge_counts": [[e.u, e.v, c] for e, c in sorted(self.edge_counts.items())],
            "query_means": self.query_means,
            "query_maxima": self.query_maxima,
            "advice_query_mean": self.advice_query_mean,
            "metrics": {k: (None if v is None or math.isinf(v) else v) for k, v in self.metrics.items()},
            "checks": self.checks,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return to_json(self.to_dict())


class UniformityTally:
    """Running counts of sampler outcomes on one graph.

    Every returned edge is checked against the ground truth; a non-edge
    raises ``AssertionError`` immediately.
    """

    def __init__(self, graph: GraphInstance):
        self.graph = graph
        self.counts: dict[Edge, int] = {e: 0 for e in graph.edges}
        self.trials = 0
        self.rejects = 0
        self.query_sums = {k: 0 for k in ORACLES}
        self.query_maxima = {k: 0 for k in ORACLES}
        self.advice_sum = 0

    @property
    def accepted(self) -> int:
        return self.trials - self.rejects

    def add(self, outcome: Edge | None, session: OracleSession) -> None:
        self.trials += 1
        if outcome is None:
            self.rejects += 1
        else:
            edge = Edge.of(*outcome)
            if edge not in self.counts:
                raise AssertionError(f"sampler returned non-edge {tuple(edge)}")
            self.counts[edge] += 1
        spent = session.sampling_counters()
        for kind in ORACLES:
            self.query_sums[kind] += spent[kind]
            self.query_maxima[kind] = max(self.query_maxima[kind], spent[kind])
        self.advice_sum += session.advice_queries

    def merge(self, other: "UniformityTally") -> None:
        if other.graph != self.graph:
            raise ValueError("cannot merge tallies of different graphs")
        self.trials += other.trials
        self.rejects += other.rejects
        for e, c in other.counts.items():
            self.counts[e] += c
        for kind in ORACLES:
            self.query_sums[kind] += other.query_sums[kind]
            self.query_maxima[kind] = max(self.query_maxima[kind], other.query_maxima[kind])
        self.advice_sum += other.advice_sum

    def report(self, config: dict, eps: float, significance: float = SIGNIFICANCE) -> ExperimentReport:
        m = self.graph.m
        trials, accepted = self.trials, self.accepted
        denom = max(trials, 1)
        sampling_sums = dict(self.query_sums)
        sampling_sums["total"] = sum(self.query_sums.values())
        means = {k: v / denom for k, v in sampling_sums.items()}
        maxima = dict(self.query_maxima)

        counts = list(self.counts.values())
        accept_rate = accepted / trials if trials else 0.0
        ratio = None
        tv = None
        if m and accepted:
            low = min(counts)
            ratio = math.inf if low == 0 else max(counts) / low
            tv = tv_distance({e: c / accepted for e, c in self.counts.items()},
                             {e: 1.0 / m for e in self.counts})
        slack = ratio_slack(accepted, m, significance)
        sigma = math.sqrt(TARGET_ACCEPT * (1.0 - TARGET_ACCEPT) / denom)
        accept_floor = TARGET_ACCEPT - 4.0 * sigma
        ratio_bound = math.exp(2.0 * eps) * (1.0 + slack)
        metrics = {
            "accept_rate": accept_rate,
            "accept_floor": accept_floor,
            "empirical_lambda": accept_rate,
            "max_min_ratio": ratio,
            "ratio_bound": ratio_bound,
            "slack": slack,
            "tv_to_uniform": tv,
        }
        checks = {}
        if m == 0:
            verdict = "no-edges"
        elif trials < 2 or math.isinf(slack):
            verdict = "insufficient-data"
        else:
            checks["accept_rate"] = accept_rate >= accept_floor
            checks["frequency_ratio"] = ratio <= ratio_bound
            verdict = "pass" if all(checks.values()) else "fail"
        return ExperimentReport(
            config=config,
            trials=trials,
            accepted=accepted,
            rejects=self.rejects,
            edge_counts=dict(self.counts),
            query_means=means,
            query_maxima=maxima,
            advice_query_mean=self.advice_sum / denom,
            metrics=metrics,
            verdict=verdict,
            checks=checks,
        )


def run_uniformity(graph: GraphInstance, sampler: str, eps: float, trials: int, seed: int = 0,
                   advice: AdviceProvider | None = None, graph_name: str | None = None,
                   significance: float = SIGNIFICANCE) -> ExperimentReport:
    """Run ``trials`` independent sampler calls and judge uniformity."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    entry = SAMPLERS[sampler]
    advice = advice or AdviceProvider("exact")
    tally = UniformityTally(graph)
    for t in range(trials):
        session = OracleSession(graph, seed=derive_seed(seed, t))
        tally.add(entry(session, eps, advice), session)
    config = {"graph": graph_name or f"n={graph.n},m={graph.m}", "n": graph.n, "m": graph.m,
              "sampler": sampler, "eps": eps, "seed": seed, "advice": advice.describe()}
    return tally.report(config, eps, significance)


@dataclass
class SweepRow:
    n: int
    m: int
    rtilde: float
    scale: float
    mean_queries: float
    max_queries: int
    ratio: float
    advice_query_mean: float
    accept_rate: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class SweepTable:
    config: dict
    rows: list[SweepRow]
    spread: float | None
    verdict: str | None

    def to_dict(self) -> dict:
        return {"config": self.config, "rows": [r.to_dict() for r in self.rows],
                "spread": self.spread, "verdict": self.verdict}

    def to_json(self) -> str:
        return to_json(self.to_dict())

    def to_csv(self) -> str:
        out = io.StringIO()
        fields = list(SweepRow.__dataclass_fields__)
        writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow(row.to_dict())
        return out.getvalue()


#: Largest allowed max/min spread of the normalized cost column.
SPREAD_LIMIT = 8.0


def sweep_edge_count(n: int, regime: str) -> int:
    """Edge count of the sweep graph: about ``n`` (sparse) or ``n**1.5`` (dense)."""
    if regime == "sparse":
        m = n
    elif regime == "dense":
        m = round(n**1.5)
    else:
        raise ValueError(f"unknown regime {regime!r}; expected sparse or dense")
    return min(m, n * (n - 1) // 4)


def cost_scale(sampler: str, n: int, m: int) -> tuple[float, float]:
    """``(R, R * polylog)`` normalizer of the query count for a sampler."""
    log_n = math.log(n)
    if sampler == "hybrid":
        r = min(math.sqrt(m), math.sqrt(n / math.sqrt(m)))
        return r, r * log_n
    r = min(math.sqrt(m), n / math.sqrt(m))
    return r, r * log_n**2


def run_complexity_sweep(sampler: str, regime: str, sizes: list[int], eps: float = 0.2,
                         trials: int = 5, seed: int = 0,
                         progress: Callable[[SweepRow], None] | None = None) -> SweepTable:
    """Mean sampling cost on ``gnm`` graphs of growing size.

    Uses exact advice; advice cost is reported in its own column. The
    verdict checks that the cost divided by ``R * polylog(n)`` varies by at
    most :data:`SPREAD_LIMIT` across rows; a single row gets no verdict.
    """
    if list(sizes) != sorted(sizes):
        raise ValueError("sizes must be ascending")
    entry = SAMPLERS[sampler]
    advice = AdviceProvider("exact")
    rows = []
    for n in sizes:
        m = sweep_edge_count(n, regime)
        graph = generate("gnm", [n, m], seed=derive_seed(seed, n))
        total = 0
        peak = 0
        advice_total = 0
        accepted = 0
        for t in range(trials):
            session = OracleSession(graph, seed=derive_seed(seed, n, t))
            if entry(session, eps, advice) is not None:
                accepted += 1
            spent = session.sampling_counters()["total"]
            total += spent
            peak = max(peak, spent)
            advice_total += session.advice_queries
        rtilde, scale = cost_scale(sampler, n, m)
        mean = total / trials
        row = SweepRow(n=n, m=m, rtilde=rtilde, scale=scale, mean_queries=mean, max_queries=peak,
                       ratio=mean / scale, advice_query_mean=advice_total / trials,
                       accept_rate=accepted / trials)
        rows.append(row)
        if progress is not None:
            progress(row)
    spread = None
    verdict = None
    if len(rows) > 1:
        ratios = [r.ratio for r in rows]
        spread = max(ratios) / min(ratios) if min(ratios) > 0 else math.inf
        verdict = "pass" if spread <= SPREAD_LIMIT else "fail"
    config = {"sampler": sampler, "regime": regime, "sizes": list(sizes), "eps": eps,
              "trials": trials, "seed": seed}
    return SweepTable(config=config, rows=rows, spread=spread, verdict=verdict)
