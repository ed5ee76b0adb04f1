"""Hard instance pairs for edge sampling with independent-set queries.

For a target edge count ``m``, ``G`` is a clique on ``k = floor(sqrt(m))``
vertices padded with isolated vertices, and ``H`` adds a complete bipartite
block with ``ell`` low-degree and ``h`` high-degree vertices. Few edges of
``H`` belong to ``G``, so a good sampler run on ``H`` must often return an
edge outside ``G``, while on ``G`` it never can. Telling the two apart is
what makes sampling expensive.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field

from .graph import GraphInstance, relabel
from .harness.advice import AdviceProvider
from .hybrid import sample_edge_hyb
from .is_sampler import sample_edge_is
from .oracle import OracleSession, derive_seed

__all__ = [
    "LowerBoundParams",
    "build_g",
    "build_h",
    "verify_construction",
    "ConstructionReport",
    "DistinguishabilityReport",
    "distinguishability_experiment",
]


@dataclass(frozen=True)
class LowerBoundParams:
    """Sizes of the instance pair for ``n`` vertices and target ``m`` edges."""

    n: int
    m: int

    def domain_errors(self) -> list[str]:
        errors = []
        if self.n < 16:
            errors.append(f"n={self.n} is below 16")
        if self.m < 9:
            errors.append(f"m={self.m} is below 9")
        if 16 * self.m > self.n * self.n:
            errors.append(f"m={self.m} exceeds n^2/16={self.n * self.n / 16:g}")
        return errors

    def validate(self) -> None:
        errors = self.domain_errors()
        if errors:
            raise ValueError("; ".join(errors))

    @property
    def k(self) -> int:
        """Clique size ``floor(sqrt(m))``."""
        return math.isqrt(self.m)

    @property
    def mprime(self) -> int:
        """Edges left for the bipartite block: ``m - C(k, 2)``."""
        return self.m - self.k * (self.k - 1) // 2

    @property
    def h(self) -> int:
        """High side size ``ceil(2 mprime / n)``."""
        return -(-2 * self.mprime // self.n)

    @property
    def ell(self) -> int:
        """Low side size ``ceil(mprime / h)``."""
        return -(-self.mprime // self.h)

    def as_dict(self) -> dict:
        return {"n": self.n, "m": self.m, "k": self.k, "mprime": self.mprime,
                "h": self.h, "ell": self.ell}


def build_g(params: LowerBoundParams) -> GraphInstance:
    """Clique on ``0..k-1`` plus isolated vertices."""
    params.validate()
    k = params.k
    return GraphInstance(params.n, [(a, b) for a in range(k) for b in range(a + 1, k)])


def build_h(params: LowerBoundParams) -> GraphInstance:
    """``build_g`` plus a complete bipartite block.

    The low side takes ids ``k..k+ell-1`` and the high side the next ``h`` ids.
    """
    params.validate()
    k, h, ell = params.k, params.h, params.ell
    if k + ell + h > params.n:
        raise ValueError(f"instance needs {k + ell + h} vertices but n={params.n}")
    clique = [(a, b) for a in range(k) for b in range(a + 1, k)]
    low = range(k, k + ell)
    high = range(k + ell, k + ell + h)
    return GraphInstance(params.n, clique + [(a, b) for a in low for b in high])


@dataclass
class ConstructionReport:
    params: dict
    checks: dict[str, bool] = field(default_factory=dict)
    precondition_errors: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.precondition_errors and all(self.checks.values())

    def to_dict(self) -> dict:
        return {"params": self.params, "checks": self.checks,
                "precondition_errors": self.precondition_errors, "passed": self.passed}


def verify_construction(params: LowerBoundParams) -> ConstructionReport:
    """Check the size properties of the instance pair.

    * ``singletons_nonnegative``: ``k + ell + h <= n``.
    * ``g_edges_at_most_half_m``: ``|E(G)| <= m/2``.
    * ``extra_edges_at_least_half_m`` and ``extra_edges_at_most_m``:
      ``m/2 <= |E(H) - E(G)| <= m``.
    * ``g_subgraph_of_h``: every edge of ``G`` is in ``H``.
    """
    errors = params.domain_errors()
    if errors:
        return ConstructionReport(params={"n": params.n, "m": params.m}, precondition_errors=errors)
    report = ConstructionReport(params=params.as_dict())
    fits = params.k + params.ell + params.h <= params.n
    report.checks["singletons_nonnegative"] = fits
    g = build_g(params)
    report.checks["g_edges_at_most_half_m"] = 2 * g.m <= params.m
    if fits:
        h = build_h(params)
        extra = len(h.edges - g.edges)
        report.checks["extra_edges_at_least_half_m"] = 2 * extra >= params.m
        report.checks["extra_edges_at_most_m"] = extra <= params.m
        report.checks["g_subgraph_of_h"] = g.edges <= h.edges
    else:
        report.checks["extra_edges_at_least_half_m"] = False
        report.checks["extra_edges_at_most_m"] = False
        report.checks["g_subgraph_of_h"] = False
    return report


@dataclass
class DistinguishabilityReport:
    params: dict
    trials: int
    g_side_rate: float
    h_side_rate: float
    mean_queries_g: float
    mean_queries_h: float

    def to_dict(self) -> dict:
        return {
            "params": self.params,
            "trials": self.trials,
            "g_side_rate": self.g_side_rate,
            "h_side_rate": self.h_side_rate,
            "mean_queries_g": self.mean_queries_g,
            "mean_queries_h": self.mean_queries_h,
        }


def _entry_point(sampler: str):
    if sampler == "hybrid":
        return sample_edge_hyb
    if sampler == "is":
        return sample_edge_is
    raise ValueError(f"unknown sampler {sampler!r}")


def distinguishability_experiment(sampler: str, params: LowerBoundParams, trials: int,
                                  seed: int = 0, eps: float = 0.2,
                                  time_budget: float | None = None) -> DistinguishabilityReport:
    """Run the sampler on randomly relabeled copies of ``G`` and ``H``.

    Each trial draws a fresh uniform relabeling, runs one sampler call on
    each relabeled graph with exact advice, and records whether the output
    lies outside the relabeled edge set of ``G``. Rates are fractions of
    all trials (rejects count as not outside).

    With ``time_budget`` (seconds) no new trial starts once the budget is
    spent; ``trials`` in the report is then the number completed.
    """
    entry = _entry_point(sampler)
    g, h = build_g(params), build_h(params)
    advice = AdviceProvider("exact")
    outside = {"g": 0, "h": 0}
    queries = {"g": 0, "h": 0}
    start = time.perf_counter()
    done = 0
    for t in range(trials):
        if time_budget is not None and time.perf_counter() - start >= time_budget:
            break
        perm = list(range(params.n))
        random.Random(derive_seed(seed, t, 0)).shuffle(perm)
        g_edges = relabel(g, perm).edges
        for side, graph, key in (("g", g, 1), ("h", h, 2)):
            session = OracleSession(relabel(graph, perm), seed=derive_seed(seed, t, key))
            edge = entry(session, eps, advice)
            if edge is not None and edge not in g_edges:
                outside[side] += 1
            queries[side] += session.sampling_counters()["total"]
        done += 1
    denom = done if done else 1
    return DistinguishabilityReport(
        params={**params.as_dict(), "sampler": sampler, "eps": eps, "seed": seed},
        trials=done,
        g_side_rate=outside["g"] / denom,
        h_side_rate=outside["h"] / denom,
        mean_queries_g=queries["g"] / denom,
        mean_queries_h=queries["h"] / denom,
    )
