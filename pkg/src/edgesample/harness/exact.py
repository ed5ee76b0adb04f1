"""Exact output distributions of the samplers on small graphs.

Every sampler in this package returns a given edge with a probability that is
a closed-form expression in the graph's factors (loneliness, starness,
neighborhood, tininess, high-degree acceptance). :class:`ExactModel`
evaluates those expressions from the ground truth, using subset enumeration
for the factors. It serves as the reference for Monte Carlo tests and lets
the uniformity of the core mixtures be checked without sampling.
"""

from __future__ import annotations

import math
from functools import cached_property

from scipy import stats

from ..elementary import DEFAULT_LOG_CONST, IndicatorInvParams, lone_density
from ..graph import Edge, GraphInstance
from ..hybrid import HybridThresholds, amplified_loop_count as hyb_loop_count
from ..hybrid import core_branch_masses as hyb_masses
from ..is_sampler import ISThresholds, core_error_budget, high_degree_rounds
from ..is_sampler import amplified_loop_count as is_loop_count
from ..is_sampler import core_branch_masses as is_masses
from .factors import (
    high_degree_score_prob,
    loneliness_exact,
    neighborhood_exact,
    starness_exact,
    tininess,
)

__all__ = ["inverse_filter_mean", "high_degree_accept_prob", "ExactModel", "effective_masses"]


def inverse_filter_mean(q: float, eps: float, rho: float, c: float = DEFAULT_LOG_CONST) -> float:
    """Mean output of the inverse filter when its source succeeds with probability ``q``."""
    params = IndicatorInvParams(eps, rho, c)
    cap = params.max_calls
    expected_calls = cap if q <= 0.0 else (1.0 - (1.0 - q) ** cap) / q
    return min(1.0, params.rho / params.log_term * expected_calls)


def high_degree_accept_prob(score_prob: float, r: float) -> float:
    """Chance that the high-degree test accepts given its per-round scoring chance."""
    rounds = high_degree_rounds(r)
    need = math.ceil(13.0 * rounds / 80.0)
    return float(stats.binom.sf(need - 1, rounds, score_prob))


def effective_masses(masses: list[tuple[str, float]]) -> dict[str, float]:
    """Branch probabilities of a sequential coin, truncating weight past 1."""
    out = {}
    cumulative = 0.0
    for name, mass in masses:
        start = min(cumulative, 1.0)
        cumulative += mass
        out[name] = min(cumulative, 1.0) - start
    return out


def _add(dist: dict, key, value: float) -> None:
    if value:
        dist[key] = dist.get(key, 0.0) + value


class ExactModel:
    """Exact per-output probabilities for one graph and one advice value.

    Probability dictionaries map :class:`Edge` (or vertex) to the chance that
    one call of the named procedure returns it.
    """

    def __init__(self, graph: GraphInstance, mtilde: float, c: float = DEFAULT_LOG_CONST):
        self.graph = graph
        self.mtilde = float(mtilde)
        self.c = c
        self.hyb = HybridThresholds(graph.n, self.mtilde)
        self.isth = ISThresholds(graph.n, self.mtilde)
        self.density = lone_density(self.mtilde)
        self._memo: dict[tuple, float] = {}

    def _cached(self, key: tuple, compute) -> float:
        if key not in self._memo:
            self._memo[key] = compute()
        return self._memo[key]

    # Factors, cached per vertex or pair.

    def loneliness(self, u: int, v: int) -> float:
        return self._cached(("L", u, v), lambda: loneliness_exact(self.graph, self.mtilde, u, v))

    def starness(self, u: int) -> float:
        return self._cached(("S", u), lambda: starness_exact(self.graph, self.mtilde, u))

    def neighborhood(self, u: int, v: int) -> float:
        return self._cached(("N", u, v), lambda: neighborhood_exact(self.graph, self.mtilde, u, v))

    def tininess(self, u: int) -> float:
        return tininess(self.graph, self.mtilde, u)

    def score_prob(self, u: int) -> float:
        return self._cached(("Q", u), lambda: high_degree_score_prob(self.graph, self.mtilde, u))

    def high_accept(self, u: int, r: float) -> float:
        return self._cached(("A", u, r), lambda: high_degree_accept_prob(self.score_prob(u), r))

    def _deg(self, v: int) -> int:
        return self.graph.degree(v)

    @cached_property
    def directed_edges(self) -> list[tuple[int, int]]:
        return [(e.u, e.v) for e in self.graph.edges] + [(e.v, e.u) for e in self.graph.edges]

    # Elementary procedures.

    def lone_edge(self) -> dict[Edge, float]:
        p2 = self.density**2
        return {e: p2 * self.loneliness(*e) for e in self.graph.edges}

    def star_vertex(self) -> dict[int, float]:
        return {u: self.density * self.starness(u) for u in range(self.graph.n)
                if self.starness(u) > 0}

    # Hybrid subroutines.

    def ll_hyb(self, eps: float) -> dict[Edge, float]:
        low = self.hyb.low
        out = {}
        for e, prob in self.lone_edge().items():
            if self._deg(e.u) <= low and self._deg(e.v) <= low:
                _add(out, e, prob * inverse_filter_mean(self.loneliness(*e), eps, 0.5, self.c))
        return out

    def mh_vertex_hyb(self, eps: float) -> dict[int, float]:
        out = {}
        for u, prob in self.star_vertex().items():
            if self._deg(u) > self.hyb.low:
                _add(out, u, prob * inverse_filter_mean(self.starness(u), eps, 1.0 / 30.0, self.c))
        return out

    def lmh_hyb(self, eps: float) -> dict[Edge, float]:
        low = self.hyb.low
        mh = self.mh_vertex_hyb(eps)
        out = {}
        for u, v in self.directed_edges:
            du = self._deg(u)
            if u in mh and du > low and self._deg(v) <= low:
                _add(out, Edge.of(u, v), mh[u] / du * min(1.0, du / (2.0 * self.mtilde)))
        return out

    def lm_hyb(self, eps: float) -> dict[Edge, float]:
        low, medium = self.hyb.low, self.hyb.medium
        mh = self.mh_vertex_hyb(eps)
        out = {}
        for u, v in self.directed_edges:
            du = self._deg(u)
            if u in mh and low < du <= medium and self._deg(v) <= low:
                _add(out, Edge.of(u, v), mh[u] / du * (du / medium))
        return out

    def lh_local(self, eps: float) -> dict[Edge, float]:
        th = self.hyb
        n = self.graph.n
        out = {}
        for u, v in self.directed_edges:
            du = self._deg(u)
            if not (du > th.medium and self._deg(v) <= th.low):
                continue
            walk = 0.0
            for w in self.graph.adjacency[u]:
                dw = self._deg(w)
                if dw <= th.tiny:
                    walk += (1.0 / n) * (1.0 / dw) * (1.0 / du) * (dw / th.tiny)
            _add(out, Edge.of(u, v), walk * inverse_filter_mean(self.tininess(u), eps, 0.25, self.c))
        return out

    def mhmh_hyb(self, eps: float) -> dict[Edge, float]:
        low = self.hyb.low
        star = self.star_vertex()
        out = {}
        for u, v in self.directed_edges:
            if u in star and v in star and self._deg(u) > low and self._deg(v) > low:
                joint = self.starness(u) * self.starness(v)
                _add(out, Edge.of(u, v),
                     star[u] * star[v] * inverse_filter_mean(joint, eps, 1.0 / 900.0, self.c))
        return out

    def core_hyb(self, eps: float) -> dict[Edge, float]:
        branches = {"ll": self.ll_hyb, "lmh": self.lmh_hyb, "lm": self.lm_hyb,
                    "lh": self.lh_local, "mhmh": self.mhmh_hyb}
        out = {}
        for name, mass in effective_masses(hyb_masses(self.graph.n, self.mtilde)).items():
            for e, prob in branches[name](eps).items():
                _add(out, e, mass * prob)
        return out

    def amplified_hyb(self, eps: float) -> dict[Edge, float]:
        core = self.core_hyb(eps / 5.0)
        loops = hyb_loop_count(self.graph.n, self.mtilde, eps, self.c)
        return _amplify(core, loops)

    # IS subroutines.

    def neighbor_is(self, u: int) -> dict[int, float]:
        n = self.graph.n
        if self.isth.full_range:
            return {v: 1.0 / n for v in self.graph.adjacency[u]}
        p = min(1.0, 1.0 / self.mtilde)
        return {v: p * self.neighborhood(u, v) for v in self.graph.adjacency[u]}

    def ll_is(self, eps: float, r: float) -> dict[Edge, float]:
        out = {}
        for e, prob in self.lone_edge().items():
            keep = (1.0 - self.high_accept(e.u, r)) * (1.0 - self.high_accept(e.v, r))
            _add(out, e, prob * inverse_filter_mean(self.loneliness(*e), eps, 0.5, self.c) * keep)
        return out

    def h_is(self, eps: float, r: float) -> dict[Edge, float]:
        star = self.star_vertex()
        out = {}
        for u, v in self.directed_edges:
            if u not in star:
                continue
            reach = star[u] * self.neighbor_is(u).get(v, 0.0)
            gate = self.high_accept(u, r) * (1.0 - 0.5 * self.high_accept(v, r))
            if self.isth.full_range:
                filt = inverse_filter_mean(self.starness(u), eps, 1.0 / 375.0, self.c)
            else:
                joint = self.starness(u) * self.neighborhood(u, v)
                filt = inverse_filter_mean(joint, eps, 1.0 / 750.0, self.c)
            _add(out, Edge.of(u, v), reach * gate * filt)
        return out

    def core_is(self, eps: float) -> dict[Edge, float]:
        r = core_error_budget(self.graph.n, eps, self.c)
        masses = effective_masses(is_masses(self.graph.n, self.mtilde))
        out = {}
        for e, prob in self.ll_is(eps, r).items():
            _add(out, e, masses["ll"] * prob)
        for e, prob in self.h_is(eps, r).items():
            _add(out, e, masses["h"] * prob)
        return out

    def amplified_is(self, eps: float) -> dict[Edge, float]:
        core = self.core_is(eps / 5.0)
        loops = is_loop_count(self.graph.n, self.mtilde, eps, self.c)
        return _amplify(core, loops)


def _amplify(core: dict[Edge, float], loops: int) -> dict[Edge, float]:
    success = sum(core.values())
    if success <= 0.0:
        return {}
    # 1 - (1 - success)**loops, computed stably for tiny success.
    overall = -math.expm1(loops * math.log1p(-success))
    return {e: prob / success * overall for e, prob in core.items()}
