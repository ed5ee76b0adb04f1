"""Edge sampler using independent-set, degree and neighbor queries.

Vertices are classified by degree against thresholds derived from the
edge-count advice ``mtilde`` (see :class:`HybridThresholds`): *low* up to
``k2``, *medium* in ``(k2, k3]`` and *high* above ``k3``; *tiny* vertices
have degree at most ``k1``. Each category pair of edge endpoints has its own
subroutine, and :func:`sample_edge_core_hyb` mixes them with coin weights
that equalize the per-edge probabilities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .elementary import (
    DEFAULT_LOG_CONST,
    IndicatorInvParams,
    estimate_indicator_inverse,
    loneliness_event,
    sample_edge_bruteforce,
    sample_lone_edge,
    sample_star_vertex,
    starness_event,
)
from .graph import Edge
from .oracle import OracleSession

__all__ = [
    "AMPLIFY_FACTOR",
    "BRUTE_FORCE_BELOW",
    "HybridThresholds",
    "core_branch_masses",
    "amplified_loop_count",
    "sample_ll_edge_hyb",
    "sample_mh_vertex_hyb",
    "sample_lmh_edge_hyb",
    "sample_lm_edge_hyb",
    "tininess_event",
    "sample_lh_edge_local",
    "sample_mhmh_edge_hyb",
    "sample_edge_core_hyb",
    "sample_edge_amplified_hyb",
    "sample_edge_hyb",
    "hybrid_error_budget",
]

#: Core repetitions per unit of ``rtilde * ln(c/eps)`` in the amplified sampler.
AMPLIFY_FACTOR = 10**6
#: Advice values below this route to exhaustive enumeration.
BRUTE_FORCE_BELOW = 4.0


@dataclass(frozen=True)
class HybridThresholds:
    """Degree thresholds for a graph on ``n`` vertices with advice ``mtilde``."""

    n: int
    mtilde: float

    @property
    def tiny(self) -> float:
        """``k1``: upper bound on tiny degrees."""
        return 3.0 * math.sqrt(self.mtilde**1.5 / self.n)

    @property
    def low(self) -> float:
        """``k2``: upper bound on low degrees."""
        return math.sqrt(self.mtilde)

    @property
    def medium(self) -> float:
        """``k3``: upper bound on medium degrees."""
        return math.sqrt(self.n * math.sqrt(self.mtilde))

    @property
    def sparse(self) -> bool:
        """True when ``sqrt(mtilde) <= sqrt(n / sqrt(mtilde))``."""
        return math.sqrt(self.mtilde) <= math.sqrt(self.n / math.sqrt(self.mtilde))

    @property
    def rtilde(self) -> float:
        return min(math.sqrt(self.mtilde), math.sqrt(self.n / math.sqrt(self.mtilde)))


def _inverse_filter(s: OracleSession, src, eps: float, rho: float, c: float) -> bool:
    return estimate_indicator_inverse(src, IndicatorInvParams(eps, rho, c), s)


def sample_ll_edge_hyb(s: OracleSession, eps: float, mtilde: float,
                       c: float = DEFAULT_LOG_CONST) -> Edge | None:
    """Sample an edge with both endpoint degrees at most ``k2``.

    Each such edge comes out with probability ``e^{+-eps} / (200 mtilde ln(c/eps))``.
    """
    low = math.sqrt(mtilde)
    edge = sample_lone_edge(s, mtilde)
    if edge is None:
        return None
    u, v = edge
    if s.query_degree(u) > low or s.query_degree(v) > low:
        return None
    if not _inverse_filter(s, lambda: loneliness_event(s, mtilde, u, v), eps, 0.5, c):
        return None
    return edge


def sample_mh_vertex_hyb(s: OracleSession, eps: float, mtilde: float,
                         c: float = DEFAULT_LOG_CONST) -> int | None:
    """Sample a vertex of degree above ``k2``.

    Each such vertex comes out with probability ``e^{+-eps} / (300 sqrt(mtilde) ln(c/eps))``.
    """
    u = sample_star_vertex(s, mtilde)
    if u is None:
        return None
    if s.query_degree(u) <= math.sqrt(mtilde):
        return None
    if not _inverse_filter(s, lambda: starness_event(s, mtilde, u), eps, 1.0 / 30.0, c):
        return None
    return u


def sample_lmh_edge_hyb(s: OracleSession, eps: float, mtilde: float,
                        c: float = DEFAULT_LOG_CONST) -> Edge | None:
    """Sample an edge between a vertex of degree ``<= k2`` and one of degree ``> k2``.

    Sparse regime only. Each such edge comes out with probability
    ``e^{+-eps} / (600 mtilde sqrt(mtilde) ln(c/eps))``.
    """
    u = sample_mh_vertex_hyb(s, eps, mtilde, c)
    if u is None:
        return None
    low = math.sqrt(mtilde)
    du = s.query_degree(u)
    v = s.query_neighbor(u, s.rng.randrange(du) + 1)
    if du > low and s.query_degree(v) <= low:
        if s.rng.random() < min(1.0, du / (2.0 * mtilde)):
            return Edge.of(u, v)
    return None


def sample_lm_edge_hyb(s: OracleSession, eps: float, mtilde: float,
                       c: float = DEFAULT_LOG_CONST) -> Edge | None:
    """Sample an edge between a low vertex and a medium vertex (degree in ``(k2, k3]``).

    Dense regime only. Each such edge comes out with probability
    ``e^{+-eps} / (300 mtilde sqrt(n / sqrt(mtilde)) ln(c/eps))``.
    """
    u = sample_mh_vertex_hyb(s, eps, mtilde, c)
    if u is None:
        return None
    th = HybridThresholds(s.n, mtilde)
    low, medium = th.low, th.medium
    du = s.query_degree(u)
    v = s.query_neighbor(u, s.rng.randrange(du) + 1)
    if low < du <= medium and s.query_degree(v) <= low:
        if s.rng.random() < du / medium:
            return Edge.of(u, v)
    return None


def tininess_event(s: OracleSession, mtilde: float, u: int) -> bool:
    """Succeed iff a uniformly random neighbor of ``u`` has degree at most ``k1``."""
    v = s.uniform_neighbor(u)
    return s.query_degree(v) <= HybridThresholds(s.n, mtilde).tiny


def sample_lh_edge_local(s: OracleSession, eps: float, mtilde: float,
                         c: float = DEFAULT_LOG_CONST) -> Edge | None:
    """Sample an edge between a low vertex and a high vertex (degree above ``k3``).

    Walks two steps from a uniform vertex ``w``, keeping the walk with
    probability ``deg(w)/k1`` when ``w`` is tiny. Each such edge comes out
    with probability ``e^{+-eps} / (12 mtilde sqrt(n / sqrt(mtilde)) ln(c/eps))``.
    """
    th = HybridThresholds(s.n, mtilde)
    w = s.uniform_vertex()
    dw = s.query_degree(w)
    if dw == 0:
        return None
    u = s.query_neighbor(w, s.rng.randrange(dw) + 1)
    du = s.query_degree(u)
    v = s.query_neighbor(u, s.rng.randrange(du) + 1)
    dv = s.query_degree(v)
    if not (dw <= th.tiny and du > th.medium and dv <= th.low):
        return None
    if s.rng.random() >= dw / th.tiny:
        return None
    if not _inverse_filter(s, lambda: tininess_event(s, mtilde, u), eps, 0.25, c):
        return None
    return Edge.of(u, v)


def sample_mhmh_edge_hyb(s: OracleSession, eps: float, mtilde: float,
                         c: float = DEFAULT_LOG_CONST) -> Edge | None:
    """Sample an edge whose endpoints both have degree above ``k2``.

    Each such edge comes out with probability ``e^{+-eps} / (45000 mtilde ln(c/eps))``.
    """
    u = sample_star_vertex(s, mtilde)
    if u is None:
        return None
    v = sample_star_vertex(s, mtilde)
    if v is None or s.query_is((u, v)):
        return None
    low = math.sqrt(mtilde)
    if s.query_degree(u) <= low or s.query_degree(v) <= low:
        return None

    def both_stars() -> bool:
        return starness_event(s, mtilde, u) and starness_event(s, mtilde, v)

    if not _inverse_filter(s, both_stars, eps, 1.0 / 900.0, c):
        return None
    return Edge.of(u, v)


def core_branch_masses(n: int, mtilde: float) -> list[tuple[str, float]]:
    """Coin weights of the core mixture, in the order the coin is read."""
    th = HybridThresholds(n, mtilde)
    rt = th.rtilde
    if th.sparse:
        return [("ll", 1.0 / (225.0 * rt)), ("lmh", 1.0 / 75.0), ("mhmh", 1.0 / rt)]
    return [("ll", 1.0 / (225.0 * rt)), ("lm", 1.0 / 150.0),
            ("lh", 1.0 / 3750.0), ("mhmh", 1.0 / rt)]


_BRANCHES = {
    "ll": sample_ll_edge_hyb,
    "lmh": sample_lmh_edge_hyb,
    "lm": sample_lm_edge_hyb,
    "lh": sample_lh_edge_local,
    "mhmh": sample_mhmh_edge_hyb,
}


def _coin_table(n: int, mtilde: float) -> list[tuple[float, object]]:
    table = []
    cumulative = 0.0
    for name, mass in core_branch_masses(n, mtilde):
        cumulative += mass
        table.append((cumulative, _BRANCHES[name]))
    return table


def _core_round(s, eps, mtilde, c, table) -> Edge | None:
    coin = s.rng.random()
    for cumulative, branch in table:
        if coin < cumulative:
            return branch(s, eps, mtilde, c)
    return None


def sample_edge_core_hyb(s: OracleSession, eps: float, mtilde: float,
                         c: float = DEFAULT_LOG_CONST) -> Edge | None:
    """One round of the category mixture.

    Every edge comes out with probability ``e^{+-2eps} / (45000 mtilde rtilde ln(c/eps))``
    when the advice is within ``e^{+-1/10}`` of the true edge count. If the
    weights sum past 1 (advice far above ``n**2``), later branches are cut.
    """
    return _core_round(s, eps, mtilde, c, _coin_table(s.n, mtilde))


def amplified_loop_count(n: int, mtilde: float, eps: float, c: float = DEFAULT_LOG_CONST) -> int:
    return math.ceil(AMPLIFY_FACTOR * HybridThresholds(n, mtilde).rtilde * math.log(c / eps))


def sample_edge_amplified_hyb(s: OracleSession, eps: float, mtilde: float,
                              c: float = DEFAULT_LOG_CONST) -> Edge | None:
    """Repeat the core round with accuracy ``eps/5`` until it returns an edge."""
    table = _coin_table(s.n, mtilde)
    inner = eps / 5.0
    for _ in range(amplified_loop_count(s.n, mtilde, eps, c)):
        edge = _core_round(s, inner, mtilde, c, table)
        if edge is not None:
            return edge
    return None


def hybrid_error_budget(n: int, eps: float) -> float:
    """Failure probability allowed for the edge-count advice.

    Natural logs, each floored at 1 so tiny ``n`` or large ``eps`` never blow up.
    """
    log_n = max(math.log(n), 1.0) if n > 0 else 1.0
    log_inv_eps = max(math.log(1.0 / eps), 1.0)
    return min(eps * eps / 6.0, 1.0 / (max(n, 1) ** 2 * log_n * log_inv_eps**2))


def sample_edge_hyb(s: OracleSession, eps: float, advice, c: float = DEFAULT_LOG_CONST) -> Edge | None:
    """Draw an almost uniform edge; ``None`` on failure.

    Args:
        s: oracle session for the hidden graph.
        eps: target accuracy, clamped to at most 1/3.
        advice: an :class:`~edgesample.harness.advice.AdviceProvider` (or any
            object with ``estimate(session, r)``) supplying the edge count.
        c: constant of the inverse filter normalizer.
    """
    eps = min(eps, 1.0 / 3.0)
    r = hybrid_error_budget(s.n, eps)
    before = s.counters()
    mtilde = advice.estimate(s, r)
    s.bill_advice(before)
    if mtilde < BRUTE_FORCE_BELOW:
        return sample_edge_bruteforce(s)
    return sample_edge_amplified_hyb(s, eps / 5.0, mtilde, c)
