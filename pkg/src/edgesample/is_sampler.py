"""Edge sampler that uses independent-set queries only.

Without degree queries, a vertex counts as *high* when a statistical test
(:func:`test_high_degree`) says its degree is well above ``k = sqrt(mtilde)``.
Edges with no high endpoint come from lone-edge sampling; edges with a high
endpoint come from a star vertex followed by a simulated neighbor draw.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .elementary import (
    DEFAULT_LOG_CONST,
    IndicatorInvParams,
    _extract_from_dependent,
    estimate_indicator_inverse,
    loneliness_event,
    sample_edge_bruteforce,
    sample_lone_edge,
    sample_star_vertex,
    starness_event,
    test_loneliness,
)
from .graph import Edge
from .hybrid import AMPLIFY_FACTOR
from .oracle import OracleSession

__all__ = [
    "BRUTE_FORCE_BELOW",
    "ISThresholds",
    "sample_neighbor_is",
    "neighborhood_event",
    "high_degree_rounds",
    "test_high_degree",
    "sample_ll_edge_is",
    "sample_h_edge_is",
    "core_error_budget",
    "core_branch_masses",
    "sample_edge_core_is",
    "amplified_loop_count",
    "sample_edge_amplified_is",
    "is_error_budget",
    "sample_edge_is",
]

#: Advice values below this route to exhaustive enumeration.
BRUTE_FORCE_BELOW = 36.0


@dataclass(frozen=True)
class ISThresholds:
    """Derived quantities for a graph on ``n`` vertices with advice ``mtilde``."""

    n: int
    mtilde: float

    @property
    def k(self) -> float:
        """Degree threshold ``sqrt(mtilde)``."""
        return math.sqrt(self.mtilde)

    @property
    def nstar(self) -> float:
        """``min(n, 2 mtilde)``: bound on the number of non-isolated vertices."""
        return min(self.n, 2.0 * self.mtilde)

    @property
    def full_range(self) -> bool:
        """True when ``nstar == n``, i.e. neighbors are drawn from all of V."""
        return self.n <= 2.0 * self.mtilde

    @property
    def rtilde(self) -> float:
        return min(math.sqrt(self.mtilde), self.n / math.sqrt(self.mtilde))


def _inverse_filter(s: OracleSession, src, eps: float, rho: float, c: float) -> bool:
    return estimate_indicator_inverse(src, IndicatorInvParams(eps, rho, c), s)


def sample_neighbor_is(s: OracleSession, mtilde: float, u: int) -> int | None:
    """Return a neighbor of ``u`` or ``None``.

    When ``n <= 2 mtilde`` each neighbor comes out with probability ``1/n``.
    Otherwise each neighbor ``v`` comes out with probability
    ``N(u, v) / mtilde``, where ``N(u, v)`` is the chance that ``uv`` is the
    only edge in a random set of density ``1/mtilde`` plus ``u, v``.
    """
    if ISThresholds(s.n, mtilde).full_range:
        v = s.uniform_vertex()
        if s.query_is((u, v)):
            return None
        return v
    subset = s.draw_bernoulli_subset(min(1.0, 1.0 / mtilde), exclude=(u,))
    with_u = subset | {u}
    if s.query_is(with_u):
        return None
    edge = _extract_from_dependent(s, sorted(with_u))
    if u not in edge:
        return None
    v = edge.other(u)
    if test_loneliness(s, subset, u, v):
        return v
    return None


def neighborhood_event(s: OracleSession, mtilde: float, u: int, v: int) -> bool:
    """Succeeds with probability ``N(u, v)`` (loneliness at density ``1/mtilde``)."""
    subset = s.draw_bernoulli_subset(min(1.0, 1.0 / mtilde))
    return test_loneliness(s, subset, u, v)


def high_degree_rounds(r: float) -> int:
    """Rounds used by :func:`test_high_degree` for error ``r``."""
    return math.ceil(400.0 * math.log(1.0 / r))


def test_high_degree(s: OracleSession, mtilde: float, u: int, r: float) -> bool:
    """Accept vertices of degree at least ``2k``, reject those of degree at most ``k``.

    Each round draws a set of density ``1/(8k)`` without ``u`` and scores
    when ``u`` has a neighbor in it while the set itself is independent.
    Accepts when at least 13/80 of the rounds score. Both errors are at most
    ``r``. Always makes exactly two queries per round.
    """
    if not 0.0 < r < 1.0:
        raise ValueError(f"error probability must lie in (0, 1), got {r}")
    rounds = high_degree_rounds(r)
    density = min(1.0, 1.0 / (8.0 * math.sqrt(mtilde)))
    draw = s.draw_bernoulli_subset
    query = s.query_is
    exclude = (u,)
    score = 0
    for _ in range(rounds):
        subset = draw(density, exclude)
        touches_u = not query(subset | {u})
        independent = query(subset)
        if touches_u and independent:
            score += 1
    return score >= 13.0 * rounds / 80.0


test_high_degree.__test__ = False


def sample_ll_edge_is(s: OracleSession, eps: float, mtilde: float, r: float,
                      c: float = DEFAULT_LOG_CONST) -> Edge | None:
    """Sample an edge whose endpoints both fail the high-degree test."""
    edge = sample_lone_edge(s, mtilde)
    if edge is None:
        return None
    u, v = edge
    if not _inverse_filter(s, lambda: loneliness_event(s, mtilde, u, v), eps, 0.5, c):
        return None
    if test_high_degree(s, mtilde, u, r) or test_high_degree(s, mtilde, v, r):
        return None
    return edge


def sample_h_edge_is(s: OracleSession, eps: float, mtilde: float, r: float,
                     c: float = DEFAULT_LOG_CONST) -> Edge | None:
    """Sample an edge with at least one endpoint that passes the high-degree test.

    When both endpoints pass, a fair coin halves the rate so the edge is not
    counted twice (once from each side).
    """
    u = sample_star_vertex(s, mtilde)
    if u is None:
        return None
    v = sample_neighbor_is(s, mtilde, u)
    if v is None:
        return None
    if not test_high_degree(s, mtilde, u, r):
        return None
    if test_high_degree(s, mtilde, v, r) and s.rng.random() < 0.5:
        return None
    if ISThresholds(s.n, mtilde).full_range:
        passed = _inverse_filter(s, lambda: starness_event(s, mtilde, u), eps, 1.0 / 375.0, c)
    else:
        def star_and_neighbor() -> bool:
            return starness_event(s, mtilde, u) and neighborhood_event(s, mtilde, u, v)

        passed = _inverse_filter(s, star_and_neighbor, eps, 1.0 / 750.0, c)
    if not passed:
        return None
    return Edge.of(u, v)


def core_error_budget(n: int, eps: float, c: float = DEFAULT_LOG_CONST) -> float:
    """Error ``r`` handed to the high-degree tests in one core round."""
    return (eps * eps / math.log(c / eps)) / (15000.0 * n * n)


def core_branch_masses(n: int, mtilde: float) -> list[tuple[str, float]]:
    """Coin weights of the core mixture, in the order the coin is read."""
    th = ISThresholds(n, mtilde)
    return [("ll", math.sqrt(mtilde) / (75.0 * th.nstar)), ("h", 0.25)]


def _core_round(s, eps, mtilde, c, ll_mass, r) -> Edge | None:
    coin = s.rng.random()
    if coin < ll_mass:
        return sample_ll_edge_is(s, eps, mtilde, r, c)
    if coin < ll_mass + 0.25:
        return sample_h_edge_is(s, eps, mtilde, r, c)
    return None


def sample_edge_core_is(s: OracleSession, eps: float, mtilde: float,
                        c: float = DEFAULT_LOG_CONST) -> Edge | None:
    """One round of the low/high mixture.

    Every edge comes out with probability close to
    ``e^{+-2eps} / (15000 nstar sqrt(mtilde) ln(c/eps))`` under valid advice.
    """
    ll_mass = core_branch_masses(s.n, mtilde)[0][1]
    return _core_round(s, eps, mtilde, c, ll_mass, core_error_budget(s.n, eps, c))


def amplified_loop_count(n: int, mtilde: float, eps: float, c: float = DEFAULT_LOG_CONST) -> int:
    return math.ceil(AMPLIFY_FACTOR * ISThresholds(n, mtilde).rtilde * math.log(c / eps))


def sample_edge_amplified_is(s: OracleSession, eps: float, mtilde: float,
                             c: float = DEFAULT_LOG_CONST) -> Edge | None:
    """Repeat the core round with accuracy ``eps/5`` until it returns an edge."""
    inner = eps / 5.0
    ll_mass = core_branch_masses(s.n, mtilde)[0][1]
    r = core_error_budget(s.n, inner, c)
    for _ in range(amplified_loop_count(s.n, mtilde, eps, c)):
        edge = _core_round(s, inner, mtilde, c, ll_mass, r)
        if edge is not None:
            return edge
    return None


def is_error_budget(n: int, eps: float) -> float:
    """Failure probability allowed for the edge-count advice (natural log floored at 1)."""
    log_n = max(math.log(n), 1.0) if n > 0 else 1.0
    return min(eps * eps / 6.0, 1.0 / (max(n, 1) ** 2 * log_n))


def sample_edge_is(s: OracleSession, eps: float, advice, c: float = DEFAULT_LOG_CONST) -> Edge | None:
    """Draw an almost uniform edge using independent-set queries only."""
    eps = min(eps, 1.0 / 3.0)
    r = is_error_budget(s.n, eps)
    before = s.counters()
    mtilde = advice.estimate(s, r)
    s.bill_advice(before)
    if mtilde < BRUTE_FORCE_BELOW:
        return sample_edge_bruteforce(s)
    return sample_edge_amplified_is(s, eps / 5.0, mtilde, c)
