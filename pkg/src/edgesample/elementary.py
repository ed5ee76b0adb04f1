"""Building blocks shared by both samplers.

Everything here talks to the graph through an
:class:`~edgesample.oracle.OracleSession` and only issues independent-set
queries. Samplers signal failure by returning ``None`` (a reject); callers
must test ``is None`` since vertex 0 is a valid answer.

Two sampling densities appear throughout. Loneliness and starness tests use
random sets drawn at ``p = 1 / (10 * sqrt(mtilde))`` (capped at 1), where
``mtilde`` is the edge-count advice:

* the *loneliness factor* of a pair ``u, v`` is the probability that, for a
  random set ``S``, the only edge inside ``S + {u, v}`` is ``uv`` itself;
* the *starness factor* of ``u`` is the probability that ``S - {u}`` spans no
  edge while ``u`` has neighbors in ``S``, with weight 1/2 when it has exactly
  one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

from .graph import Edge
from .oracle import OracleSession

__all__ = [
    "DEFAULT_LOG_CONST",
    "EventSource",
    "IndicatorInvParams",
    "estimate_indicator_inverse",
    "lone_density",
    "extract_edge",
    "enumerate_edges",
    "sample_edge_bruteforce",
    "test_loneliness",
    "loneliness_event",
    "sample_lone_edge",
    "test_starness",
    "starness_event",
    "sample_star_vertex",
]

#: Default constant ``C`` in the ``ln(C / eps)`` normalizer of the inverse filter.
DEFAULT_LOG_CONST = 4.0

EventSource = Callable[[], bool]


@dataclass(frozen=True)
class IndicatorInvParams:
    """Parameters of :func:`estimate_indicator_inverse`.

    Attributes:
        eps: accuracy in (0, 1].
        rho: assumed lower bound on the success probability of the source.
        c: constant inside ``ln(c / eps)``.
    """

    eps: float
    rho: float
    c: float = DEFAULT_LOG_CONST

    def __post_init__(self):
        if not 0.0 < self.eps <= 1.0:
            raise ValueError(f"eps must lie in (0, 1], got {self.eps}")
        if not 0.0 < self.rho <= 1.0:
            raise ValueError(f"rho must lie in (0, 1], got {self.rho}")
        if self.log_term <= 0.0:
            raise ValueError(f"ln(c/eps) must be positive (c={self.c}, eps={self.eps})")
        if self.max_calls < 1:
            raise ValueError("ln(c/eps)/rho must be at least 1")

    @property
    def log_term(self) -> float:
        return math.log(self.c / self.eps)

    @property
    def max_calls(self) -> int:
        return math.floor(self.log_term / self.rho)


def estimate_indicator_inverse(src: EventSource, params: IndicatorInvParams, s: OracleSession) -> bool:
    """Return a bit whose mean is close to ``rho / (P[src] * ln(c/eps))``.

    Calls ``src`` until it first succeeds, at most ``params.max_calls``
    times, and outputs 1 with probability ``calls * rho / ln(c/eps)``.
    When ``P[src] >= rho`` the mean is within a factor ``e^{+-eps}`` of the
    target.
    """
    log_term = params.log_term
    max_calls = params.max_calls
    calls = 0
    while calls < max_calls:
        calls += 1
        if src():
            break
    return s.rng.random() < min(calls * params.rho / log_term, 1.0)


def lone_density(mtilde: float) -> float:
    """Density ``min(1, 1/(10*sqrt(mtilde)))`` used by loneliness and starness sets."""
    if mtilde <= 0:
        raise ValueError(f"edge-count advice must be positive, got {mtilde}")
    return min(1.0, 1.0 / (10.0 * math.sqrt(mtilde)))


def _split(members: list[int]) -> tuple[list[int], list[int]]:
    half = (len(members) + 1) // 2
    return members[:half], members[half:]


def _extract_from_dependent(s: OracleSession, members: list[int]) -> Edge:
    """Locate an edge inside ``members`` (sorted), already known to span one."""
    while True:
        first, second = _split(members)
        if not s.query_is(first):
            members = first
        elif not s.query_is(second):
            members = second
        else:
            break
    # Every edge now crosses from `first` to `second`. Halve each side while
    # keeping at least one crossing edge.
    while len(first) > 1:
        low, high = _split(first)
        first = high if s.query_is(low + second) else low
    while len(second) > 1:
        low, high = _split(second)
        second = low if s.query_is(first + high) else high
    return Edge.of(first[0], second[0])


def extract_edge(s: OracleSession, vertices: Iterable[int]) -> Edge | None:
    """Return some edge spanned by ``vertices``, or ``None`` if there is none.

    Deterministic in the set: it is halved in ascending id order, with the
    lower half taking the extra vertex. Uses at most
    ``2*ceil(log2 |S|) + 1`` independent-set queries.
    """
    members = sorted(set(vertices))
    if len(members) <= 1:
        return None
    if s.query_is(members):
        return None
    return _extract_from_dependent(s, members)


def _neighbors_within(s: OracleSession, u: int, candidates: list[int]) -> list[int]:
    found = []
    stack = [candidates]
    while stack:
        block = stack.pop()
        if not block or s.query_is(block + [u]):
            continue
        if len(block) == 1:
            found.append(block[0])
            continue
        low, high = _split(block)
        stack.append(high)
        stack.append(low)
    return found


def _enumerate_by_peeling(s: OracleSession) -> list[Edge]:
    remaining = list(range(s.n))
    found = []
    while True:
        edge = extract_edge(s, remaining)
        if edge is None:
            break
        u = edge.u
        remaining = [w for w in remaining if w != u]
        # A block that rejects together with u either holds a neighbor of u
        # or an edge of its own; splitting down to singletons separates them.
        found.extend(Edge.of(u, w) for w in _neighbors_within(s, u, remaining))
    return sorted(found)


def _enumerate_all_pairs(s: OracleSession) -> list[Edge]:
    return [Edge(a, b) for a in range(s.n) for b in range(a + 1, s.n) if not s.query_is((a, b))]


def enumerate_edges(s: OracleSession, strategy: str = "peel") -> list[Edge]:
    """Recover the full edge list with independent-set queries.

    ``strategy="peel"`` repeatedly extracts an edge, finds every neighbor of
    one endpoint by splitting, and removes that endpoint. ``"pairs"`` probes
    every pair of vertices. Both return the sorted edge list.
    """
    if strategy == "peel":
        return _enumerate_by_peeling(s)
    if strategy == "pairs":
        return _enumerate_all_pairs(s)
    raise ValueError(f"unknown enumeration strategy {strategy!r}")


def sample_edge_bruteforce(s: OracleSession) -> Edge | None:
    """Exactly uniform edge by full enumeration; ``None`` for an edgeless graph."""
    edges = enumerate_edges(s)
    if not edges:
        return None
    return edges[s.rng.randrange(len(edges))]


def test_loneliness(s: OracleSession, vertices: Iterable[int], u: int, v: int) -> bool:
    """True iff ``uv`` is the only edge inside ``vertices + {u, v}``.

    Whether ``u`` or ``v`` already belong to the set does not matter.
    """
    base = set(vertices)
    without_u = base | {v}
    without_u.discard(u)
    if not s.query_is(without_u):
        return False
    without_v = base | {u}
    without_v.discard(v)
    return s.query_is(without_v)


# Keep pytest from collecting the procedures above as tests when imported.
test_loneliness.__test__ = False


def loneliness_event(s: OracleSession, mtilde: float, u: int, v: int) -> bool:
    """Succeeds with probability exactly the loneliness factor of ``u, v``."""
    subset = s.draw_bernoulli_subset(lone_density(mtilde))
    return test_loneliness(s, subset, u, v)


def sample_lone_edge(s: OracleSession, mtilde: float) -> Edge | None:
    """Return each edge ``uv`` with probability ``p**2`` times its loneliness factor."""
    subset = s.draw_bernoulli_subset(lone_density(mtilde))
    if s.query_is(subset):
        return None
    edge = _extract_from_dependent(s, sorted(subset))
    if test_loneliness(s, subset, edge.u, edge.v):
        return edge
    return None


def test_starness(s: OracleSession, vertices: Iterable[int], u: int) -> bool:
    """Accept as if ``u`` were drawn by :func:`sample_star_vertex` from ``vertices + {u}``.

    Rejects when the set without ``u`` spans an edge or when ``u`` has no
    neighbor in it; accepts with probability 1/2 when ``u`` has exactly one
    neighbor there and always when it has at least two.
    """
    rest = set(vertices)
    rest.discard(u)
    if not s.query_is(rest):
        return False
    with_u = rest | {u}
    if s.query_is(with_u):
        return False
    edge = _extract_from_dependent(s, sorted(with_u))
    if test_loneliness(s, rest, edge.u, edge.v):
        return s.rng.random() < 0.5
    return True


test_starness.__test__ = False


def starness_event(s: OracleSession, mtilde: float, u: int) -> bool:
    """Succeeds with probability exactly the starness factor of ``u``."""
    subset = s.draw_bernoulli_subset(lone_density(mtilde))
    return test_starness(s, subset, u)


def sample_star_vertex(s: OracleSession, mtilde: float) -> int | None:
    """Return each vertex ``u`` with probability ``p`` times its starness factor."""
    subset = s.draw_bernoulli_subset(lone_density(mtilde))
    if s.query_is(subset):
        return None
    edge = _extract_from_dependent(s, sorted(subset))
    w, z = edge
    if s.rng.random() < 0.5:
        w, z = z, w
    if s.query_is(subset - {w}):
        return w
    if s.query_is(subset - {z}):
        return z
    return None
