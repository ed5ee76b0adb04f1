"""Ground-truth values of the loneliness, starness and neighborhood factors.

For graphs with at most :data:`EXACT_LIMIT` vertices the factors are computed
exactly by summing ``p**|S| * (1-p)**(n-|S|)`` over all vertex subsets ``S``.
Larger graphs fall back to Monte Carlo on the ground-truth graph, with a
binomial confidence interval. None of this goes through the oracles.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import stats

from ..elementary import lone_density
from ..graph import GraphInstance

__all__ = [
    "EXACT_LIMIT",
    "FactorValue",
    "brute_force_factor",
    "factor_density",
    "loneliness_exact",
    "starness_exact",
    "neighborhood_exact",
    "tininess",
    "high_degree_score_prob",
]

EXACT_LIMIT = 15
KINDS = ("loneliness", "starness", "neighborhood")


@dataclass(frozen=True)
class FactorValue:
    """A factor value; ``low``/``high`` bound it (equal to it when exact)."""

    value: float
    low: float
    high: float
    exact: bool


def factor_density(kind: str, mtilde: float) -> float:
    if kind in ("loneliness", "starness"):
        return lone_density(mtilde)
    if kind == "neighborhood":
        if mtilde <= 0:
            raise ValueError(f"edge-count advice must be positive, got {mtilde}")
        return min(1.0, 1.0 / mtilde)
    raise ValueError(f"unknown factor kind {kind!r}")


@lru_cache(maxsize=64)
def _popcounts(n: int) -> np.ndarray:
    masks = np.arange(1 << n, dtype=np.int64)
    counts = np.zeros(1 << n, dtype=np.int64)
    for bit in range(n):
        counts += (masks >> bit) & 1
    return counts


def _weights(n: int, p: float, free: int | None = None) -> np.ndarray:
    """Probability of each subset mask of ``n`` vertices at density ``p``.

    ``free`` is the number of vertices actually drawn (default ``n``); used
    when some bits are forced to zero.
    """
    sizes = _popcounts(n)
    free = n if free is None else free
    if p == 1.0:
        return (sizes == free).astype(float)
    if p == 0.0:
        return (sizes == 0).astype(float)
    return np.exp(sizes * math.log(p) + (free - sizes) * math.log1p(-p))


def _spans_edge(masks: np.ndarray, edges) -> np.ndarray:
    hit = np.zeros(masks.shape, dtype=bool)
    for a, b in edges:
        hit |= ((masks >> a) & 1).astype(bool) & ((masks >> b) & 1).astype(bool)
    return hit


def _masks(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


def _check_exact(graph: GraphInstance) -> None:
    if graph.n > EXACT_LIMIT:
        raise ValueError(f"exact enumeration limited to n <= {EXACT_LIMIT}, got n={graph.n}")


def _lonely_prob(graph: GraphInstance, p: float, u: int, v: int) -> float:
    masks = _masks(graph.n) | (1 << u) | (1 << v)
    others = [e for e in graph.edges if {e.u, e.v} != {u, v}]
    good = ~_spans_edge(masks, others)
    return float(_weights(graph.n, p)[good].sum())


def loneliness_exact(graph: GraphInstance, mtilde: float, u: int, v: int) -> float:
    """Chance that ``uv`` is the only edge in ``S + {u, v}`` (density ``lone_density``)."""
    _check_exact(graph)
    return _lonely_prob(graph, factor_density("loneliness", mtilde), u, v)


def neighborhood_exact(graph: GraphInstance, mtilde: float, u: int, v: int) -> float:
    """Same event as loneliness at density ``min(1, 1/mtilde)``; needs ``v`` adjacent to ``u``."""
    _check_exact(graph)
    if not graph.has_edge(u, v):
        raise ValueError(f"{v} is not a neighbor of {u}")
    return _lonely_prob(graph, factor_density("neighborhood", mtilde), u, v)


def starness_exact(graph: GraphInstance, mtilde: float, u: int) -> float:
    """Half the chance of exactly one ``u``-neighbor in ``S`` plus the chance of two or more,
    both restricted to ``S - {u}`` spanning no edge."""
    _check_exact(graph)
    p = factor_density("starness", mtilde)
    masks = _masks(graph.n) & ~(1 << u)
    independent = ~_spans_edge(masks, [e for e in graph.edges if u not in e])
    hits = np.zeros(masks.shape, dtype=np.int64)
    for w in graph.adjacency[u]:
        hits += (masks >> w) & 1
    weight = _weights(graph.n, p)
    single = weight[independent & (hits == 1)].sum()
    several = weight[independent & (hits >= 2)].sum()
    return float(0.5 * single + several)


def high_degree_score_prob(graph: GraphInstance, mtilde: float, u: int) -> float:
    """Per-round scoring chance of the high-degree test for ``u``.

    A round scores when a set of density ``1/(8 sqrt(mtilde))`` drawn without
    ``u`` is independent but contains a neighbor of ``u``.
    """
    _check_exact(graph)
    p = min(1.0, 1.0 / (8.0 * math.sqrt(mtilde)))
    masks = _masks(graph.n)
    without_u = (masks >> u) & 1 == 0
    independent = ~_spans_edge(masks, graph.edges)
    touches = np.zeros(masks.shape, dtype=bool)
    for w in graph.adjacency[u]:
        touches |= ((masks >> w) & 1).astype(bool)
    weight = _weights(graph.n, p, free=graph.n - 1)
    return float(weight[without_u & independent & touches].sum())


def tininess(graph: GraphInstance, mtilde: float, u: int) -> float:
    """Fraction of ``u``'s neighbors with degree at most ``3 sqrt(mtilde**1.5 / n)``."""
    nb = graph.adjacency[u]
    if not nb:
        raise ValueError(f"vertex {u} has no neighbors")
    tiny = 3.0 * math.sqrt(mtilde**1.5 / graph.n)
    return sum(1 for w in nb if graph.degree(w) <= tiny) / len(nb)


def _draw(n: int, p: float, rng: random.Random) -> set[int]:
    return {i for i in range(n) if rng.random() < p}


def _spans(graph: GraphInstance, vertices: set[int]) -> bool:
    adj = graph.adjacency_sets
    return any(not adj[v].isdisjoint(vertices) for v in vertices)


def _monte_carlo(graph, kind, mtilde, u, v, samples, seed, confidence) -> FactorValue:
    rng = random.Random(seed)
    p = factor_density(kind, mtilde)
    total = 0.0
    for _ in range(samples):
        subset = _draw(graph.n, p, rng)
        if kind == "starness":
            rest = subset - {u}
            if _spans(graph, rest):
                continue
            hits = len(rest & graph.adjacency_sets[u])
            total += 0.5 if hits == 1 else (1.0 if hits >= 2 else 0.0)
        else:
            whole = subset | {u, v}
            adj = graph.adjacency_sets
            # Count edge endpoints inside `whole`, ignoring the pair itself.
            ends = sum(len(adj[w] & whole) for w in whole)
            if graph.has_edge(u, v):
                ends -= 2
            total += 1.0 if ends == 0 else 0.0
    mean = total / samples
    z = stats.norm.isf((1.0 - confidence) / 2.0)
    half = z * math.sqrt(max(mean * (1.0 - mean), 0.25 / samples) / samples)
    return FactorValue(mean, max(0.0, mean - half), min(1.0, mean + half), exact=False)


def brute_force_factor(graph: GraphInstance, kind: str, mtilde: float, u: int, v: int | None = None,
                       samples: int = 200_000, seed: int = 0, confidence: float = 0.999) -> FactorValue:
    """Loneliness, starness or neighborhood factor from the ground-truth graph.

    Exact for ``n <= EXACT_LIMIT``; otherwise a Monte Carlo estimate with a
    normal-approximation confidence interval at ``confidence``.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown factor kind {kind!r}")
    if not 0 <= u < graph.n:
        raise ValueError(f"vertex {u} out of range")
    if kind == "starness":
        if v is not None:
            raise ValueError("starness takes a single vertex")
    else:
        if v is None or not 0 <= v < graph.n or v == u:
            raise ValueError(f"{kind} needs a second vertex distinct from u")
        if kind == "neighborhood" and not graph.has_edge(u, v):
            raise ValueError(f"{v} is not a neighbor of {u}")
    if graph.n <= EXACT_LIMIT:
        if kind == "loneliness":
            value = loneliness_exact(graph, mtilde, u, v)
        elif kind == "starness":
            value = starness_exact(graph, mtilde, u)
        else:
            value = neighborhood_exact(graph, mtilde, u, v)
        return FactorValue(value, value, value, exact=True)
    return _monte_carlo(graph, kind, mtilde, u, v, samples, seed, confidence)
