"""Query access to a hidden graph with per-oracle accounting.

Sampling algorithms never touch a :class:`~edgesample.graph.GraphInstance`
directly. They receive an :class:`OracleSession`, which answers degree,
neighbor and independent-set queries, counts every call, and owns the
random stream used for coins and random vertex subsets.
"""

from __future__ import annotations

import math
import random
from typing import Iterable

import numpy as np

from .graph import GraphInstance

__all__ = ["OracleSession", "QueryBudgetExceeded", "derive_seed"]


class QueryBudgetExceeded(RuntimeError):
    """Raised when a session with a query budget exceeds it."""


def derive_seed(master: int, *keys: int) -> int:
    """Child seed for ``(master, *keys)`` via numpy's SeedSequence spawning.

    Distinct key tuples give statistically independent streams, so trial
    ``t`` of an experiment seeded with ``master`` is reproducible on its own.
    """
    seq = np.random.SeedSequence(entropy=int(master), spawn_key=tuple(int(k) for k in keys))
    words = seq.generate_state(4, dtype=np.uint32)
    return int.from_bytes(words.tobytes(), "little")


class OracleSession:
    """One single-threaded run of an algorithm against one graph.

    Args:
        graph: the hidden graph.
        seed: seed of the session random stream.
        budget: optional cap on the total number of queries; exceeding it
            raises :class:`QueryBudgetExceeded`.
    """

    def __init__(self, graph: GraphInstance, seed: int = 0, budget: int | None = None):
        self.graph = graph
        self.n = graph.n
        self.rng = random.Random(seed)
        self.budget = budget
        self.is_queries = 0
        self.degree_queries = 0
        self.neighbor_queries = 0
        # Queries spent by the edge-count advice provider, reported apart
        # from the sampling cost.
        self.advice_by_kind = {"is": 0, "degree": 0, "neighbor": 0}
        self._adj = graph.adjacency
        self._adj_sets = graph.adjacency_sets

    @property
    def total_queries(self) -> int:
        return self.is_queries + self.degree_queries + self.neighbor_queries

    def counters(self) -> dict[str, int]:
        return {
            "is": self.is_queries,
            "degree": self.degree_queries,
            "neighbor": self.neighbor_queries,
            "total": self.total_queries,
        }

    @property
    def advice_queries(self) -> int:
        return sum(self.advice_by_kind.values())

    def sampling_counters(self) -> dict[str, int]:
        """Like :meth:`counters` but without the queries billed to advice."""
        spent = self.counters()
        for kind, used in self.advice_by_kind.items():
            spent[kind] -= used
        spent["total"] -= self.advice_queries
        return spent

    def bill_advice(self, before: dict[str, int]) -> None:
        """Attribute every query made since the ``before`` snapshot to advice."""
        now = self.counters()
        for kind in self.advice_by_kind:
            self.advice_by_kind[kind] += now[kind] - before[kind]

    def _check_budget(self) -> None:
        if self.total_queries > self.budget:
            raise QueryBudgetExceeded(f"query budget {self.budget} exceeded")

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range for n={self.n}")

    def query_degree(self, v: int) -> int:
        """Degree of ``v``."""
        self._check_vertex(v)
        self.degree_queries += 1
        if self.budget is not None:
            self._check_budget()
        return len(self._adj[v])

    def query_neighbor(self, v: int, i: int) -> int:
        """The ``i``-th neighbor of ``v`` (1-based, ascending id order)."""
        self._check_vertex(v)
        nb = self._adj[v]
        if not 1 <= i <= len(nb):
            raise IndexError(f"neighbor index {i} out of range for vertex {v} of degree {len(nb)}")
        self.neighbor_queries += 1
        if self.budget is not None:
            self._check_budget()
        return nb[i - 1]

    def query_is(self, vertices: Iterable[int]) -> bool:
        """True iff ``vertices`` spans no edge of the graph.

        Members are assumed to be valid vertex ids; this is the hot path of
        every sampler, so they are not range-checked here.
        """
        self.is_queries += 1
        if self.budget is not None:
            self._check_budget()
        if not isinstance(vertices, (set, frozenset)):
            vertices = set(vertices)
        if len(vertices) < 2:
            return True
        adj = self._adj_sets
        for v in vertices:
            if not adj[v].isdisjoint(vertices):
                return False
        return True

    def uniform_neighbor(self, v: int) -> int:
        """A uniformly random neighbor of ``v`` (one degree and one neighbor query)."""
        d = self.query_degree(v)
        if d == 0:
            raise ValueError(f"vertex {v} has no neighbors")
        return self.query_neighbor(v, self.rng.randrange(d) + 1)

    def draw_bernoulli_subset(self, p: float, exclude: Iterable[int] = ()) -> set[int]:
        """Include each vertex outside ``exclude`` independently with probability ``p``.

        Free randomness: no oracle counter moves. Members are found by
        geometric skipping, so the cost is proportional to the output size.
        """
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"probability out of range: {p}")
        n = self.n
        if p == 0.0 or n == 0:
            return set()
        if p == 1.0:
            out = set(range(n))
        else:
            out = set()
            rand = self.rng.random
            log_miss = math.log1p(-p)
            i = -1
            while True:
                # Number of misses before the next hit is Geometric(p).
                i += 1 + int(math.log(1.0 - rand()) / log_miss)
                if i >= n:
                    break
                out.add(i)
        if exclude:
            out.difference_update(exclude)
        return out

    def uniform_vertex(self) -> int:
        """A uniformly random vertex id (free randomness)."""
        return self.rng.randrange(self.n)

    def coin(self, prob: float) -> bool:
        """True with probability ``prob`` (clamped to [0, 1])."""
        return self.rng.random() < prob
