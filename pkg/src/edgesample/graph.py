"""Ground-truth graphs: construction, edge-list I/O, generators and relabeling.

A :class:`GraphInstance` is the hidden graph that samplers only ever see
through an :class:`~edgesample.oracle.OracleSession`. Vertices are the dense
integers ``0..n-1`` and every adjacency list is sorted ascending, which pins
down what ``neighbor(v, i)`` returns.
"""

from __future__ import annotations

import io
import random
from typing import Iterable, NamedTuple, Sequence, TextIO

__all__ = [
    "Edge",
    "GraphInstance",
    "GraphFormatError",
    "FAMILIES",
    "load_edge_list",
    "dump_edge_list",
    "generate",
    "relabel",
    "disjoint_union",
]


class GraphFormatError(ValueError):
    """Raised for malformed edge lists or inconsistent graph data."""


class Edge(NamedTuple):
    """Undirected edge stored with ``u < v``."""

    u: int
    v: int

    @classmethod
    def of(cls, a: int, b: int) -> "Edge":
        if a == b:
            raise ValueError(f"self-loop at vertex {a}")
        return cls(a, b) if a < b else cls(b, a)

    def other(self, x: int) -> int:
        """Return the endpoint that is not ``x``."""
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise ValueError(f"{x} is not an endpoint of {tuple(self)}")


class GraphInstance:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    Attributes:
        n: number of vertices.
        m: number of edges.
        edges: frozenset of normalized :class:`Edge` tuples.
        adjacency: per-vertex neighbor tuples, sorted ascending.
        adjacency_sets: per-vertex neighbor frozensets (for fast set tests).
    """

    __slots__ = ("n", "m", "edges", "adjacency", "adjacency_sets")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise GraphFormatError(f"vertex count must be non-negative, got {n}")
        normalized = set()
        for pair in edges:
            a, b = int(pair[0]), int(pair[1])
            if not (0 <= a < n and 0 <= b < n):
                raise GraphFormatError(f"edge ({a}, {b}) out of range for n={n}")
            if a == b:
                raise GraphFormatError(f"self-loop at vertex {a}")
            normalized.add(Edge.of(a, b))
        neighbors: list[list[int]] = [[] for _ in range(n)]
        for e in normalized:
            neighbors[e.u].append(e.v)
            neighbors[e.v].append(e.u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", len(normalized))
        object.__setattr__(self, "edges", frozenset(normalized))
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(nb)) for nb in neighbors))
        object.__setattr__(self, "adjacency_sets", tuple(frozenset(nb) for nb in neighbors))

    def __setattr__(self, name, value):
        raise AttributeError("GraphInstance is immutable")

    def __eq__(self, other):
        if not isinstance(other, GraphInstance):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"GraphInstance(n={self.n}, m={self.m})"

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self.adjacency]

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.adjacency_sets[a]

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def check_invariants(self) -> None:
        """Assert the structural invariants; raises AssertionError on violation."""
        for v, nb in enumerate(self.adjacency):
            assert list(nb) == sorted(set(nb)), f"adjacency of {v} not sorted/unique"
            assert v not in self.adjacency_sets[v], f"self-loop at {v}"
            for w in nb:
                assert v in self.adjacency_sets[w], f"asymmetric adjacency {v}-{w}"
        assert 2 * self.m == sum(self.degrees())
        assert self.m == len(self.edges)
        for e in self.edges:
            assert e.u < e.v < self.n


def load_edge_list(source: str | TextIO) -> GraphInstance:
    """Parse the ``n m`` header followed by one ``u v`` pair per line.

    Blank lines are ignored. Duplicate pairs collapse to one edge, and the
    distinct-edge count must equal the declared ``m``.
    """
    stream = io.StringIO(source) if isinstance(source, str) else source
    header = None
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise GraphFormatError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected two integers, got {line!r}") from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError(f"line {lineno}: negative header values")
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise GraphFormatError(f"line {lineno}: vertex id out of range for n={n}")
        if a == b:
            raise GraphFormatError(f"line {lineno}: self-loop at vertex {a}")
        pairs.append((a, b))
    if header is None:
        raise GraphFormatError("empty edge list: missing 'n m' header")
    n, declared = header
    graph = GraphInstance(n, pairs)
    if graph.m != declared:
        raise GraphFormatError(
            f"header declares m={declared} but found {graph.m} distinct edges"
        )
    return graph


def dump_edge_list(graph: GraphInstance) -> str:
    """Serialize in the :func:`load_edge_list` format with sorted edges."""
    lines = [f"{graph.n} {graph.m}"]
    lines.extend(f"{e.u} {e.v}" for e in graph.sorted_edges())
    return "\n".join(lines) + "\n"


def _gnm(n: int, m: int, rng: random.Random) -> list[tuple[int, int]]:
    total = n * (n - 1) // 2
    if not 0 <= m <= total:
        raise ValueError(f"gnm needs 0 <= m <= {total}, got m={m}")
    # Rejection of repeated pairs; for dense requests draw the complement
    # instead so the loop stays short. Both give a uniform m-subset of pairs.
    want = m if 2 * m <= total else total - m
    chosen: set[tuple[int, int]] = set()
    while len(chosen) < want:
        a = rng.randrange(n)
        b = rng.randrange(n)
        if a != b:
            chosen.add((a, b) if a < b else (b, a))
    if want == m:
        return sorted(chosen)
    return [(a, b) for a in range(n) for b in range(a + 1, n) if (a, b) not in chosen]


def _clique_edges(vertices: Sequence[int]) -> list[tuple[int, int]]:
    return [(a, b) for i, a in enumerate(vertices) for b in vertices[i + 1:]]


def _biclique_edges(left: Sequence[int], right: Sequence[int]) -> list[tuple[int, int]]:
    return [(a, b) for a in left for b in right]


def _need(family: str, params: Sequence[int], counts: Iterable[int]) -> None:
    if len(params) not in set(counts):
        raise ValueError(f"{family}: unexpected parameter list {list(params)}")
    if any(p < 0 for p in params):
        raise ValueError(f"{family}: parameters must be non-negative")


def generate(family: str, params: Sequence[int], seed: int = 0) -> GraphInstance:
    """Build a graph from a named family.

    Families and parameters:

    * ``gnm [n, m]``: ``m`` distinct pairs drawn uniformly.
    * ``clique [k]``: complete graph K_k.
    * ``star [d]`` or ``star [1, d]``: K_{1,d} with center 0.
    * ``path [n]``: path 0-1-...-(n-1).
    * ``biclique [a, b]``: K_{a,b}, left side 0..a-1.
    * ``clique_plus_biclique [k, a, b]`` or ``[k, a, b, n]``: K_k on 0..k-1 and
      a disjoint K_{a,b} after it, padded with isolated vertices up to ``n``.
    * ``empty [n]``: no edges.
    * ``lollipop [k, t]``: K_k with a path of ``t`` extra vertices hanging off
      vertex k-1.
    * ``matching [k]``: ``k`` disjoint edges.

    Only ``gnm`` uses the seed.
    """
    params = [int(p) for p in params]
    if family == "gnm":
        _need(family, params, [2])
        n, m = params
        return GraphInstance(n, _gnm(n, m, random.Random(seed)))
    if family == "clique":
        _need(family, params, [1])
        k = params[0]
        return GraphInstance(k, _clique_edges(range(k)))
    if family == "star":
        _need(family, params, [1, 2])
        if len(params) == 2 and params[0] != 1:
            raise ValueError("star: expected [d] or [1, d]")
        d = params[-1]
        return GraphInstance(d + 1, [(0, i) for i in range(1, d + 1)])
    if family == "path":
        _need(family, params, [1])
        n = params[0]
        return GraphInstance(n, [(i, i + 1) for i in range(n - 1)])
    if family == "biclique":
        _need(family, params, [2])
        a, b = params
        return GraphInstance(a + b, _biclique_edges(range(a), range(a, a + b)))
    if family == "clique_plus_biclique":
        _need(family, params, [3, 4])
        k, a, b = params[:3]
        used = k + a + b
        n = params[3] if len(params) == 4 else used
        if n < used:
            raise ValueError(f"clique_plus_biclique: n={n} smaller than {used} used ids")
        edges = _clique_edges(range(k)) + _biclique_edges(range(k, k + a), range(k + a, used))
        return GraphInstance(n, edges)
    if family == "empty":
        _need(family, params, [1])
        return GraphInstance(params[0])
    if family == "lollipop":
        _need(family, params, [2])
        k, t = params
        if k < 1:
            raise ValueError("lollipop: clique size must be at least 1")
        tail = [(i, i + 1) for i in range(k - 1, k + t - 1)]
        return GraphInstance(k + t, _clique_edges(range(k)) + tail)
    if family == "matching":
        _need(family, params, [1])
        k = params[0]
        return GraphInstance(2 * k, [(2 * i, 2 * i + 1) for i in range(k)])
    raise ValueError(f"unknown graph family {family!r}")


FAMILIES = (
    "gnm", "clique", "star", "path", "biclique", "clique_plus_biclique",
    "empty", "lollipop", "matching",
)


def relabel(graph: GraphInstance, perm: Sequence[int]) -> GraphInstance:
    """Rename vertex ``x`` to ``perm[x]``.

    The result has edge ``(perm[u], perm[v])`` for every input edge ``(u, v)``.
    """
    perm = [int(x) for x in perm]
    if len(perm) != graph.n or sorted(perm) != list(range(graph.n)):
        raise ValueError("perm must be a bijection on 0..n-1")
    return GraphInstance(graph.n, [(perm[e.u], perm[e.v]) for e in graph.edges])


def disjoint_union(*graphs: GraphInstance) -> GraphInstance:
    """Place the graphs side by side, shifting ids of later ones."""
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((e.u + offset, e.v + offset) for e in g.edges)
        offset += g.n
    return GraphInstance(offset, edges)
