"""Named test graphs and the ``FAMILY:PARAMS`` graph-spec syntax."""

from __future__ import annotations

from ..graph import GraphInstance, disjoint_union, generate, load_edge_list

__all__ = ["UNIFORMITY_SUITE", "SMALL_CORPUS", "named_graph", "parse_graph_spec", "load_graph"]


def _two_edge() -> GraphInstance:
    return GraphInstance(4, [(0, 1), (2, 3)])


def _mix() -> GraphInstance:
    # A clique, a star and a matching, so every degree category shows up.
    return disjoint_union(generate("clique", [8]), generate("star", [12]), generate("matching", [5]))


def _small_mix() -> GraphInstance:
    return disjoint_union(generate("clique", [4]), generate("star", [4]), generate("matching", [2]))


_NAMED = {
    "two_edge": _two_edge,
    "mix": _mix,
    "lollipop": lambda: generate("lollipop", [8, 10]),
    "gnm_64_200": lambda: generate("gnm", [64, 200], seed=1),
    "gnm_128_512": lambda: generate("gnm", [128, 512], seed=2),
    # Graphs small enough for subset enumeration.
    "single_edge": lambda: generate("path", [2]),
    "path3": lambda: generate("path", [3]),
    "triangle": lambda: generate("clique", [3]),
    "star4": lambda: generate("star", [4]),
    "k4": lambda: generate("clique", [4]),
    "small_lollipop": lambda: generate("lollipop", [4, 3]),
    "small_mix": _small_mix,
    "gnm_10_12": lambda: generate("gnm", [10, 12], seed=3),
    "gnm_14_20": lambda: generate("gnm", [14, 20], seed=4),
}

#: Graph families of the uniformity acceptance suite.
UNIFORMITY_SUITE = ("gnm_64_200", "gnm_128_512", "mix", "lollipop", "two_edge")
#: Graphs with at most 14 vertices, used for exact-probability checks.
SMALL_CORPUS = ("single_edge", "path3", "triangle", "star4", "k4", "small_lollipop",
                "small_mix", "gnm_10_12", "gnm_14_20")


def named_graph(name: str) -> GraphInstance:
    try:
        return _NAMED[name]()
    except KeyError:
        raise ValueError(f"unknown named graph {name!r}; known: {', '.join(sorted(_NAMED))}") from None


def parse_graph_spec(spec: str, seed: int = 0) -> GraphInstance:
    """Build a graph from ``FAMILY:P1,P2,...`` or a corpus name."""
    if ":" not in spec:
        return named_graph(spec)
    family, _, raw = spec.partition(":")
    try:
        params = [int(x) for x in raw.split(",") if x.strip()]
    except ValueError:
        raise ValueError(f"bad graph parameters in {spec!r}") from None
    return generate(family, params, seed=seed)


def load_graph(path: str) -> GraphInstance:
    with open(path, encoding="utf-8") as fh:
        return load_edge_list(fh)
