"""Near-uniform edge sampling through graph query oracles.

Two samplers draw an almost uniformly random edge of a hidden graph:
:func:`sample_edge_hyb` may ask degree, neighbor and independent-set
queries, while :func:`sample_edge_is` asks independent-set queries only.
Both need an estimate of the edge count, supplied by an
:class:`AdviceProvider`.
"""

from .graph import Edge, GraphInstance, generate, load_edge_list, dump_edge_list, relabel
from .harness.advice import AdviceProvider
from .hybrid import sample_edge_hyb
from .is_sampler import sample_edge_is
from .oracle import OracleSession, QueryBudgetExceeded, derive_seed

__all__ = [
    "AdviceProvider",
    "Edge",
    "GraphInstance",
    "OracleSession",
    "QueryBudgetExceeded",
    "derive_seed",
    "dump_edge_list",
    "generate",
    "load_edge_list",
    "relabel",
    "sample_edge_hyb",
    "sample_edge_is",
]
