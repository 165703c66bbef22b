"""spanorm: graph spanners measured by the lp norm of the degree vector.

Library layout:

- ``graph_core``     immutable graphs, BFS layers, girth, lp norms
- ``greedy``         greedy t-spanner and stretch verification
- ``decomposition``  vertex classes of high-girth graphs and inequality checks
- ``simplex``        small dense-tableau LP solver (float or exact rational)
- ``lb_lp``          the universal-lower-bound LP, closed forms, dual certificates
- ``extremal``       layered extremal instances, tightness families, named graphs
- ``oracle``         brute-force minimum-norm spanner oracle
- ``cli``            the ``spanorm`` command-line tool
"""

from .graph_core import (
    Graph,
    GraphError,
    INFINITY,
    LayerProfile,
    UNBOUNDED,
    girth,
    girth_at_least,
    layer_profile,
    lp_norm,
    parse_edge_list,
    format_edge_list,
    shortest_paths,
    subset_norm,
)
from .greedy import Spanner, greedy_spanner, upper_bound_exponent, verify_stretch

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GraphError",
    "INFINITY",
    "LayerProfile",
    "Spanner",
    "UNBOUNDED",
    "girth",
    "girth_at_least",
    "greedy_spanner",
    "layer_profile",
    "lp_norm",
    "parse_edge_list",
    "format_edge_list",
    "shortest_paths",
    "subset_norm",
    "upper_bound_exponent",
    "verify_stretch",
]
