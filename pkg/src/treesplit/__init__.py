"""Split weighted digraphs and graphs into quotients over a vertex partition.

Blocks become vertices; the weight of a block arc is the extra cost of
extending the cheapest entering tree on a block by one arc into another
block.  Small instances can be cross-checked against exhaustive oracles.
"""
from .forests import (
    AtomFamily, BudgetError, ConvexityReport, ForestFamily, PrincipalPair, TransferReport, atoms,
    check_convexity, enumerate_spanning_in_forests, is_minimal_principal, minimal_divisible_forests,
    minimal_forests, minimality_transfer, phi, principal, representative, weight_gap,
)
from .graph import (
    INF, TOL, ForestCheck, GraphError, InForest, Partition, WeightedDigraph, WeightedGraph,
    forest_check, forest_from_dict, forest_to_dict, graph_from_dict, graph_to_dict, induced_subgraph,
    load_graph, load_partition, outgoing_restriction, partition_from_dict, replace_outgoing,
    weight_out, weight_undirected,
)
from .minima import (
    TreeMinimum, any_tree, arc_in_some_min_tree, min_cross_tree, min_cross_undirected,
    min_escape_tree, min_in_tree, min_in_tree_rooted, min_tree_undirected,
)
from .splitter import (
    Divisibility, NotDivisibleError, SplitDigraph, SplitGraph, barrier_digraph, digraph_view,
    is_forest_divisible, is_tree_divisible, lightweight_graph, split_digraph, split_forest,
    split_to_dict, split_undirected, to_dot,
)

__version__ = "0.1.0"
