"""
Undirected graphs
=================

For undirected weights the quotient edge is just the lightest edge between
two blocks, and the directed machinery applied to the two-arc view agrees.
Loop weights turn a graph into a barrier digraph, which is not symmetric.
"""
import numpy as np

from treesplit import barrier_digraph, digraph_view, split_digraph, split_undirected, to_dot
from treesplit.generators import random_connected_partition, random_graph

rng = np.random.default_rng(2)
phi = random_graph(8, 0.35, seed=rng, reflexive=True)
blocks = random_connected_partition(phi, 3, rng)

split = split_undirected(phi, blocks)
print(to_dot(split))

view = split_digraph(digraph_view(phi), blocks)
same = all(view.weight(x, y) == split.weight(x, y) for x, y in view.graph.arcs)
print("directed view gives the same weights:", same)

barrier = barrier_digraph(phi)
asym = sum(barrier.weight(i, j) != barrier.weight(j, i) for i, j in barrier.arcs) // 2
print(f"barrier digraph: {barrier.num_arcs} arcs, {asym} edges with unequal directions")
