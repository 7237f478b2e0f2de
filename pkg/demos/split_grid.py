"""
Splitting a small digraph by a partition
========================================

A nine-vertex digraph on a 3x3 grid is cut into three blocks.  Each block
becomes one vertex of the quotient; a quotient arc costs what it takes to
extend the cheapest entering tree of a block by one arc into another block.
"""
from treesplit import fixtures, is_tree_divisible, min_cross_tree, min_in_tree, split_digraph, to_dot
from treesplit.forests import minimal_forests

g = fixtures.grid_digraph()
blocks = fixtures.grid_partition(g)
print(g, "blocks:", blocks.names)

# cheapest entering tree on X, and the cheapest one that also steps into Y
x, y, z = blocks.blocks
tree_x = min_in_tree(g, x)
cross_xy = min_cross_tree(g, x, y)
print("tree on X:", tree_x.value, "roots", [g.labels[r] for r in tree_x.roots])
print("tree on X plus an arc into Y:", cross_xy.value,
      [f"{g.labels[i]}->{g.labels[j]}" for i, j in cross_xy.witness])

split = split_digraph(g, blocks)
for (a, b), w in sorted(split.graph.arcs.items()):
    print(f"  {split.graph.labels[a]} -> {split.graph.labels[b]}  weight {w:g}")

# The lightest spanning tree of the whole graph does not respect the blocks
(tree,) = minimal_forests(g, 1)
print("minimum spanning tree weight", tree.total_weight, "divisible:", bool(is_tree_divisible(tree, blocks)),
      is_tree_divisible(tree, blocks).failing)

print(to_dot(split))
