"""
Representatives and principals
==============================

A forest that restricts to a single tree on every block has a block-level
shadow: its representative.  Going the other way, a block forest has many
preimages (principals); the cheapest ones are assembled from minimal trees.
"""
from treesplit import (
    InForest, fixtures, is_minimal_principal, principal, representative, split_digraph, split_forest,
    weight_gap,
)
from treesplit import oracle

g = fixtures.grid_digraph()
blocks = fixtures.grid_partition(g)
split = split_digraph(g, blocks)

f, h = fixtures.grid_forest_f(g), fixtures.grid_forest_h(g)
for name, forest in [("F", f), ("H", h)]:
    own = split_forest(forest, blocks)
    rep = representative(forest, split)
    print(name, "weight", forest.total_weight, "own split", dict(own.graph.arcs), "representative", dict(rep.arcs))

block_forest = representative(f, split)

# every principal of the block forest, by brute force
principals = oracle.enumerate_principals(block_forest, g, blocks)
weights = sorted(oracle.forest_weight(g, s) for s in principals)
print(len(principals), "principals, weights from", weights[0], "to", weights[-1])

best = principal(block_forest, split, "minimal")
print("constructed minimal principal:", best.forest.total_weight, best.is_minimal_principal)
print("offset (sum of block minima):", sum(m.value for m in split.block_minima))

# F is not minimal overall, but block X is locally optimal, so the gap is defined
print("F minimal principal?", is_minimal_principal(f, block_forest, split))
print("gap on X for F:", weight_gap(f, block_forest, "X", split))

arbitrary = principal(block_forest, split, "any")
print("lexicographic principal weight:", arbitrary.forest.total_weight,
      "round trip ok:", representative(arbitrary.forest, split) == block_forest)
