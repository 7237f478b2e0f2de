import itertools
import math

import numpy as np
import pytest

from treesplit import InForest, Partition, WeightedDigraph, fixtures, oracle, split_digraph
from treesplit.generators import random_digraph
from treesplit.oracle import BudgetExceeded, EnumerationBudget


def complete(n):
    return WeightedDigraph([f"v{i}" for i in range(n)],
                           {(i, j): 1 for i in range(n) for j in range(n) if i != j})


def in_tree_count(g, root):
    """Matrix-tree count of entering trees rooted at ``root``."""
    lap = np.zeros((g.n, g.n))
    for (i, j), _ in g.arcs.items():
        lap[i, i] += 1
        lap[i, j] -= 1
    keep = [v for v in range(g.n) if v != root]
    return round(np.linalg.det(lap[np.ix_(keep, keep)]))


def test_single_vertex_has_one_empty_tree():
    g = complete(3)
    assert oracle.enumerate_in_trees(g, [1]) == [()]


def test_complete_triple_has_nine_rooted_trees():
    g = complete(3)
    trees = oracle.enumerate_in_trees(g, range(3))
    assert len(trees) == 9
    for q in range(3):
        assert len(oracle.enumerate_in_trees(g, range(3), root=q)) == 3


@pytest.mark.parametrize("seed", range(5))
def test_tree_counts_match_matrix_tree_theorem(seed):
    g = random_digraph(6, 0.6, seed=seed)
    for q in range(6):
        assert len(oracle.enumerate_in_trees(g, range(6), root=q)) == in_tree_count(g, q)


def test_complete_four_spanning_trees():
    g = complete(4)
    count = sum(in_tree_count(g, q) for q in range(4))
    assert count == 4 ** 3
    assert len(oracle.enumerate_spanning_forests(g, 1)) == count


def test_enumerations_are_duplicate_free():
    g = random_digraph(5, 0.7, seed=3)
    trees = oracle.enumerate_in_trees(g, range(5))
    assert len(set(trees)) == len(trees)
    forests = oracle.enumerate_spanning_forests(g)
    assert len(set(forests)) == len(forests)


def test_escape_trees_cases():
    g = WeightedDigraph("abc", {("a", "b"): 1, ("b", "a"): 1, ("c", "a"): 1})
    assert oracle.enumerate_escape_trees(g, "ab") == []
    h = WeightedDigraph("xab", {("x", "a"): 5, ("x", "b"): 3, ("a", "x"): 1})
    assert sorted(oracle.enumerate_cross_trees(h, "x", "ab")) == [((0, 1),), ((0, 2),)]


def test_forest_counts_by_component():
    g = complete(4)
    total = sum(len(oracle.enumerate_spanning_forests(g, k)) for k in range(5))
    assert total == len(oracle.enumerate_spanning_forests(g))
    assert oracle.enumerate_spanning_forests(g, 4) == [(None,) * 4]
    assert oracle.enumerate_spanning_forests(g, 0) == []
    # rooted forests on n labelled vertices: (n+1)^(n-1)
    assert total == 5 ** 3


def test_principals_of_arcless_block_forest():
    g = random_digraph(6, 0.6, seed=4, strongly_connected=True)
    p = Partition(g, [[0, 1, 2], [3, 4], [5]])
    empty = InForest(p.names)
    principals = oracle.enumerate_principals(empty, g, p)
    expected = math.prod(len(oracle.enumerate_in_trees(g, b)) for b in p.blocks)
    assert len(principals) == expected


def test_grid_forests_are_principals_of_one_block_forest():
    g = fixtures.grid_digraph()
    p = fixtures.grid_partition(g)
    split = split_digraph(g, p)
    block_forest = InForest.from_succ(split.graph, [1, None, None])
    principals = set(oracle.enumerate_principals(block_forest, g, p))
    assert fixtures.grid_forest_f(g).succ in principals
    assert fixtures.grid_forest_h(g).succ in principals
    best = min(oracle.forest_weight(g, s) for s in principals)
    assert best == 16


def test_budget_is_enforced_before_enumeration():
    g = complete(6)
    with pytest.raises(BudgetExceeded):
        oracle.enumerate_in_trees(g, range(6), budget=EnumerationBudget(max_subset=5))
    with pytest.raises(BudgetExceeded):
        oracle.enumerate_spanning_forests(g, budget=EnumerationBudget(max_candidates=1000))
    with pytest.raises(BudgetExceeded):
        oracle.enumerate_in_trees(complete(10), range(3))


def test_undirected_spanning_trees_of_k4():
    from treesplit import WeightedGraph
    k4 = WeightedGraph("abcd", {p: 1 for p in itertools.combinations("abcd", 2)})
    assert len(oracle.enumerate_spanning_trees_undirected(k4, "abcd")) == 16
    assert oracle.enumerate_spanning_trees_undirected(k4, "a") == [()]
