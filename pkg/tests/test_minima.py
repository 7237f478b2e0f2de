import itertools
import math

import pytest
from hypothesis import given

from treesplit import (
    GraphError, WeightedDigraph, WeightedGraph, any_tree, arc_in_some_min_tree, min_cross_tree,
    min_cross_undirected, min_escape_tree, min_in_tree, min_in_tree_rooted, min_tree_undirected,
)
from treesplit import fixtures, oracle
from treesplit.generators import random_digraph, random_graph

from conftest import digraphs, undirected

INF = math.inf


def _subsets(n):
    for r in range(1, n + 1):
        yield from (frozenset(c) for c in itertools.combinations(range(n), r))


def test_single_vertex_tree_is_free():
    g = random_digraph(4, 0.5, seed=0)
    m = min_in_tree_rooted(g, ["v2"], "v2")
    assert m.value == 0 and m.witness == ()
    free = min_in_tree(g, ["v1"])
    assert free.value == 0 and free.roots == (1,)


def test_path_has_one_tree():
    g = WeightedDigraph("abc", {("a", "b"): 2, ("b", "c"): 3})
    m = min_in_tree_rooted(g, "abc", "c")
    assert m.value == 5 and m.witness == ((0, 1), (1, 2))
    assert min_in_tree_rooted(g, "abc", "a").value == INF
    assert min_in_tree_rooted(g, "abc", "a").witness is None


def test_symmetric_pair_has_two_minimizing_roots():
    g = WeightedDigraph("ab", {("a", "b"): 1, ("b", "a"): 1})
    m = min_in_tree(g, "ab")
    assert m.value == 1 and m.roots == (0, 1)


def test_rooted_minimum_preconditions():
    g = WeightedDigraph("abc", {("a", "b"): 1})
    with pytest.raises(GraphError):
        min_in_tree_rooted(g, [], "a")
    with pytest.raises(GraphError):
        min_in_tree_rooted(g, "ab", "c")
    with pytest.raises(GraphError):
        min_in_tree(g, [])


def test_escape_from_singleton_takes_cheapest_exit():
    g = WeightedDigraph("xab", {("x", "a"): 5, ("x", "b"): 3})
    m = min_escape_tree(g, "x")
    assert m.value == 3 and m.witness == ((0, 2),)


def test_escape_without_exit_is_infinite():
    g = WeightedDigraph("abc", {("a", "b"): 1, ("b", "a"): 1, ("c", "a"): 1})
    m = min_escape_tree(g, "ab")
    assert m.value == INF and m.witness is None


def test_escape_needs_outside_vertex():
    g = WeightedDigraph("ab", {("a", "b"): 1})
    with pytest.raises(GraphError):
        min_escape_tree(g, "ab")


def test_cross_minimum_on_grid_example():
    g = fixtures.grid_digraph()
    p = fixtures.grid_partition(g)
    x, y, _ = p.blocks
    m = min_cross_tree(g, x, y)
    assert m.value == 8
    named = {(g.labels[i], g.labels[j]) for i, j in m.witness}
    assert named == {("u", "t"), ("t", "x"), ("s", "x"), ("x", "y")}
    assert min_in_tree(g, x).value == 3


def test_cross_from_singleton_is_cheapest_arc():
    g = random_digraph(6, 0.8, seed=7)
    for y in [frozenset({1, 2}), frozenset({3, 4, 5})]:
        expected = min((w for j, w in g.out_arcs(0) if j in y), default=INF)
        assert min_cross_tree(g, [0], y).value == expected


def test_cross_needs_disjoint_blocks():
    g = random_digraph(4, 0.5, seed=1)
    with pytest.raises(GraphError, match="disjoint"):
        min_cross_tree(g, [0, 1], [1, 2])


@pytest.mark.parametrize("seed", range(8))
def test_rooted_and_free_match_enumeration(seed):
    g = random_digraph(6, 0.5, (1, 4), seed=seed)
    for d in _subsets(6):
        trees = oracle.enumerate_in_trees(g, d)
        free = min_in_tree(g, d)
        assert free.value == oracle.minimum(g, trees)
        for q in d:
            rooted = [t for t in trees if oracle.tree_root(d, t) == q]
            m = min_in_tree_rooted(g, d, q)
            assert m.value == oracle.minimum(g, rooted)
            assert free.value <= m.value
            if rooted:
                # ties resolve to the lexicographically smallest arc list
                assert m.witness == min(oracle.minimal_members(g, rooted))
        if free.value != INF:
            assert {q for q in d if min_in_tree_rooted(g, d, q).value == free.value} == set(free.roots)


@pytest.mark.parametrize("seed", range(8))
def test_escape_and_cross_match_enumeration(seed):
    g = random_digraph(6, 0.4, (1, 4), seed=seed + 100)
    for d in _subsets(6):
        if len(d) == 6:
            continue
        esc = min_escape_tree(g, d)
        trees = oracle.enumerate_escape_trees(g, d)
        assert esc.value == oracle.minimum(g, trees)
        if trees:
            assert esc.witness == min(oracle.minimal_members(g, trees))
        rest = sorted(set(range(6)) - d)
        cross = []
        for r in range(1, len(rest) + 1):
            for y in itertools.combinations(rest, r):
                value = min_cross_tree(g, d, y).value
                assert value == oracle.minimum(g, oracle.enumerate_cross_trees(g, d, y))
                if len(y) == 1:
                    cross.append(value)
        # escape minimum is the lightest cross minimum over single targets
        assert esc.value == min(cross)


@given(digraphs(max_n=5))
def test_witness_weight_equals_value(g):
    for d in _subsets(g.n):
        for q in d:
            m = min_in_tree_rooted(g, d, q)
            if m.finite:
                assert sum(g.weight(i, j) for i, j in m.witness) == m.value
                assert len(m.witness) == len(d) - 1
        if len(d) < g.n:
            e = min_escape_tree(g, d)
            if e.finite:
                assert sum(g.weight(i, j) for i, j in e.witness) == e.value
                assert len(e.witness) == len(d)


def test_any_tree_ignores_weights():
    g = WeightedDigraph("abc", {("a", "b"): 9, ("a", "c"): 1, ("b", "c"): 1, ("c", "b"): 1})
    assert any_tree(g, "abc", root="c") == ((0, 1), (1, 2))
    assert any_tree(g, "abc") == ((0, 1), (1, 2))
    assert any_tree(g, "ab", target="c") == ((0, 1), (1, 2))
    assert any_tree(WeightedDigraph("ab"), "ab") is None


# -- forced-arc membership ----------------------------------------------------

def test_forced_arc_unique_tree():
    g = WeightedDigraph("abc", {("a", "b"): 1, ("b", "c"): 1, ("a", "c"): 5, ("c", "a"): 7})
    m = min_in_tree(g, "abc")
    assert m.value == 2
    for arc in g.arcs:
        assert arc_in_some_min_tree(g, "abc", arc) == (arc in m.witness)


def test_forced_arc_two_disjoint_tied_trees():
    # {a->c, b->c} and {b->a, c->a} both weigh 2 and share no arc
    g = WeightedDigraph("abc", {("a", "c"): 1, ("b", "c"): 1, ("b", "a"): 1, ("c", "a"): 1})
    members = oracle.minimal_members(g, oracle.enumerate_in_trees(g, "abc"))
    assert {((0, 2), (1, 2)), ((1, 0), (2, 0))} <= set(members)
    used = {a for t in members for a in t}
    for arc in g.arcs:
        assert arc_in_some_min_tree(g, "abc", arc) == (arc in used)
    assert all(arc_in_some_min_tree(g, "abc", a) for a in [(0, 2), (1, 2), (1, 0), (2, 0)])


def test_forced_arc_heavier_than_alternatives():
    g = WeightedDigraph("ab", {("a", "b"): 5, ("b", "a"): 1})
    assert not arc_in_some_min_tree(g, "ab", (0, 1))
    assert arc_in_some_min_tree(g, "ab", (1, 0))


def test_forced_arc_errors():
    g = WeightedDigraph("abc", {("a", "b"): 1})
    with pytest.raises(GraphError):
        arc_in_some_min_tree(g, "ab", ("b", "a"))
    with pytest.raises(GraphError):
        arc_in_some_min_tree(g, "bc", ("a", "b"))
    with pytest.raises(GraphError):
        arc_in_some_min_tree(g, "ab", ("a", "b"), "cross")


@given(digraphs(min_n=2, max_n=5, max_w=3))
def test_forced_arc_agrees_with_enumeration(g):
    n = g.n
    for d in _subsets(n):
        if len(d) < 2:
            continue
        trees = oracle.enumerate_in_trees(g, d)
        used_free = {a for t in oracle.minimal_members(g, trees) for a in t}
        target = frozenset(range(n)) - d
        cross_used = set()
        if target:
            cross_used = {a for t in oracle.minimal_members(g, oracle.enumerate_cross_trees(g, d, target))
                          for a in t}
        for i in d:
            for j, _ in g.out_arcs(i):
                if j in d:
                    assert arc_in_some_min_tree(g, d, (i, j)) == ((i, j) in used_free)
                if target:
                    assert arc_in_some_min_tree(g, d, (i, j), "cross", target=target) == ((i, j) in cross_used)


# -- undirected ---------------------------------------------------------------

def test_undirected_minima_cases():
    tri = WeightedGraph("abc", {("a", "b"): 1, ("b", "c"): 2, ("a", "c"): 3})
    assert min_tree_undirected(tri, "abc").value == 3
    split = WeightedGraph("abcd", {("a", "b"): 1, ("c", "d"): 1})
    assert min_tree_undirected(split, "abcd").value == INF
    cross = min_cross_undirected(tri, "ab", "c")
    assert cross.value == 1 + 2


@given(undirected(max_n=6))
def test_undirected_minimum_matches_enumeration(g):
    for d in _subsets(g.n):
        brute = min((oracle.undirected_weight(g, t) for t in oracle.enumerate_spanning_trees_undirected(g, d)),
                    default=INF)
        assert min_tree_undirected(g, d).value == brute


def test_undirected_cross_is_tree_plus_lightest_edge():
    g = random_graph(6, 0.6, seed=9)
    x, y = [0, 1, 2], [3, 4]
    edges = [g.weight(i, j) for i in x for j in y if g.has_edge(i, j)]
    expected = min_tree_undirected(g, x).value + min(edges) if edges else INF
    assert min_cross_undirected(g, x, y).value == expected
