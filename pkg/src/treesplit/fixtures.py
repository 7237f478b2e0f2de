"""A nine-vertex worked example on a 3x3 grid.

Layout (rows top to bottom)::

    s  t  p
    x  u  r
    y  v  q

Blocks: ``X = {s, t, x, u}``, ``Y = {y, v}``, ``Z = {p, r, q}``.
"""
from __future__ import annotations

from .graph import InForest, Partition, WeightedDigraph

LABELS = ("s", "t", "p", "x", "u", "r", "y", "v", "q")

ARCS = (
    ("s", "x", 1), ("x", "s", 2),
    ("t", "s", 3), ("t", "x", 1), ("t", "u", 3), ("t", "p", 1),
    ("x", "u", 1), ("x", "y", 4),
    ("u", "t", 2), ("u", "y", 6), ("u", "v", 7),
    ("y", "x", 1), ("y", "v", 5),
    ("v", "y", 7), ("v", "u", 4),
    ("p", "r", 2), ("r", "p", 2),
    ("r", "q", 1), ("q", "r", 2),
    ("r", "v", 1),
)

BLOCKS = {"X": ("s", "t", "x", "u"), "Y": ("y", "v"), "Z": ("p", "r", "q")}


def grid_digraph() -> WeightedDigraph:
    return WeightedDigraph(LABELS, ARCS)


def grid_partition(graph=None) -> Partition:
    graph = graph or grid_digraph()
    return Partition(graph, BLOCKS.values(), names=BLOCKS.keys())


def _forest(graph, succ):
    return InForest.from_succ(graph, [None if succ.get(v) is None else graph.index(succ[v]) for v in graph.labels])


def grid_min_spanning_tree(graph=None) -> InForest:
    """The unique minimum spanning entering tree (root ``v``, weight 11)."""
    graph = graph or grid_digraph()
    return _forest(graph, {"y": "x", "s": "x", "t": "p", "x": "u", "u": "t", "r": "v", "q": "r", "p": "r"})


def grid_forest_f(graph=None) -> InForest:
    """Two-tree forest leaving ``X`` through ``x -> y`` (roots ``y``, ``r``)."""
    graph = graph or grid_digraph()
    return _forest(graph, {"v": "y", "x": "y", "s": "x", "t": "x", "u": "t", "p": "r", "q": "r"})


def grid_forest_h(graph=None) -> InForest:
    """Two-tree forest leaving ``X`` through ``u -> y`` (roots ``v``, ``q``)."""
    graph = graph or grid_digraph()
    return _forest(graph, {"y": "v", "s": "x", "x": "u", "t": "x", "u": "y", "p": "r", "r": "q"})


def grid_divisible_tree(graph=None) -> InForest:
    """Lightest spanning tree divisible by the grid partition (weight 15)."""
    graph = graph or grid_digraph()
    return _forest(graph, {"y": "v", "s": "x", "t": "p", "x": "u", "u": "t", "r": "v", "q": "r", "p": "r"})


# Arcs kept by the lightweight reduction of the grid example.
LIGHTWEIGHT_ARCS = frozenset({
    ("t", "x"), ("s", "x"), ("x", "u"), ("u", "t"), ("x", "y"), ("t", "p"),
    ("y", "v"), ("v", "y"), ("y", "x"),
    ("p", "r"), ("r", "q"), ("q", "r"), ("r", "v"),
})
