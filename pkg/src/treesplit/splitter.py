"""Splitting a graph by a vertex partition.

The splitting digraph has the partition blocks as vertices.  An arc
``(X, Y)`` exists when some entering tree on ``X`` can be extended by an
arc into ``Y``; its weight is the extra cost of that cheapest extension
over the cheapest tree on ``X`` alone.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .graph import (
    INF, GraphError, InForest, Partition, WeightedDigraph, WeightedGraph, _num, graph_to_dict,
)
from .minima import (
    TreeMinimum, arc_in_some_min_tree, min_cross_tree, min_in_tree, min_tree_undirected,
)


class NotDivisibleError(GraphError):
    def __init__(self, names):
        self.blocks = tuple(names)
        super().__init__("graph is not tree-divisible; failing blocks: " + ", ".join(self.blocks))


@dataclass(frozen=True)
class Divisibility:
    divisible: bool
    failing: tuple[tuple[str, str], ...] = ()

    def __bool__(self):
        return self.divisible


@dataclass(frozen=True)
class SplitDigraph:
    """Quotient digraph over partition blocks.

    ``graph`` is an ordinary :class:`WeightedDigraph` whose vertices are the
    block names in partition order.  ``cross`` and ``block_minima`` keep the
    tree minima (with witnesses) each weight was computed from.
    """

    partition: Partition
    graph: WeightedDigraph
    block_minima: tuple[TreeMinimum, ...]
    cross: dict = field(default_factory=dict, compare=False)
    source: Optional[WeightedDigraph] = field(default=None, compare=False, repr=False)

    def weight(self, x: int, y: int) -> float:
        return self.graph.weight(x, y)

    def arc_set(self) -> frozenset:
        return frozenset(self.graph.arcs)


@dataclass(frozen=True)
class SplitGraph:
    """Undirected quotient over partition blocks (loops when the source is reflexive)."""

    partition: Partition
    graph: WeightedGraph
    block_minima: tuple[TreeMinimum, ...]

    def weight(self, x: int, y: int) -> float:
        return self.graph.weight(x, y)


def _weakly_connected(adj_pairs, block) -> bool:
    block = set(block)
    start = next(iter(block))
    seen, stack = {start}, [start]
    nbrs = {v: set() for v in block}
    for i, j in adj_pairs:
        if i in block and j in block:
            nbrs[i].add(j)
            nbrs[j].add(i)
    while stack:
        v = stack.pop()
        for u in nbrs[v] - seen:
            seen.add(u)
            stack.append(u)
    return seen == block


def is_tree_divisible(g: Union[WeightedDigraph, WeightedGraph], partition: Partition) -> Divisibility:
    """Every block carries a spanning entering tree (undirected: is connected).

    Failing blocks are reported as ``(name, "disconnected")`` when the
    induced subgraph falls apart even ignoring directions, otherwise
    ``(name, "rootless")``.
    """
    failing = []
    if isinstance(g, WeightedGraph):
        for name, block in zip(partition.names, partition.blocks):
            if not _weakly_connected(g.edges, block):
                failing.append((name, "disconnected"))
        return Divisibility(not failing, tuple(failing))
    for name, block in zip(partition.names, partition.blocks):
        if min_in_tree(g, block).value == INF:
            kind = "rootless" if _weakly_connected(g.arcs, block) else "disconnected"
            failing.append((name, kind))
    return Divisibility(not failing, tuple(failing))


def is_forest_divisible(forest: WeightedDigraph, partition: Partition) -> bool:
    """Whether the forest restricted to every block is a single tree."""
    if not isinstance(forest, InForest):
        forest = InForest.from_digraph(forest)
    inside = [0] * len(partition)
    for i, j in forest.arcs:
        if partition.block_of[i] == partition.block_of[j]:
            inside[partition.block_of[i]] += 1
    return all(inside[b] == len(block) - 1 for b, block in enumerate(partition.blocks))


def split_digraph(psi: WeightedDigraph, partition: Partition) -> SplitDigraph:
    """Splitting digraph with weights ``lambda_XY - lambda_X``.

    Raises
    ------
    NotDivisibleError
        If some block has no spanning entering tree.
    """
    if partition.block_of and len(partition.block_of) != psi.n:
        raise GraphError("partition built for a different vertex set")
    block_minima = tuple(min_in_tree(psi, block) for block in partition.blocks)
    bad = [partition.names[b] for b, m in enumerate(block_minima) if m.value == INF]
    if bad:
        raise NotDivisibleError(bad)
    arcs, cross = {}, {}
    for x, bx in enumerate(partition.blocks):
        reach = {partition.block_of[j] for i in bx for j, _ in psi.out_arcs(i)} - {x}
        for y in sorted(reach):
            m = min_cross_tree(psi, bx, partition.blocks[y])
            if m.value == INF:
                continue
            cross[(x, y)] = m
            arcs[(x, y)] = m.value - block_minima[x].value
    return SplitDigraph(partition, WeightedDigraph(partition.names, arcs), block_minima, cross, psi)


def split_forest(forest: InForest, partition: Partition) -> SplitDigraph:
    """Split of a divisible forest by its own weights.

    Each block arc carries the weight of the single original arc crossing
    between the two blocks.
    """
    if not is_forest_divisible(forest, partition):
        raise NotDivisibleError([n for n, b in zip(partition.names, partition.blocks)
                                 if sum(1 for i, j in forest.arcs if i in b and j in b) != len(b) - 1])
    split = split_digraph(forest, partition)
    for (x, y), w in split.graph.arcs.items():
        (arc,) = [a for a in forest.arcs if partition.block_of[a[0]] == x and partition.block_of[a[1]] == y]
        assert abs(forest.weight(*arc) - w) <= 1e-9
    return split


def split_undirected(phi: WeightedGraph, partition: Partition) -> SplitGraph:
    """Undirected splitting: block edge weight is the lightest crossing edge."""
    div = is_tree_divisible(phi, partition)
    if not div:
        raise NotDivisibleError([n for n, _ in div.failing])
    block_minima = tuple(min_tree_undirected(phi, b) for b in partition.blocks)
    edges = {}
    for i, j, w in phi.edge_list():
        x, y = partition.block_of[i], partition.block_of[j]
        if x == y:
            continue
        key = (min(x, y), max(x, y))
        if key not in edges or w < edges[key]:
            edges[key] = w
    loops = None
    if phi.reflexive:
        loops = {partition.names[b]: min(phi.loops[i] for i in block) for b, block in enumerate(partition.blocks)}
    graph = WeightedGraph(partition.names, edges, loops=loops, reflexive=phi.reflexive)
    return SplitGraph(partition, graph, block_minima)


def lightweight_graph(psi: WeightedDigraph, partition: Partition) -> WeightedDigraph:
    """Keep only arcs lying in some minimal block tree or minimal cross tree."""
    split = split_digraph(psi, partition)
    kept = {}
    for (i, j), w in psi.arcs.items():
        x, y = partition.block_of[i], partition.block_of[j]
        block = partition.blocks[x]
        if x == y:
            keep = arc_in_some_min_tree(psi, block, (i, j), "free") or any(
                arc_in_some_min_tree(psi, block, (i, j), "cross", target=partition.blocks[t])
                for (s, t) in split.cross if s == x)
        else:
            keep = (x, y) in split.cross and arc_in_some_min_tree(
                psi, block, (i, j), "cross", target=partition.blocks[y])
        if keep:
            kept[(i, j)] = w
    return psi.with_arcs(kept)


def digraph_view(phi: WeightedGraph) -> WeightedDigraph:
    """Each edge becomes two opposite arcs of the same weight; loops are dropped."""
    arcs = {}
    for i, j, w in phi.edge_list():
        arcs[(i, j)] = w
        arcs[(j, i)] = w
    return WeightedDigraph(phi.labels, arcs)


def barrier_digraph(phi: WeightedGraph) -> WeightedDigraph:
    """Potential-barrier digraph of a reflexive graph: ``psi_ij = phi_ij - phi_ii``."""
    if not phi.reflexive:
        raise GraphError("barrier digraph needs a loop weight on every vertex")
    arcs = {}
    for i, j, w in phi.edge_list():
        arcs[(i, j)] = w - phi.loops[i]
        arcs[(j, i)] = w - phi.loops[j]
    return WeightedDigraph(phi.labels, arcs)


# -- export -------------------------------------------------------------------

def _tree_labels(graph, tree) -> Optional[list]:
    if tree is None:
        return None
    return [[graph.labels[i], graph.labels[j]] for i, j in tree]


def split_to_dict(split, source=None, provenance: bool = False) -> dict:
    """JSON document of a split; ``provenance`` needs the source graph."""
    doc = graph_to_dict(split.graph)
    source = source if source is not None else getattr(split, "source", None)
    if source is not None:
        doc["blocks"] = {name: [source.labels[i] for i in sorted(b)]
                         for name, b in zip(split.partition.names, split.partition.blocks)}
    if provenance:
        if source is None:
            raise ValueError("provenance export needs the source graph")
        names = split.partition.names
        prov = {"blocks": {}, "arcs": []}
        for name, m in zip(names, split.block_minima):
            entry = {"value": _num(m.value), "witness": _tree_labels(source, m.witness)}
            if m.roots:
                entry["roots"] = [source.labels[r] for r in m.roots]
            prov["blocks"][name] = entry
        for (x, y), m in sorted(getattr(split, "cross", {}).items()):
            prov["arcs"].append({
                "from": names[x], "to": names[y], "cross_tree_weight": _num(m.value),
                "block_tree_weight": _num(split.block_minima[x].value), "witness": _tree_labels(source, m.witness),
            })
        doc["provenance"] = prov
    return doc


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(split_or_graph) -> str:
    """Graphviz text; weights printed with six significant digits."""
    g = getattr(split_or_graph, "graph", split_or_graph)
    directed = isinstance(g, WeightedDigraph)
    lines = [("digraph" if directed else "graph") + " split {"]
    for v in g.labels:
        lines.append(f"  {_dot_id(v)};")
    conn = "->" if directed else "--"
    pairs = g.arc_list() if directed else g.edge_list()
    for i, j, w in pairs:
        lines.append(f"  {_dot_id(g.labels[i])} {conn} {_dot_id(g.labels[j])} [label=\"{w:.6g}\"];")
    if not directed and g.reflexive:
        for v, w in zip(g.labels, g.loops):
            lines.append(f"  {_dot_id(v)} {conn} {_dot_id(v)} [label=\"{w:.6g}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"
