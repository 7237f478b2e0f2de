"""Random instances for property checks and demos."""
from __future__ import annotations

import numpy as np

from .graph import Partition, WeightedDigraph, WeightedGraph


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _labels(n):
    return [f"v{i}" for i in range(n)]


def random_digraph(n, density=0.5, weights=(1, 9), seed=None, strongly_connected=False) -> WeightedDigraph:
    """Integer-weighted digraph; ``weights=None`` gives unit weights.

    With ``strongly_connected`` a random Hamiltonian cycle is added first.
    """
    rng = _rng(seed)

    def draw():
        return 1 if weights is None else int(rng.integers(weights[0], weights[1] + 1))

    arcs = {}
    if strongly_connected and n > 1:
        order = rng.permutation(n)
        for a, b in zip(order, np.roll(order, -1)):
            arcs[(int(a), int(b))] = draw()
    for i in range(n):
        for j in range(n):
            if i != j and (i, j) not in arcs and rng.random() < density:
                arcs[(i, j)] = draw()
    return WeightedDigraph(_labels(n), arcs)


def random_partition(graph, max_blocks, seed=None) -> Partition:
    rng = _rng(seed)
    n = graph.n
    m = int(rng.integers(1, min(max_blocks, n) + 1))
    assign = np.concatenate([np.arange(m), rng.integers(0, m, size=n - m)])
    rng.shuffle(assign)
    return Partition(graph, [np.flatnonzero(assign == b).tolist() for b in range(m)])


def random_divisible_instance(n, max_blocks, density=0.3, weights=(1, 9), seed=None):
    """Digraph and partition where every block carries a random entering tree."""
    rng = _rng(seed)
    base = random_digraph(n, density, weights, rng)
    partition = random_partition(base, max_blocks, rng)
    arcs = base.arcs
    for block in partition.blocks:
        members = [int(v) for v in rng.permutation(sorted(block))]
        for pos in range(1, len(members)):
            head = members[int(rng.integers(0, pos))]
            if (members[pos], head) not in arcs:
                arcs[(members[pos], head)] = 1 if weights is None else int(rng.integers(weights[0], weights[1] + 1))
    graph = base.with_arcs(arcs)
    return graph, Partition(graph, partition.blocks)


def random_graph(n, density=0.5, weights=(1, 9), seed=None, reflexive=False, connected=True) -> WeightedGraph:
    """Undirected integer-weighted graph, connected through a random spanning path by default."""
    rng = _rng(seed)
    edges = {}
    if connected and n > 1:
        order = rng.permutation(n)
        for a, b in zip(order[:-1], order[1:]):
            edges[(min(int(a), int(b)), max(int(a), int(b)))] = int(rng.integers(weights[0], weights[1] + 1))
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in edges and rng.random() < density:
                edges[(i, j)] = int(rng.integers(weights[0], weights[1] + 1))
    loops = {i: int(rng.integers(weights[0], weights[1] + 1)) for i in range(n)} if reflexive else None
    return WeightedGraph(_labels(n), edges, loops=loops, reflexive=reflexive)


def random_connected_partition(graph: WeightedGraph, max_blocks, seed=None) -> Partition:
    """Partition of an undirected graph into connected blocks (grown from random seeds)."""
    rng = _rng(seed)
    n = graph.n
    m = int(rng.integers(1, min(max_blocks, n) + 1))
    owner = [-1] * n
    for b, v in enumerate(rng.choice(n, size=m, replace=False)):
        owner[int(v)] = b
    frontier = True
    while frontier:
        frontier = False
        for v in rng.permutation(n):
            v = int(v)
            if owner[v] != -1:
                continue
            nb = [owner[u] for u, _ in graph.neighbours(v) if owner[u] != -1]
            if nb:
                owner[v] = nb[int(rng.integers(0, len(nb)))]
                frontier = True
    for v in range(n):
        if owner[v] == -1:
            owner[v] = m
            m += 1
    return Partition(graph, [[v for v in range(n) if owner[v] == b] for b in range(m)])
