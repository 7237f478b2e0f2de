"""Brute-force reference enumerations.

Everything here is deliberately naive: trees and forests are generated as
per-vertex choices of an outgoing arc and filtered for acyclicity.  Nothing
is shared with the solver code paths; only the graph containers are reused.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .graph import GraphError, WeightedDigraph, WeightedGraph

INF = math.inf


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class EnumerationBudget:
    max_vertices: int = 9
    max_subset: int = 9
    max_candidates: int = 5_000_000

    def check(self, n_vertices: int, subset_size: int, candidates: int) -> None:
        if n_vertices > self.max_vertices:
            raise BudgetExceeded(f"{n_vertices} vertices exceed budget {self.max_vertices}")
        if subset_size > self.max_subset:
            raise BudgetExceeded(f"subset of {subset_size} exceeds budget {self.max_subset}")
        if candidates > self.max_candidates:
            raise BudgetExceeded(f"{candidates} candidates exceed budget {self.max_candidates}")


DEFAULT_BUDGET = EnumerationBudget()


def arcs_weight(psi, arcs) -> float:
    return sum(psi.weight(i, j) for i, j in arcs)


def _reaches_root(choice: dict, root: int, size: int) -> bool:
    for start in choice:
        v, steps = start, 0
        while v != root:
            v = choice[v]
            steps += 1
            if steps > size:
                return False
    return True


@lru_cache(maxsize=4096)
def _trees_rooted(psi: WeightedDigraph, d: frozenset, q: int) -> tuple:
    others = sorted(d - {q})
    options = [[j for j, _ in psi.out_arcs(v) if j in d] for v in others]
    trees = []
    for heads in itertools.product(*options):
        choice = dict(zip(others, heads))
        if _reaches_root(choice, q, len(d)):
            trees.append(tuple(sorted(choice.items())))
    return tuple(trees)


def enumerate_in_trees(psi: WeightedDigraph, vertices, root=None,
                       budget: EnumerationBudget = DEFAULT_BUDGET) -> list[tuple]:
    """All entering trees spanning ``D`` (optionally with a fixed root).

    Each tree is a sorted tuple of arcs.
    """
    d = psi.resolve(vertices)
    if not d:
        raise GraphError("empty subset")
    roots = sorted(d) if root is None else [psi.index(root)]
    if any(q not in d for q in roots):
        raise GraphError("root outside subset")
    worst = math.prod(max(1, sum(1 for j, _ in psi.out_arcs(v) if j in d)) for v in d)
    budget.check(psi.n, len(d), worst * len(roots))
    out = []
    for q in roots:
        out.extend(_trees_rooted(psi, d, q))
    return out


def tree_root(d, arcs) -> int:
    tails = {i for i, _ in arcs}
    (q,) = [v for v in d if v not in tails]
    return q


def enumerate_cross_trees(psi: WeightedDigraph, x, y, budget: EnumerationBudget = DEFAULT_BUDGET) -> list[tuple]:
    """Entering trees on ``X`` extended by one arc from their root into ``Y``."""
    xs, ys = psi.resolve(x), psi.resolve(y)
    out = []
    for tree in enumerate_in_trees(psi, xs, budget=budget):
        q = tree_root(xs, tree)
        for r, _ in psi.out_arcs(q):
            if r in ys:
                out.append(tuple(sorted(tree + ((q, r),))))
    return out


def enumerate_escape_trees(psi: WeightedDigraph, vertices, budget: EnumerationBudget = DEFAULT_BUDGET) -> list[tuple]:
    d = psi.resolve(vertices)
    return enumerate_cross_trees(psi, d, frozenset(range(psi.n)) - d, budget)


def minimum(psi, trees) -> float:
    return min((arcs_weight(psi, t) for t in trees), default=INF)


def minimal_members(psi, trees, tol: float = 1e-9) -> list[tuple]:
    best = minimum(psi, trees)
    return [t for t in trees if arcs_weight(psi, t) <= best + tol]


def enumerate_spanning_forests(psi: WeightedDigraph, k: Optional[int] = None,
                               budget: EnumerationBudget = DEFAULT_BUDGET) -> list[tuple]:
    """All spanning entering forests (optionally with exactly ``k`` trees).

    Each forest is a tuple ``succ`` with ``None`` at roots.
    """
    n = psi.n
    options = [[None] + [j for j, _ in psi.out_arcs(v)] for v in range(n)]
    budget.check(n, n, math.prod(len(o) for o in options))
    forests = []
    for succ in itertools.product(*options):
        if k is not None and sum(s is None for s in succ) != k:
            continue
        ok = True
        for start in range(n):
            v, steps = start, 0
            while succ[v] is not None:
                v = succ[v]
                steps += 1
                if steps > n:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            forests.append(succ)
    return forests


def forest_weight(psi, succ) -> float:
    return sum(psi.weight(i, j) for i, j in enumerate(succ) if j is not None)


def enumerate_principals(block_forest, psi: WeightedDigraph, partition,
                         budget: EnumerationBudget = DEFAULT_BUDGET) -> list[tuple]:
    """Every forest assembled from one cross tree per block arc and one tree per root block.

    ``block_forest`` is a forest over the partition blocks (its vertex ``b``
    is ``partition.blocks[b]``).  Results are ``succ`` tuples over ``psi``.
    """
    choices = []
    for b, block in enumerate(partition.blocks):
        t = block_forest.succ[b]
        if t is None:
            trees = enumerate_in_trees(psi, block, budget=budget)
        else:
            trees = enumerate_cross_trees(psi, block, partition.blocks[t], budget)
        if not trees:
            return []
        choices.append(trees)
    budget.check(psi.n, psi.n, math.prod(len(c) for c in choices))
    out = []
    for combo in itertools.product(*choices):
        succ: list = [None] * psi.n
        for tree in combo:
            for i, j in tree:
                succ[i] = j
        out.append(tuple(succ))
    return out


# -- undirected ---------------------------------------------------------------

def _connected(vertices, edges) -> bool:
    vertices = list(vertices)
    seen = {vertices[0]}
    stack = [vertices[0]]
    adj = {v: [] for v in vertices}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(vertices)


def enumerate_spanning_trees_undirected(phi: WeightedGraph, vertices,
                                        budget: EnumerationBudget = DEFAULT_BUDGET) -> list[tuple]:
    """Edge subsets of size ``|D| - 1`` inside ``D`` that connect ``D``."""
    d = phi.resolve(vertices)
    inside = [(i, j) for i, j, _ in phi.edge_list() if i in d and j in d]
    budget.check(phi.n, len(d), math.comb(len(inside), max(len(d) - 1, 0)))
    if len(d) == 1:
        return [()]
    return [c for c in itertools.combinations(inside, len(d) - 1) if _connected(d, c)]


def undirected_weight(phi, edges) -> float:
    return sum(phi.weight(i, j) for i, j in edges)
