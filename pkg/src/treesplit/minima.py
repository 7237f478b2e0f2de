"""Minimum entering trees on vertex subsets.

Rooted, free, escape and cross minima of a weighted digraph restricted to a
subset, plus their undirected counterparts.  Rooted minima come from a
contraction-based minimum arborescence; ties are broken towards the
lexicographically smallest sorted arc list by carrying an exact integer
penalty alongside each weight.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .graph import INF, TOL, GraphError, WeightedDigraph, WeightedGraph, Vertex

Arc = tuple[int, int]


@dataclass(frozen=True)
class TreeMinimum:
    """A tree minimum over ``subset`` together with one minimizing tree.

    ``kind`` is ``"rooted"`` (``root`` fixed), ``"free"`` (``roots`` lists
    every minimizing root), ``"escape"`` or ``"cross"`` (``target`` is the
    block the escaping arc lands in), or ``"undirected"``/``"undirected-cross"``.
    ``witness`` is ``None`` exactly when ``value`` is infinite.
    """

    subset: frozenset
    kind: str
    value: float
    witness: Optional[tuple[Arc, ...]]
    root: Optional[int] = None
    roots: tuple[int, ...] = ()
    target: Optional[frozenset] = None

    @property
    def finite(self) -> bool:
        return self.value != INF


# -- minimum arborescence -----------------------------------------------------

def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _find_cycle(succ: dict) -> Optional[list]:
    done = set()
    for start in succ:
        if start in done:
            continue
        path, pos = [], {}
        v = start
        while v in succ and v not in done and v not in pos:
            pos[v] = len(path)
            path.append(v)
            v = succ[v]
        if v in pos:
            return path[pos[v]:]
        done.update(path)
    return None


def _arborescence(nodes: list, arcs: dict, root, next_id: int) -> Optional[set]:
    """Chu-Liu/Edmonds for entering trees.

    ``arcs`` maps ``(u, v) -> (key, orig)`` with ``key`` a pair compared
    lexicographically.  Returns the set of ``orig`` ids or ``None``.
    """
    best: dict = {}
    for (u, v), (key, orig) in arcs.items():
        if u == root:
            continue
        cur = best.get(u)
        if cur is None or key < cur[1]:
            best[u] = (v, key, orig)
    for v in nodes:
        if v != root and v not in best:
            return None
    cycle = _find_cycle({u: b[0] for u, b in best.items()})
    if cycle is None:
        return {b[2] for b in best.values()}

    cset = set(cycle)
    c = next_id
    contracted: dict = {}
    level_tail = {}
    for (u, v), (key, orig) in arcs.items():
        level_tail[orig] = (u, v)
        cu = c if u in cset else u
        cv = c if v in cset else v
        if cu == cv:
            continue
        if u in cset:
            key = _sub(key, best[u][1])
        cur = contracted.get((cu, cv))
        if cur is None or key < cur[0]:
            contracted[(cu, cv)] = (key, orig)
    sub_nodes = [v for v in nodes if v not in cset] + [c]
    chosen = _arborescence(sub_nodes, contracted, root, next_id + 1)
    if chosen is None:
        return None
    exit_member = None
    for orig in chosen:
        u, v = level_tail[orig]
        if u in cset and v not in cset:
            exit_member = u
            break
    chosen = set(chosen)
    chosen.update(best[u][2] for u in cycle if u != exit_member)
    return chosen


def _penalty(n: int, i: int, j: int) -> int:
    # Head digits in base n, earlier tails more significant: minimizing the sum
    # over a fixed tail set picks the lexicographically smallest arc list.
    return j * n ** (n - 1 - i)


@lru_cache(maxsize=1 << 16)
def _rooted(psi: WeightedDigraph, d: frozenset, q: int, zero: bool = False):
    if len(d) == 1:
        return 0.0, ()
    n = psi.n
    arcs = {}
    for i in d:
        for j, w in psi.out_arcs(i):
            if j in d:
                arcs[(i, j)] = ((0.0 if zero else w, _penalty(n, i, j)), (i, j))
    chosen = _arborescence(sorted(d), arcs, q, n)
    if chosen is None:
        return INF, None
    tree = tuple(sorted(chosen))
    return (0.0 if zero else sum(psi.weight(i, j) for i, j in tree)), tree


def _resolve_subset(g, vertices) -> frozenset:
    d = g.resolve(vertices)
    if not d:
        raise GraphError("vertex subset must be nonempty")
    return d


def min_in_tree_rooted(psi: WeightedDigraph, vertices: Iterable[Vertex], root: Vertex) -> TreeMinimum:
    """Minimum weight of an entering tree spanning ``D`` with root ``q``.

    Parameters
    ----------
    psi : WeightedDigraph
    vertices : iterable
        The subset ``D`` (labels or indices).
    root : vertex in ``D``

    Returns
    -------
    TreeMinimum
        ``value`` is ``inf`` when no such tree exists in ``psi|D``.
    """
    d = _resolve_subset(psi, vertices)
    q = psi.index(root)
    if q not in d:
        raise GraphError(f"root {psi.labels[q]!r} not in subset")
    value, tree = _rooted(psi, d, q)
    return TreeMinimum(d, "rooted", value, tree, root=q)


def _free(psi, d, zero=False):
    results = {q: _rooted(psi, d, q, zero) for q in sorted(d)}
    value = min(v for v, _ in results.values())
    if value == INF:
        return INF, None, ()
    roots = tuple(q for q, (v, _) in results.items() if v <= value + TOL)
    witness = min(results[q][1] for q in roots)
    return value, witness, roots


def min_in_tree(psi: WeightedDigraph, vertices: Iterable[Vertex]) -> TreeMinimum:
    """Minimum over all roots of :func:`min_in_tree_rooted`; ``roots`` lists the minimizers."""
    d = _resolve_subset(psi, vertices)
    value, witness, roots = _free(psi, d)
    return TreeMinimum(d, "free", value, witness, roots=roots)


def _escape(psi, d, targets, zero=False):
    best_value = INF
    candidates = []
    for q in sorted(d):
        exits = [(j, 0.0 if zero else w) for j, w in psi.out_arcs(q) if j in targets]
        if not exits:
            continue
        inner, tree = _rooted(psi, d, q, zero)
        if inner == INF:
            continue
        step = min(w for _, w in exits)
        total = inner + step
        for r, w in exits:
            if w <= step + TOL:
                candidates.append((inner + w, tuple(sorted(tree + ((q, r),)))))
        best_value = min(best_value, total)
    if best_value == INF:
        return INF, None
    witness = min(t for v, t in candidates if v <= best_value + TOL)
    return best_value, witness


def min_escape_tree(psi: WeightedDigraph, vertices: Iterable[Vertex]) -> TreeMinimum:
    """Cheapest entering tree on ``D`` plus one arc from its root out of ``D``."""
    d = _resolve_subset(psi, vertices)
    if len(d) == psi.n:
        raise GraphError("escape minimum needs a vertex outside the subset")
    outside = frozenset(range(psi.n)) - d
    value, witness = _escape(psi, d, outside)
    return TreeMinimum(d, "escape", value, witness, target=outside)


def min_cross_tree(psi: WeightedDigraph, x: Iterable[Vertex], y: Iterable[Vertex]) -> TreeMinimum:
    """Cheapest entering tree on ``X`` plus one arc from its root into ``Y``."""
    xs = _resolve_subset(psi, x)
    ys = _resolve_subset(psi, y)
    if xs & ys:
        raise GraphError("cross minimum needs disjoint blocks")
    value, witness = _escape(psi, xs, ys)
    return TreeMinimum(xs, "cross", value, witness, target=ys)


def any_tree(psi: WeightedDigraph, vertices, root=None, target=None) -> Optional[tuple[Arc, ...]]:
    """Lexicographically smallest entering tree ignoring weights.

    With ``root`` the tree is rooted there; with ``target`` it escapes into
    that vertex set; otherwise any root is allowed.
    """
    d = _resolve_subset(psi, vertices)
    if target is not None:
        return _escape(psi, d, psi.resolve(target), zero=True)[1]
    if root is not None:
        return _rooted(psi, d, psi.index(root), True)[1]
    return _free(psi, d, True)[1]


# -- forced-arc membership ----------------------------------------------------

def _forced(psi: WeightedDigraph, arc: Arc) -> WeightedDigraph:
    i, j = arc
    return psi.with_arcs({a: w for a, w in psi.arcs.items() if a[0] != i or a == arc})


def _value(psi, d, kind, root, target, tail=None):
    if kind == "rooted":
        return _rooted(psi, d, root)[0]
    if kind == "free":
        # the forced tail must not be the root, or the arc goes unused
        return min((_rooted(psi, d, q)[0] for q in d if q != tail), default=INF)
    if kind == "escape":
        return _escape(psi, d, frozenset(range(psi.n)) - d)[0]
    if kind == "cross":
        return _escape(psi, d, target)[0]
    raise ValueError(f"unknown tree kind {kind!r}")


def arc_in_some_min_tree(psi: WeightedDigraph, vertices, arc, kind: str = "free",
                         root=None, target=None) -> bool:
    """Whether ``arc`` lies in at least one minimal tree of the given kind.

    The arc is forced by deleting every other arc leaving its tail; it
    belongs to some minimal tree iff the forced minimum equals the
    unconstrained one.  ``kind`` is ``"rooted"`` (needs ``root``), ``"free"``,
    ``"escape"`` or ``"cross"`` (needs ``target``).
    """
    d = _resolve_subset(psi, vertices)
    i, j = psi.index(arc[0]), psi.index(arc[1])
    if not psi.has_arc(i, j):
        raise GraphError(f"arc {psi.labels[i]}->{psi.labels[j]} not in graph")
    if i not in d:
        raise GraphError("arc tail must lie in the subset")
    q = None if root is None else psi.index(root)
    ys = None if target is None else psi.resolve(target)
    if kind == "rooted" and (q is None or i == q):
        if q is None:
            raise GraphError("rooted kind needs a root")
        return False
    if kind in ("rooted", "free") and j not in d:
        return False
    if kind == "cross":
        if ys is None:
            raise GraphError("cross kind needs a target block")
        if j not in d and j not in ys:
            return False
    base = _value(psi, d, kind, q, ys)
    if base == INF:
        return False
    return abs(_value(_forced(psi, (i, j)), d, kind, q, ys, tail=i) - base) <= TOL


# -- undirected ---------------------------------------------------------------

def _kruskal(phi: WeightedGraph, d: frozenset):
    parent = {v: v for v in d}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    tree = []
    for w, i, j in sorted((w, i, j) for i, j, w in phi.edge_list() if i in d and j in d):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            tree.append((i, j))
    if len(tree) != len(d) - 1:
        return INF, None
    return sum(phi.weight(i, j) for i, j in tree), tuple(sorted(tree))


def min_tree_undirected(phi: WeightedGraph, vertices: Iterable[Vertex]) -> TreeMinimum:
    """Minimum spanning tree weight of ``phi|D``; infinite if disconnected."""
    d = _resolve_subset(phi, vertices)
    value, tree = _kruskal(phi, d)
    return TreeMinimum(d, "undirected", value, tree)


def min_cross_undirected(phi: WeightedGraph, x, y) -> TreeMinimum:
    """Minimum tree on ``X`` plus one edge into ``Y``: ``nu_X + min cross edge``."""
    xs = _resolve_subset(phi, x)
    ys = _resolve_subset(phi, y)
    if xs & ys:
        raise GraphError("cross minimum needs disjoint blocks")
    inner, tree = _kruskal(phi, xs)
    cross = [(w, (min(i, j), max(i, j))) for i in sorted(xs) for j, w in phi.neighbours(i) if j in ys]
    if inner == INF or not cross:
        return TreeMinimum(xs, "undirected-cross", INF, None, target=ys)
    w, edge = min(cross)
    return TreeMinimum(xs, "undirected-cross", inner + w, tuple(sorted(tree + (edge,))), target=ys)
