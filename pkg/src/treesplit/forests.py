"""Spanning entering forests of small digraphs.

Exhaustive forest tables, the minimum weights ``phi^k``, minimal and
minimal-divisible forests, representatives and principals of block
forests, and the atoms generated by minimal forests.  The exhaustive parts
refuse graphs larger than a configurable vertex budget.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .graph import INF, TOL, GraphError, InForest, Partition, WeightedDigraph
from .minima import any_tree, min_in_tree_rooted
from .splitter import NotDivisibleError, SplitDigraph, is_forest_divisible

DEFAULT_MAX_VERTICES = 9
MAX_CONFIGURATIONS = 50_000_000
_CHUNK = 1 << 20


class BudgetError(GraphError):
    pass


@dataclass(frozen=True)
class ForestFamily:
    """Forests with exactly ``k`` trees and the least weight among them."""

    k: int
    forests: tuple[InForest, ...]
    min_weight: float

    def __len__(self):
        return len(self.forests)

    def __iter__(self):
        return iter(self.forests)


@dataclass(frozen=True)
class ForestTable:
    """All spanning entering forests of a digraph as arrays.

    ``succ[m, v]`` is the head of the arc leaving ``v`` in forest ``m``
    (``-1`` at roots); ``weight`` and ``k`` are per-forest.
    """

    graph: WeightedDigraph = field(repr=False)
    succ: np.ndarray
    weight: np.ndarray
    k: np.ndarray

    def rows(self, k: int) -> np.ndarray:
        return np.flatnonzero(self.k == k)

    def phi(self, k: int) -> float:
        sel = self.k == k
        return float(self.weight[sel].min()) if sel.any() else INF

    def forest(self, m: int) -> InForest:
        return InForest.from_succ(self.graph, [None if s < 0 else int(s) for s in self.succ[m]])

    def divisible_mask(self, partition: Partition) -> np.ndarray:
        block = np.asarray(partition.block_of)
        has = self.succ >= 0
        inside = has & (block[np.where(has, self.succ, 0)] == block[None, :])
        counts = np.zeros((len(self.succ), len(partition)), dtype=np.int64)
        for b, members in enumerate(partition.blocks):
            counts[:, b] = inside[:, sorted(members)].sum(axis=1)
        need = np.array([len(b) - 1 for b in partition.blocks])
        return (counts == need[None, :]).all(axis=1)


def _check_budget(psi: WeightedDigraph, max_vertices: Optional[int] = None) -> list:
    if max_vertices is None:
        max_vertices = DEFAULT_MAX_VERTICES
    if psi.n > max_vertices:
        raise BudgetError(f"exhaustive forest enumeration refused: {psi.n} vertices > budget {max_vertices}")
    options = [[-1] + [j for j, _ in psi.out_arcs(v)] for v in range(psi.n)]
    total = math.prod(len(o) for o in options)
    if total > MAX_CONFIGURATIONS:
        raise BudgetError(f"{total} arc configurations exceed the enumeration limit")
    return options


@lru_cache(maxsize=128)
def _table(psi: WeightedDigraph) -> ForestTable:
    options = [np.array(o, dtype=np.int64) for o in _check_budget(psi, psi.n)]
    n = psi.n
    radix = np.array([len(o) for o in options], dtype=np.int64)
    stride = np.ones(n, dtype=np.int64)
    for v in range(n - 2, -1, -1):
        stride[v] = stride[v + 1] * radix[v + 1]
    total = int(np.prod(radix)) if n else 1
    wmat = np.zeros((n, n + 1))
    for (i, j), w in psi.arcs.items():
        wmat[i, j] = w
    doublings = max(1, math.ceil(math.log2(max(n, 2))) + 1)
    ar = np.arange(n)
    keep_succ, keep_w, keep_k = [], [], []
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        digits = (idx[:, None] // stride[None, :]) % radix[None, :]
        succ = np.empty_like(digits)
        for v in range(n):
            succ[:, v] = options[v][digits[:, v]]
        jump = np.where(succ < 0, ar[None, :], succ)
        for _ in range(doublings):
            jump = np.take_along_axis(jump, jump, axis=1)
        acyclic = (np.take_along_axis(succ, jump, axis=1) < 0).all(axis=1)
        succ = succ[acyclic]
        w = wmat[ar[None, :], np.where(succ < 0, n, succ)].sum(axis=1)
        keep_succ.append(succ.astype(np.int16))
        keep_w.append(w)
        keep_k.append((succ < 0).sum(axis=1))
    return ForestTable(psi, np.concatenate(keep_succ), np.concatenate(keep_w), np.concatenate(keep_k))


def forest_table(psi: WeightedDigraph, max_vertices: Optional[int] = None) -> ForestTable:
    _check_budget(psi, max_vertices)
    return _table(psi)


def enumerate_spanning_in_forests(psi: WeightedDigraph, k: int,
                                  max_vertices: Optional[int] = None) -> ForestFamily:
    """Every spanning entering forest of ``psi`` with exactly ``k`` trees."""
    table = forest_table(psi, max_vertices)
    rows = table.rows(k)
    return ForestFamily(k, tuple(table.forest(m) for m in rows), table.phi(k))


def phi(psi: WeightedDigraph, k: int, max_vertices: Optional[int] = None) -> float:
    """Least weight of a spanning entering forest with ``k`` trees (``inf`` if none)."""
    return forest_table(psi, max_vertices).phi(k)


@dataclass(frozen=True)
class ConvexityReport:
    phis: tuple[float, ...]
    verdicts: dict
    note: str = ""

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())


def check_convexity(psi: WeightedDigraph, max_vertices: Optional[int] = None) -> ConvexityReport:
    """Test ``phi^(k-1) - phi^k >= phi^k - phi^(k+1)`` for ``1 < k < N``.

    ``phis[k]`` holds ``phi^k`` for ``k = 0..N``.  A graph without a spanning
    tree is reported through ``note`` with no verdicts.
    """
    table = forest_table(psi, max_vertices)
    phis = tuple(table.phi(k) for k in range(psi.n + 1))
    if psi.n and phis[1] == INF:
        return ConvexityReport(phis, {}, "no spanning entering tree")
    verdicts = {k: bool(phis[k - 1] - phis[k] >= phis[k] - phis[k + 1] - TOL) for k in range(2, psi.n)}
    return ConvexityReport(phis, verdicts)


def _family(table: ForestTable, rows, k) -> ForestFamily:
    weights = table.weight[rows]
    return ForestFamily(k, tuple(table.forest(m) for m in rows), float(weights.min()) if len(rows) else INF)


def minimal_forest_rows(table: ForestTable, k: int, mask=None) -> np.ndarray:
    sel = table.k == k
    if mask is not None:
        sel &= mask
    if not sel.any():
        return np.array([], dtype=np.int64)
    best = table.weight[sel].min()
    return np.flatnonzero(sel & (table.weight <= best + TOL))


def minimal_forests(psi: WeightedDigraph, k: int, max_vertices: Optional[int] = None) -> ForestFamily:
    """All minimal ``k``-tree spanning forests."""
    table = forest_table(psi, max_vertices)
    return _family(table, minimal_forest_rows(table, k), k)


def minimal_divisible_forests(psi: WeightedDigraph, partition: Partition, k: int,
                              max_vertices: Optional[int] = None) -> ForestFamily:
    """Lightest among the ``k``-tree forests that are tree-divisible by ``partition``.

    These need not be minimal forests overall; the family is empty (with
    ``inf`` weight) when no divisible ``k``-forest exists.
    """
    table = forest_table(psi, max_vertices)
    return _family(table, minimal_forest_rows(table, k, table.divisible_mask(partition)), k)


# -- representatives and principals ------------------------------------------

def block_successors(forest: InForest, partition: Partition) -> tuple:
    """Target block of the single arc leaving each block (``None`` for root blocks)."""
    out: list[Optional[int]] = [None] * len(partition)
    for i, j in forest.arcs:
        x, y = partition.block_of[i], partition.block_of[j]
        if x != y:
            out[x] = y
    return tuple(out)


def representative(forest: InForest, split: SplitDigraph) -> InForest:
    """The block forest with the same arcs as the forest's own split.

    Arc weights are those of the splitting digraph.
    """
    partition = split.partition
    if not is_forest_divisible(forest, partition):
        raise NotDivisibleError([partition.names[b] for b in range(len(partition))])
    succ = block_successors(forest, partition)
    for x, y in enumerate(succ):
        if y is not None and not split.graph.has_arc(x, y):
            raise GraphError("forest arc missing from the splitting digraph")
    return InForest.from_succ(split.graph, succ)


@dataclass(frozen=True)
class PrincipalPair:
    block_forest: InForest
    forest: InForest
    is_principal: bool
    is_minimal_principal: bool


def _check_block_forest(block_forest: InForest, split: SplitDigraph) -> None:
    if block_forest.labels != split.graph.labels:
        raise GraphError("block forest must live on the splitting digraph's vertices")
    for x, y in enumerate(block_forest.succ):
        if y is not None and not split.graph.has_arc(x, y):
            raise GraphError(f"block arc {split.graph.labels[x]}->{split.graph.labels[y]} not in the split")


def principal(block_forest: InForest, split: SplitDigraph, mode: str = "minimal") -> PrincipalPair:
    """A forest of the source graph whose representative is ``block_forest``.

    ``mode="minimal"`` joins the minimal tree witnesses (a minimal
    principal); ``mode="any"`` joins the lexicographically smallest trees
    regardless of weight.
    """
    if mode not in ("any", "minimal"):
        raise ValueError("mode must be 'any' or 'minimal'")
    _check_block_forest(block_forest, split)
    psi, partition = split.source, split.partition
    succ: list[Optional[int]] = [None] * psi.n
    for x, block in enumerate(partition.blocks):
        y = block_forest.succ[x]
        if mode == "minimal":
            tree = split.block_minima[x].witness if y is None else split.cross[(x, y)].witness
        else:
            tree = any_tree(psi, block) if y is None else any_tree(psi, block, target=partition.blocks[y])
        if tree is None:
            raise GraphError(f"internal inconsistency: no tree for block {partition.names[x]}")
        for i, j in tree:
            succ[i] = j
    forest = InForest.from_succ(psi, succ)
    assert block_successors(forest, partition) == block_forest.succ
    return PrincipalPair(block_forest, forest, True, is_minimal_principal(forest, block_forest, split))


def _is_principal_of(forest: InForest, block_forest: InForest, split: SplitDigraph) -> bool:
    partition = split.partition
    return (forest.labels == split.source.labels and is_forest_divisible(forest, partition)
            and block_successors(forest, partition) == block_forest.succ)


def _block_parts(forest: InForest, partition: Partition, x: int):
    """Weight leaving block ``x``, weight of the induced tree, and the crossing tail."""
    block = partition.blocks[x]
    total = inner = 0.0
    tail = None
    for (i, j), w in forest.arcs.items():
        if i in block:
            total += w
            if j in block:
                inner += w
            else:
                tail = i
    return total, inner, tail


def is_minimal_principal(forest: InForest, block_forest: InForest, split: SplitDigraph) -> bool:
    """Check the three block-wise equalities that characterize minimal principals.

    Root blocks must carry a minimal tree; every other block ``X`` with
    block arc ``(X, Y)`` must weigh ``lambda_XY`` in total and its induced
    tree must be a minimal tree rooted at the crossing tail.
    """
    _check_block_forest(block_forest, split)
    if not _is_principal_of(forest, block_forest, split):
        raise GraphError("forest is not a principal of the block forest")
    partition, psi = split.partition, split.source
    for x, y in enumerate(block_forest.succ):
        total, inner, tail = _block_parts(forest, partition, x)
        if y is None:
            if abs(total - split.block_minima[x].value) > TOL:
                return False
            continue
        if abs(total - split.cross[(x, y)].value) > TOL:
            return False
        if abs(inner - min_in_tree_rooted(psi, partition.blocks[x], tail).value) > TOL:
            return False
    return True


def weight_gap(forest: InForest, block_forest: InForest, block, split: SplitDigraph) -> float:
    """Excess of the rooted block minimum at the crossing tail over the free one.

    For a minimal principal this equals the split arc weight minus the
    weight of the original crossing arc, and is never negative.  ``block``
    is a block index or name; it must not hold a root of ``forest``.  The
    block's own minimality conditions are checked first.
    """
    partition = split.partition
    x = partition.names.index(block) if isinstance(block, str) else int(block)
    _check_block_forest(block_forest, split)
    if not _is_principal_of(forest, block_forest, split):
        raise GraphError("forest is not a principal of the block forest")
    y = block_forest.succ[x]
    if y is None:
        raise GraphError(f"block {partition.names[x]} holds a root")
    total, inner, tail = _block_parts(forest, partition, x)
    rooted = min_in_tree_rooted(split.source, partition.blocks[x], tail).value
    if abs(total - split.cross[(x, y)].value) > TOL or abs(inner - rooted) > TOL:
        raise GraphError(f"block {partition.names[x]} is not minimal in this principal")
    return rooted - split.block_minima[x].value


# -- minimality transfer ------------------------------------------------------

@dataclass
class TransferReport:
    k: int
    offset: float
    checked_block_forests: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def minimality_transfer(psi: WeightedDigraph, partition: Partition, k: int,
                        split: Optional[SplitDigraph] = None,
                        max_vertices: Optional[int] = None) -> TransferReport:
    """Relate minimal principals to lightest divisible forests for one ``k``.

    For every ``k``-tree forest ``F'`` of the splitting digraph, its minimal
    principals are found among the divisible forests of ``psi``; they must
    weigh ``w(F') + sum of block minima`` and be lightest among divisible
    forests exactly when ``F'`` is lightest among block forests.
    """
    from .splitter import split_digraph

    split = split or split_digraph(psi, partition)
    offset = sum(m.value for m in split.block_minima)
    report = TransferReport(k, offset)
    table = forest_table(psi, max_vertices)
    quotient = forest_table(split.graph, max_vertices)
    qrows = quotient.rows(k)
    if not len(qrows):
        return report
    q_best = quotient.weight[qrows].min()

    mask = table.divisible_mask(partition) & (table.k == k)
    rows = np.flatnonzero(mask)
    star_best = table.weight[rows].min() if len(rows) else INF
    groups: dict = {}
    block = np.asarray(partition.block_of)
    for m in rows:
        succ = table.succ[m]
        bs: list = [None] * len(partition)
        for v in range(psi.n):
            s = succ[v]
            if s >= 0 and block[s] != block[v]:
                bs[block[v]] = int(block[s])
        groups.setdefault(tuple(bs), []).append(m)

    for qm in qrows:
        report.checked_block_forests += 1
        bsucc = tuple(None if s < 0 else int(s) for s in quotient.succ[qm])
        members = groups.get(bsucc)
        if not members:
            report.violations.append(("no principal", bsucc))
            continue
        weights = table.weight[members]
        light = weights.min()
        if abs(quotient.weight[qm] - (light - offset)) > TOL:
            report.violations.append(("weight offset", bsucc, float(quotient.weight[qm]), float(light)))
        block_min = abs(quotient.weight[qm] - q_best) <= TOL
        star_min = abs(light - star_best) <= TOL
        if block_min != star_min:
            report.violations.append(("minimality mismatch", bsucc, block_min, star_min))
    return report


# -- atoms --------------------------------------------------------------------

@dataclass(frozen=True)
class AtomFamily:
    """Atoms of the algebra generated by tree vertex sets of minimal ``k``-forests."""

    k: int
    atoms: tuple[frozenset, ...]
    labeled: tuple[bool, ...]
    minimal_forest_count: int

    def partition(self, graph) -> Partition:
        return Partition(graph, self.atoms)


def atoms(psi: WeightedDigraph, k: int, max_vertices: Optional[int] = None) -> AtomFamily:
    """Group vertices by which tree they fall in across every minimal ``k``-forest."""
    table = forest_table(psi, max_vertices)
    rows = minimal_forest_rows(table, k)
    if not len(rows):
        raise GraphError(f"no spanning forest with {k} trees")
    forests = [table.forest(m) for m in rows]
    signature: dict = {}
    for v in range(psi.n):
        signature.setdefault(tuple(f.root_of[v] for f in forests), set()).add(v)
    classes = sorted((frozenset(s) for s in signature.values()), key=min)
    roots = set().union(*(f.roots for f in forests))
    labeled = tuple(bool(c & roots) for c in classes)
    return AtomFamily(k, tuple(classes), labeled, len(forests))
