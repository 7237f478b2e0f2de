"""Cross-checks of the solvers against brute-force enumeration on one instance.

Each check yields :class:`CheckResult` records; a :class:`Report` collects
them and serializes to JSON.
"""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

import numpy as np

from . import oracle
from .forests import (
    atoms, block_successors, check_convexity, forest_table, is_minimal_principal,
    minimal_forest_rows, minimality_transfer, representative, weight_gap,
)
from .graph import INF, TOL, InForest, Partition, WeightedDigraph, weight_out
from .minima import (
    arc_in_some_min_tree, min_cross_tree, min_escape_tree, min_in_tree, min_in_tree_rooted,
)
from .splitter import (
    is_forest_divisible, is_tree_divisible, lightweight_graph, split_digraph, split_forest,
)


@dataclass
class CheckResult:
    check: str
    instance: str
    verdict: bool
    counterexample: Optional[Any] = None


@dataclass
class Report:
    results: list = field(default_factory=list)

    def add(self, check, instance, verdict, counterexample=None):
        self.results.append(CheckResult(check, instance, bool(verdict), None if verdict else counterexample))

    def extend(self, other: "Report"):
        self.results.extend(other.results)
        return self

    @property
    def violations(self) -> list:
        return [r for r in self.results if not r.verdict]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"checks": len(self.results), "violations": len(self.violations),
                "results": [asdict(r) for r in self.results]}


def _same(a, b) -> bool:
    if a == INF or b == INF:
        return a == b
    return abs(a - b) <= TOL


def _nonempty_subsets(n):
    for r in range(1, n + 1):
        yield from (frozenset(c) for c in itertools.combinations(range(n), r))


def check_tree_minima(psi: WeightedDigraph, name: str = "", cross_pairs: bool = True) -> Report:
    """Rooted, free, escape and cross minima equal enumeration on every subset."""
    rep = Report()
    n = psi.n
    mismatches = []
    trees_on = {}
    for d in _nonempty_subsets(n):
        trees = oracle.enumerate_in_trees(psi, d)
        trees_on[d] = trees
        by_root = {}
        for t in trees:
            q = oracle.tree_root(d, t)
            w = oracle.arcs_weight(psi, t)
            by_root[q] = min(by_root.get(q, INF), w)
        for q in d:
            m = min_in_tree_rooted(psi, d, q)
            if not _same(m.value, by_root.get(q, INF)):
                mismatches.append(("rooted", sorted(d), q, m.value, by_root.get(q, INF)))
            elif m.witness is not None and not _same(weight_out(psi.with_arcs({a: psi.weight(*a) for a in m.witness}), d), m.value):
                mismatches.append(("witness", sorted(d), q))
        free = min_in_tree(psi, d)
        brute = min(by_root.values(), default=INF)
        if not _same(free.value, brute):
            mismatches.append(("free", sorted(d), free.value, brute))
        if len(d) < n:
            esc = min_escape_tree(psi, d)
            brute = oracle.minimum(psi, oracle.enumerate_escape_trees(psi, d))
            if not _same(esc.value, brute):
                mismatches.append(("escape", sorted(d), esc.value, brute))
    if cross_pairs:
        for x in trees_on:
            rest = [v for v in range(n) if v not in x]
            best_root_cost = {}
            for t in trees_on[x]:
                q = oracle.tree_root(x, t)
                best_root_cost[q] = min(best_root_cost.get(q, INF), oracle.arcs_weight(psi, t))
            for r in range(1, len(rest) + 1):
                for y in itertools.combinations(rest, r):
                    ys = frozenset(y)
                    brute = min((c + psi.weight(q, t) for q, c in best_root_cost.items()
                                 for t, _ in psi.out_arcs(q) if t in ys), default=INF)
                    got = min_cross_tree(psi, x, ys).value
                    if not _same(got, brute):
                        mismatches.append(("cross", sorted(x), sorted(ys), got, brute))
    rep.add("tree-minima-vs-oracle", name, not mismatches, mismatches[:5])
    return rep


def check_forced_arcs(psi: WeightedDigraph, name: str = "", max_subset: int = 5) -> Report:
    """Forced-arc membership equals membership in some enumerated minimal tree."""
    rep = Report()
    bad = []
    everything = frozenset(range(psi.n))
    for d in _nonempty_subsets(psi.n):
        if len(d) < 2 or len(d) > max_subset:
            continue
        trees = oracle.enumerate_in_trees(psi, d)
        families = {("free", None): oracle.minimal_members(psi, trees)}
        for q in d:
            rooted = [t for t in trees if oracle.tree_root(d, t) == q]
            families[("rooted", q)] = oracle.minimal_members(psi, rooted)
        if d != everything:
            families[("escape", None)] = oracle.minimal_members(psi, oracle.enumerate_escape_trees(psi, d))
        for (kind, q), members in families.items():
            used = {a for t in members for a in t}
            for i in d:
                for j, _ in psi.out_arcs(i):
                    if kind != "escape" and j not in d:
                        continue
                    got = arc_in_some_min_tree(psi, d, (i, j), kind, root=q)
                    if got != ((i, j) in used):
                        bad.append((kind, sorted(d), q, (i, j), got))
    rep.add("forced-arc-membership", name, not bad, bad[:5])
    return rep


def check_property_one(psi: WeightedDigraph, name: str = "") -> Report:
    """Trees of minimal forests are minimal trees on their vertex sets, rooted where they are."""
    rep = Report()
    table = forest_table(psi)
    bad = []
    for k in range(1, psi.n + 1):
        for m in minimal_forest_rows(table, k):
            f = table.forest(m)
            for q, d in f.trees().items():
                lam = min_in_tree(psi, d).value
                lam_q = min_in_tree_rooted(psi, d, q).value
                own = weight_out(f, d)
                if not (_same(lam, lam_q) and _same(lam, own)):
                    bad.append((k, sorted(d), q, lam, lam_q, own))
    rep.add("minimal-forest-trees", name, not bad, bad[:5])
    return rep


def check_split_laws(psi: WeightedDigraph, partition: Partition, name: str = "") -> Report:
    """Lightweight invariance and the forest-splitting propositions."""
    rep = Report()
    split = split_digraph(psi, partition)
    light = lightweight_graph(psi, partition)
    lsplit = split_digraph(light, partition)
    rep.add("lightweight-same-split", name, lsplit.graph == split.graph,
            {"before": split.graph.arc_list(), "after": lsplit.graph.arc_list()})
    rep.add("no-split-loops", name, all(x != y for x, y in split.graph.arcs))
    table = forest_table(psi)
    mask = table.divisible_mask(partition)
    bad = []
    for m in np.flatnonzero(mask):
        f = table.forest(m)
        k = f.k
        roots_per_block = [len(f.roots & b) for b in partition.blocks]
        fs = split_forest(f, partition)
        rep_f = representative(f, split)
        if max(roots_per_block) > 1 or k > len(partition):
            bad.append(("roots", f.succ))
        if fs.graph.num_arcs != len(partition) - k or InForest.from_digraph(fs.graph).k != k:
            bad.append(("arcs", f.succ))
        if fs.arc_set() != frozenset(rep_f.arcs):
            bad.append(("representative", f.succ))
    rep.add("divisible-forest-propositions", name, not bad, bad[:5])
    return rep


def check_theorems(psi: WeightedDigraph, partition: Partition, name: str = "") -> Report:
    """Minimal-principal characterization, weight gaps and minimality transfer for every ``k``."""
    rep = Report()
    split = split_digraph(psi, partition)
    table = forest_table(psi)
    quotient = forest_table(split.graph)
    div_mask = table.divisible_mask(partition)
    offset = sum(m.value for m in split.block_minima)
    for k in range(1, len(partition) + 1):
        qrows = quotient.rows(k)
        if not len(qrows):
            continue
        q_best = quotient.weight[qrows].min()
        sel = div_mask & (table.k == k)
        star_best = table.weight[sel].min() if sel.any() else INF
        divisible_sets = {}
        for m in np.flatnonzero(sel):
            f = table.forest(m)
            divisible_sets.setdefault(block_successors(f, partition), set()).add(f.succ)
        t1, t2, t3, yps, cover = [], [], [], [], []
        for qm in qrows:
            fp = quotient.forest(qm)
            principals = oracle.enumerate_principals(fp, psi, partition)
            if set(principals) != divisible_sets.get(fp.succ, set()):
                cover.append(fp.succ)
            weights = [oracle.forest_weight(psi, s) for s in principals]
            best = min(weights)
            fp_min = abs(quotient.weight[qm] - q_best) <= TOL
            for succ, w in zip(principals, weights):
                f = InForest.from_succ(psi, succ)
                argmin = w <= best + TOL
                if is_minimal_principal(f, fp, split) != argmin:
                    t1.append((fp.succ, succ))
                if not argmin:
                    continue
                if abs(fp.total_weight - (w - offset)) > TOL:
                    yps.append((fp.succ, succ, fp.total_weight, w))
                if (abs(w - star_best) <= TOL) != fp_min:
                    t3.append((fp.succ, succ))
                for x, y in enumerate(fp.succ):
                    if y is None:
                        continue
                    gap = weight_gap(f, fp, x, split)
                    (tail,) = [i for i in partition.blocks[x] if f.succ[i] not in partition.blocks[x]]
                    direct = split.weight(x, y) - psi.weight(tail, f.succ[tail])
                    at_min_root = tail in split.block_minima[x].roots
                    if gap < -TOL or not _same(gap, direct) or (abs(gap) <= TOL) != at_min_root:
                        t2.append((fp.succ, succ, x, gap, direct))
        rep.add(f"principals-complete[k={k}]", name, not cover, cover[:3])
        rep.add(f"minimal-principal-criterion[k={k}]", name, not t1, t1[:3])
        rep.add(f"weight-gap[k={k}]", name, not t2, t2[:3])
        rep.add(f"minimality-transfer[k={k}]", name, not t3, t3[:3])
        rep.add(f"weight-offset[k={k}]", name, not yps, yps[:3])
        transfer = minimality_transfer(psi, partition, k, split)
        rep.add(f"transfer-report[k={k}]", name, transfer.ok, transfer.violations[:3])
    return rep


def check_convexity_law(psi: WeightedDigraph, name: str = "") -> Report:
    rep = Report()
    conv = check_convexity(psi)
    rep.add("convexity", name, conv.ok and not conv.note, {"phi": [None if p == INF else p for p in conv.phis]})
    return rep


def check_atoms(psi: WeightedDigraph, name: str = "") -> Report:
    """Minimal ``k``- and ``(k-1)``-forests are divisible by the ``k``-th atoms."""
    rep = Report()
    table = forest_table(psi)
    bad = []
    for k in range(1, psi.n + 1):
        if not len(minimal_forest_rows(table, k)):
            continue
        fam = atoms(psi, k)
        part = fam.partition(psi)
        for kk in (k, k - 1):
            for m in minimal_forest_rows(table, kk):
                if not is_forest_divisible(table.forest(m), part):
                    bad.append((k, kk, [sorted(a) for a in fam.atoms], table.forest(m).succ))
    rep.add("atoms-divide-minimal-forests", name, not bad, bad[:3])
    return rep


def verify_instance(psi: WeightedDigraph, partition: Optional[Partition] = None, name: str = "") -> Report:
    """Run every check that applies to the instance."""
    rep = Report()
    rep.extend(check_tree_minima(psi, name, cross_pairs=psi.n <= 7))
    rep.extend(check_forced_arcs(psi, name))
    rep.extend(check_property_one(psi, name))
    if check_convexity(psi).note == "":
        rep.extend(check_convexity_law(psi, name))
    rep.extend(check_atoms(psi, name))
    if partition is not None:
        div = is_tree_divisible(psi, partition)
        rep.add("divisible", name, bool(div), list(div.failing))
        if div:
            rep.extend(check_split_laws(psi, partition, name))
            rep.extend(check_theorems(psi, partition, name))
    return rep


def check_undirected(phi, partition: Partition, name: str = "") -> Report:
    """Undirected splitting against its digraph view and against enumeration."""
    from .forests import principal
    from .minima import min_cross_undirected, min_tree_undirected
    from .splitter import digraph_view, split_undirected

    rep = Report()
    split = split_undirected(phi, partition)
    view = digraph_view(phi)
    vsplit = split_digraph(view, partition)
    nb = len(partition)
    und = {(x, y): split.weight(x, y) for x in range(nb) for y in range(nb)
           if x != y and split.graph.has_edge(x, y)}
    directed = vsplit.graph.arcs
    rep.add("view-split-symmetric", name,
            all(directed.get((y, x)) == w for (x, y), w in directed.items()) and directed == und,
            {"view": sorted(directed.items()), "undirected": sorted(und.items())})
    bad = []
    for x, bx in enumerate(partition.blocks):
        nu_x = min_tree_undirected(phi, bx).value
        brute = min((oracle.undirected_weight(phi, t)
                     for t in oracle.enumerate_spanning_trees_undirected(phi, bx)), default=INF)
        if not _same(nu_x, brute):
            bad.append(("nu", x, nu_x, brute))
        if not _same(min_in_tree(view, bx).value, nu_x):
            bad.append(("free-view", x))
        if any(not _same(min_in_tree_rooted(view, bx, q).value, nu_x) for q in bx):
            bad.append(("rooted-view", x))
        for y, by in enumerate(partition.blocks):
            if x == y:
                continue
            nu_xy = min_cross_undirected(phi, bx, by).value
            lam_xy = min_cross_tree(view, bx, by).value
            if not _same(nu_xy, lam_xy):
                bad.append(("cross-view", x, y, nu_xy, lam_xy))
            if (x, y) in und and not _same(nu_xy - nu_x, und[(x, y)]):
                bad.append(("cross-vs-min-edge", x, y))
            if (x, y) not in und and nu_xy != INF:
                bad.append(("missing-edge", x, y))
    rep.add("lambda-equals-nu", name, not bad, bad[:3])
    gaps = []
    quotient = forest_table(vsplit.graph)
    for qm in range(len(quotient.succ)):
        fp = quotient.forest(qm)
        pp = principal(fp, vsplit, "minimal")
        for x, y in enumerate(fp.succ):
            if y is None:
                continue
            gap = weight_gap(pp.forest, fp, x, vsplit)
            (tail,) = [i for i in partition.blocks[x] if pp.forest.succ[i] not in partition.blocks[x]]
            if abs(gap) > TOL or not _same(view.weight(tail, pp.forest.succ[tail]), und[(x, y)]):
                gaps.append((fp.succ, x, gap))
    rep.add("zero-weight-gap", name, not gaps, gaps[:3])
    return rep
