"""Acceptance battery: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are repeated in the
terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""
import functools
import time

import numpy as np

from treesplit import (
    check_convexity, fixtures, is_tree_divisible, lightweight_graph,
    min_cross_tree, min_in_tree, minimal_forests, representative, split_digraph, split_forest, weight_gap,
)
from treesplit import forests as fl
from treesplit import minima
from treesplit.generators import (
    random_connected_partition, random_digraph, random_divisible_instance, random_graph,
)
from treesplit.verify import (
    Report, check_atoms, check_split_laws, check_theorems, check_tree_minima, check_undirected,
)

RESULTS = {}
BATTERY_START = time.perf_counter()


def record(n, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"
    RESULTS[n] = line
    print(line)
    return ok


def criterion(n):
    """Record a FAIL line when the check itself raises."""
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            RESULTS.pop(n, None)
            try:
                fn()
            except Exception as exc:
                if n not in RESULTS:
                    record(n, False, f"raised {type(exc).__name__}: {exc}")
                raise
        return run
    return wrap


def cold_caches():
    fl._table.cache_clear()
    minima._rooted.cache_clear()


def _named(split):
    g = split.graph
    return {f"{g.labels[x]}->{g.labels[y]}": int(w) if w == int(w) else w for (x, y), w in g.arcs.items()}


@criterion(1)
def test_criterion_1_grid_split_weights():
    cold_caches()
    t0 = time.perf_counter()
    g = fixtures.grid_digraph()
    p = fixtures.grid_partition(g)
    x, y, _ = p.blocks
    lam_x = min_in_tree(g, x).value
    lam_xy = min_cross_tree(g, x, y).value
    psi_xy = _named(split_digraph(g, p))["X->Y"]
    (tree,) = minimal_forests(g, 1).forests
    tree_divisible = bool(is_tree_divisible(tree, p))
    elapsed = time.perf_counter() - t0
    ok = lam_x == 3 and lam_xy == 8 and psi_xy == 5 and not tree_divisible and elapsed < 1
    assert record(1, ok, f"block min {lam_x:g}, cross min {lam_xy:g}, split weight {psi_xy:g}, "
                         f"minimal tree divisible={tree_divisible}, {elapsed:.3f}s (< 1s)")


@criterion(2)
def test_criterion_2_representatives_and_gap():
    cold_caches()
    t0 = time.perf_counter()
    g = fixtures.grid_digraph()
    p = fixtures.grid_partition(g)
    split = split_digraph(g, p)
    f, h = fixtures.grid_forest_f(g), fixtures.grid_forest_h(g)
    fa, ha = _named(split_forest(f, p)), _named(split_forest(h, p))
    rf, rh = representative(f, split), representative(h, split)
    gap = weight_gap(f, rf, "X", split)
    elapsed = time.perf_counter() - t0
    ok = (fa == {"X->Y": 4} and ha == {"X->Y": 6} and rf == rh and rf.arcs == {(0, 1): 5}
          and gap == 1 and elapsed < 1)
    assert record(2, ok, f"own splits {fa} / {ha}, shared representative={rf == rh} weight "
                         f"{rf.total_weight:g}, gap {gap:g}, {elapsed:.3f}s (< 1s)")


@criterion(3)
def test_criterion_3_lightweight_invariance():
    g = fixtures.grid_digraph()
    p = fixtures.grid_partition(g)
    light = lightweight_graph(g, p)
    grid_ok = split_digraph(light, p).graph == split_digraph(g, p).graph and light.num_arcs < g.num_arcs
    failures = []
    rng = np.random.default_rng(3)
    for i in range(100):
        n = int(rng.integers(2, 9))
        psi, part = random_divisible_instance(n, 4, 0.4, weights=(1, 4), seed=rng)
        if split_digraph(lightweight_graph(psi, part), part).graph != split_digraph(psi, part).graph:
            failures.append(i)
    ok = grid_ok and not failures
    assert record(3, ok, f"grid {g.num_arcs} -> {light.num_arcs} arcs, split unchanged={grid_ok}; "
                         f"100 random instances N<=8, {len(failures)} mismatches")


@criterion(4)
def test_criterion_4_tree_minima_oracle():
    cold_caches()
    t0 = time.perf_counter()
    report = Report()
    rng = np.random.default_rng(4)
    for i in range(100):
        psi = random_digraph(7, float(rng.uniform(0.25, 0.6)), (1, 6), seed=rng)
        report.extend(check_tree_minima(psi, f"r{i}", cross_pairs=True))
    elapsed = time.perf_counter() - t0
    ok = report.ok and elapsed < 60
    assert record(4, ok, f"100 digraphs N=7, every subset, root and disjoint pair: "
                         f"{len(report.violations)} mismatches, {elapsed:.1f}s (< 60s)")


def theorem_corpus(count=200, seed=5):
    """Divisible instances with 2..6 vertices and at most 4 blocks; about a third use unit-ish weights."""
    rng = np.random.default_rng(seed)
    corpus = []
    while len(corpus) < count:
        n = int(rng.integers(2, 7))
        weights = (1, 2) if rng.random() < 0.33 else (1, 6)
        psi, part = random_divisible_instance(n, 4, float(rng.uniform(0.2, 0.7)), weights=weights, seed=rng)
        corpus.append((psi, part))
    return corpus


@criterion(5)
def test_criterion_5_theorem_suite():
    cold_caches()
    t0 = time.perf_counter()
    report = Report()
    corpus = theorem_corpus()
    for i, (psi, part) in enumerate(corpus):
        report.extend(check_split_laws(psi, part, f"t{i}"))
        report.extend(check_theorems(psi, part, f"t{i}"))
    elapsed = time.perf_counter() - t0
    blocks = sorted({len(p) for _, p in corpus})
    ok = report.ok and elapsed < 120
    assert record(5, ok, f"200 instances N<=6, block counts {blocks}, {len(report.results)} checks over all k: "
                         f"{len(report.violations)} violations, {elapsed:.1f}s (< 120s)")


@criterion(6)
def test_criterion_6_undirected_suite():
    report = Report()
    rng = np.random.default_rng(6)
    for i in range(100):
        n = int(rng.integers(2, 8))
        phi = random_graph(n, float(rng.uniform(0.2, 0.7)), (1, 6), seed=rng, reflexive=bool(rng.random() < 0.5))
        part = random_connected_partition(phi, 4, rng)
        report.extend(check_undirected(phi, part, f"u{i}"))
    assert record(6, report.ok, f"100 undirected graphs, {len(report.results)} checks "
                                f"(symmetry, cross agreement, view minima, zero gap): "
                                f"{len(report.violations)} violations")


@criterion(7)
def test_criterion_7_unweighted_law():
    bad = []
    arcs = 0
    rng = np.random.default_rng(7)
    for i in range(50):
        psi, part = random_divisible_instance(int(rng.integers(3, 9)), 4, 0.35, weights=None, seed=rng)
        split = split_digraph(psi, part)
        arcs += split.graph.num_arcs
        if any(w != 1 for w in split.graph.arcs.values()):
            bad.append(i)
    assert record(7, not bad, f"50 unweighted divisible digraphs, {arcs} split arcs, "
                              f"{len(bad)} instances with a weight other than 1")


@criterion(8)
def test_criterion_8_convexity():
    bad = []
    rng = np.random.default_rng(8)
    for i in range(50):
        psi = random_digraph(7, float(rng.uniform(0.2, 0.6)), (1, 9), seed=rng, strongly_connected=True)
        report = check_convexity(psi)
        if report.note or not report.ok:
            bad.append(i)
    assert record(8, not bad, f"50 strongly connected digraphs N=7, {len(bad)} violations")


@criterion(9)
def test_criterion_9_atoms():
    report = Report()
    rng = np.random.default_rng(9)
    for i in range(50):
        n = int(rng.integers(4, 8))
        psi = random_digraph(n, float(rng.uniform(0.3, 0.7)), (1, 3), seed=rng, strongly_connected=True)
        report.extend(check_atoms(psi, f"a{i}"))
    assert record(9, report.ok, f"50 instances, minimal k- and (k-1)-forests split by the k-th atoms for "
                                f"every k: {len(report.violations)} violations")


def test_battery_time():
    # runs last in file order; the whole-run total is checked in conftest
    elapsed = time.perf_counter() - BATTERY_START
    assert record("time", elapsed < 300, f"acceptance battery {elapsed:.1f}s (< 300s)")


if __name__ == "__main__":
    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    raise SystemExit(1 if failed else 0)
