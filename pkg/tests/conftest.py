import itertools
import sys
import time
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from treesplit import Partition, WeightedDigraph, WeightedGraph

DATA = Path(__file__).parent / "data"

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def data_dir():
    return DATA


@st.composite
def digraphs(draw, min_n=1, max_n=5, max_w=5, unit=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    weights = [1 if unit else draw(st.integers(1, max_w)) for _ in chosen]
    return WeightedDigraph([f"v{i}" for i in range(n)], dict(zip(chosen, weights)))


@st.composite
def partitioned(draw, max_n=5, max_blocks=3):
    g = draw(digraphs(max_n=max_n))
    owner = draw(st.lists(st.integers(0, max_blocks - 1), min_size=g.n, max_size=g.n))
    blocks = [[v for v in range(g.n) if owner[v] == b] for b in range(max_blocks)]
    return g, Partition(g, [b for b in blocks if b])


@st.composite
def undirected(draw, min_n=1, max_n=5, reflexive=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    edges = {p: draw(st.integers(1, 6)) for p in chosen}
    loops = {f"v{i}": draw(st.integers(0, 6)) for i in range(n)} if reflexive else None
    return WeightedGraph([f"v{i}" for i in range(n)], edges, loops=loops, reflexive=reflexive)


_SESSION = {}


def pytest_sessionstart(session):
    _SESSION["start"] = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    elapsed = time.perf_counter() - _SESSION["start"]
    _SESSION["elapsed"] = elapsed
    if elapsed >= 300 and exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS.values():
            terminalreporter.write_line(line)
        elapsed = _SESSION.get("elapsed", time.perf_counter() - _SESSION["start"])
        verdict = "PASS" if elapsed < 300 else "FAIL"
        terminalreporter.write_line(f"[{verdict}] full test battery: {elapsed:.1f}s (< 300s)")
