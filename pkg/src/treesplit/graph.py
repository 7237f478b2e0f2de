"""Weighted digraphs, undirected graphs, partitions and entering forests.

Vertices carry string labels externally and dense integer indices
internally.  Every container here is immutable after construction.
"""
from __future__ import annotations

import json
import math
from collections.abc import Iterable, Mapping
from typing import Optional, Union

INF = math.inf
TOL = 1e-9

Vertex = Union[int, str]


class GraphError(ValueError):
    """Raised for malformed graphs, partitions or vertex references."""


def _weight(w) -> float:
    try:
        w = float(w)
    except (TypeError, ValueError):
        raise GraphError(f"weight {w!r} is not a number") from None
    if not math.isfinite(w):
        raise GraphError(f"non-finite weight {w!r}")
    return w


def _freeze_labels(labels: Iterable) -> tuple[str, ...]:
    labels = tuple(str(v) for v in labels)
    if len(set(labels)) != len(labels):
        raise GraphError("duplicate vertex labels")
    return labels


class _Labelled:
    __slots__ = ("labels", "_index")

    def _init_labels(self, labels):
        object.__setattr__(self, "labels", _freeze_labels(labels))
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.labels)})

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, v: Vertex) -> int:
        """Dense index of a vertex given by label or index."""
        if isinstance(v, str):
            try:
                return self._index[v]
            except KeyError:
                raise GraphError(f"unknown vertex {v!r}") from None
        if isinstance(v, (int,)) and not isinstance(v, bool) and 0 <= v < self.n:
            return int(v)
        raise GraphError(f"unknown vertex {v!r}")

    def resolve(self, vertices: Iterable[Vertex]) -> frozenset[int]:
        return frozenset(self.index(v) for v in vertices)

    def label_set(self, vertices: Iterable[int]) -> list[str]:
        return [self.labels[i] for i in sorted(vertices)]


class WeightedDigraph(_Labelled):
    """Directed graph without loops, at most one arc per ordered pair.

    Parameters
    ----------
    labels : iterable of str
        Vertex labels; their order fixes the dense indices.
    arcs : mapping or iterable
        ``{(i, j): w}`` or an iterable of ``(i, j, w)``; endpoints may be
        labels or indices.  Parallel arcs keep the smallest weight.
    """

    __slots__ = ("_arcs", "_out", "_hash")

    def __init__(self, labels, arcs=()):
        self._init_labels(labels)
        items = arcs.items() if isinstance(arcs, Mapping) else arcs
        collapsed: dict[tuple[int, int], float] = {}
        for item in items:
            if len(item) == 2:
                (a, b), w = item
            else:
                a, b, w = item
            i, j = self.index(a), self.index(b)
            if i == j:
                raise GraphError(f"self-loop at {self.labels[i]!r} in a digraph")
            w = _weight(w)
            if (i, j) not in collapsed or w < collapsed[(i, j)]:
                collapsed[(i, j)] = w
        out: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        for (i, j), w in sorted(collapsed.items()):
            out[i].append((j, w))
        object.__setattr__(self, "_arcs", collapsed)
        object.__setattr__(self, "_out", tuple(tuple(o) for o in out))
        object.__setattr__(self, "_hash", None)

    @property
    def arcs(self) -> Mapping[tuple[int, int], float]:
        return dict(self._arcs)

    def arc_list(self) -> list[tuple[int, int, float]]:
        return [(i, j, w) for (i, j), w in sorted(self._arcs.items())]

    def out_arcs(self, i: int) -> tuple[tuple[int, float], ...]:
        """``(head, weight)`` pairs leaving vertex ``i``, sorted by head."""
        return self._out[i]

    def has_arc(self, i: int, j: int) -> bool:
        return (i, j) in self._arcs

    def weight(self, i: int, j: int) -> float:
        try:
            return self._arcs[(i, j)]
        except KeyError:
            raise GraphError(f"no arc {self.labels[i]}->{self.labels[j]}") from None

    @property
    def num_arcs(self) -> int:
        return len(self._arcs)

    @property
    def total_weight(self) -> float:
        return weight_out(self, range(self.n))

    def is_unweighted(self) -> bool:
        return all(w == 1.0 for w in self._arcs.values())

    def with_arcs(self, arcs) -> "WeightedDigraph":
        """Same vertex set, different arcs."""
        return WeightedDigraph(self.labels, arcs)

    def _key(self):
        return (self.labels, tuple(sorted(self._arcs.items())))

    def __eq__(self, other):
        if not isinstance(other, WeightedDigraph):
            return NotImplemented
        return self.labels == other.labels and self._arcs == other._arcs

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self._key()))
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, arcs={self.num_arcs})"


class WeightedGraph(_Labelled):
    """Undirected weighted graph, optionally reflexive (a loop weight per vertex)."""

    __slots__ = ("_edges", "_adj", "loops", "_hash")

    def __init__(self, labels, edges=(), loops: Optional[Mapping] = None, reflexive: bool = False):
        self._init_labels(labels)
        items = edges.items() if isinstance(edges, Mapping) else edges
        collapsed: dict[tuple[int, int], float] = {}
        for item in items:
            if len(item) == 2:
                (a, b), w = item
            else:
                a, b, w = item
            i, j = self.index(a), self.index(b)
            if i == j:
                raise GraphError("loops must be given through `loops`")
            key = (min(i, j), max(i, j))
            w = _weight(w)
            if key not in collapsed or w < collapsed[key]:
                collapsed[key] = w
        loop_w: Optional[tuple[float, ...]] = None
        if loops:
            reflexive = True
        if reflexive:
            given = {self.index(v): _weight(w) for v, w in (loops or {}).items()}
            missing = [self.labels[i] for i in range(self.n) if i not in given]
            if missing:
                raise GraphError(f"reflexive graph lacks loop weights at {missing}")
            loop_w = tuple(given[i] for i in range(self.n))
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        for (i, j), w in sorted(collapsed.items()):
            adj[i].append((j, w))
            adj[j].append((i, w))
        object.__setattr__(self, "_edges", collapsed)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))
        object.__setattr__(self, "loops", loop_w)
        object.__setattr__(self, "_hash", None)

    @property
    def reflexive(self) -> bool:
        return self.loops is not None

    @property
    def edges(self) -> Mapping[tuple[int, int], float]:
        return dict(self._edges)

    def edge_list(self) -> list[tuple[int, int, float]]:
        return [(i, j, w) for (i, j), w in sorted(self._edges.items())]

    def neighbours(self, i: int) -> tuple[tuple[int, float], ...]:
        return self._adj[i]

    def weight(self, i: int, j: int) -> float:
        try:
            return self._edges[(min(i, j), max(i, j))]
        except KeyError:
            raise GraphError(f"no edge {self.labels[i]}-{self.labels[j]}") from None

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self._edges

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (self.labels, self._edges, self.loops) == (other.labels, other._edges, other.loops)

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.labels, tuple(sorted(self._edges.items())), self.loops)))
        return self._hash

    def __repr__(self):
        return f"WeightedGraph(n={self.n}, edges={self.num_edges}, reflexive={self.reflexive})"


class Partition:
    """Disjoint nonempty blocks covering ``range(n)``.

    ``names`` default to ``"{a,b,...}"`` built from the vertex labels.
    """

    __slots__ = ("blocks", "block_of", "names")

    def __init__(self, graph: _Labelled, blocks: Iterable[Iterable[Vertex]], names=None):
        frozen = []
        block_of = [-1] * graph.n
        for b, block in enumerate(blocks):
            members = graph.resolve(block)
            if not members:
                raise GraphError("empty block in partition")
            for v in members:
                if block_of[v] != -1:
                    raise GraphError(f"vertex {graph.labels[v]!r} appears in two blocks")
                block_of[v] = b
            frozen.append(members)
        uncovered = [graph.labels[v] for v in range(graph.n) if block_of[v] == -1]
        if uncovered:
            raise GraphError(f"partition does not cover vertices {uncovered}")
        if names is None:
            names = ["{" + ",".join(graph.label_set(b)) + "}" for b in frozen]
        names = tuple(str(s) for s in names)
        if len(names) != len(frozen) or len(set(names)) != len(names):
            raise GraphError("block names must be unique, one per block")
        object.__setattr__(self, "blocks", tuple(frozen))
        object.__setattr__(self, "block_of", tuple(block_of))
        object.__setattr__(self, "names", names)

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    @classmethod
    def singletons(cls, graph: _Labelled) -> "Partition":
        return cls(graph, [[i] for i in range(graph.n)], names=graph.labels)

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"Partition({list(self.names)})"


class InForest(WeightedDigraph):
    """Spanning entering forest: out-degree at most one and no directed cycle."""

    __slots__ = ("succ", "root_of")

    def __init__(self, labels, arcs=()):
        super().__init__(labels, arcs)
        succ: list[Optional[int]] = [None] * self.n
        for i, j in self._arcs:
            if succ[i] is not None:
                raise GraphError(f"vertex {self.labels[i]!r} has two outgoing arcs")
            succ[i] = j
        root_of = _roots_of(succ)
        if root_of is None:
            raise GraphError("arcs contain a directed cycle")
        object.__setattr__(self, "succ", tuple(succ))
        object.__setattr__(self, "root_of", tuple(root_of))

    @classmethod
    def from_succ(cls, graph: WeightedDigraph, succ) -> "InForest":
        """Forest made of the arcs ``(i, succ[i])`` of ``graph``."""
        return cls(graph.labels, {(i, j): graph.weight(i, j) for i, j in enumerate(succ) if j is not None and j >= 0})

    @classmethod
    def from_digraph(cls, g: WeightedDigraph) -> "InForest":
        return cls(g.labels, g.arcs)

    @property
    def roots(self) -> frozenset[int]:
        return frozenset(i for i, s in enumerate(self.succ) if s is None)

    @property
    def k(self) -> int:
        return sum(s is None for s in self.succ)

    def trees(self) -> dict[int, frozenset[int]]:
        """Root -> vertex set of its tree."""
        out: dict[int, set[int]] = {}
        for v, r in enumerate(self.root_of):
            out.setdefault(r, set()).add(v)
        return {r: frozenset(s) for r, s in out.items()}

    def succ_labels(self) -> dict[str, Optional[str]]:
        return {self.labels[i]: (None if s is None else self.labels[s]) for i, s in enumerate(self.succ)}


def _roots_of(succ) -> Optional[list[int]]:
    """Root reached from every vertex, or ``None`` if a cycle exists."""
    n = len(succ)
    root_of = [-1] * n
    for start in range(n):
        path = []
        on_path = set()
        v = start
        while root_of[v] == -1 and succ[v] is not None:
            if v in on_path:
                return None
            on_path.add(v)
            path.append(v)
            v = succ[v]
        r = v if root_of[v] == -1 else root_of[v]
        root_of[v] = r
        for u in path:
            root_of[u] = r
    return root_of


# -- restriction, replacement, weights ---------------------------------------

def induced_subgraph(g, vertices: Iterable[Vertex]):
    """Restriction of ``g`` to a vertex subset; labels keep their relative order."""
    d = g.resolve(vertices)
    keep = sorted(d)
    labels = [g.labels[i] for i in keep]
    if isinstance(g, WeightedGraph):
        edges = [(g.labels[i], g.labels[j], w) for i, j, w in g.edge_list() if i in d and j in d]
        loops = {g.labels[i]: g.loops[i] for i in keep} if g.reflexive else None
        return WeightedGraph(labels, edges, loops=loops, reflexive=g.reflexive)
    arcs = [(g.labels[i], g.labels[j], w) for i, j, w in g.arc_list() if i in d and j in d]
    return WeightedDigraph(labels, arcs)


def outgoing_restriction(g: WeightedDigraph, vertices: Iterable[Vertex]) -> WeightedDigraph:
    """All arcs leaving ``S``; vertex set ``S`` plus the heads of those arcs."""
    s = g.resolve(vertices)
    arcs = [(i, j, w) for i, j, w in g.arc_list() if i in s]
    keep = sorted(s | {j for _, j, _ in arcs})
    return WeightedDigraph([g.labels[i] for i in keep], [(g.labels[i], g.labels[j], w) for i, j, w in arcs])


def _in_neighbourhood(g: WeightedDigraph, d: frozenset[int]) -> set[int]:
    return {i for (i, j) in g._arcs if j in d and i not in d}


def _out_neighbourhood(g: WeightedDigraph, d: frozenset[int]) -> set[int]:
    return {j for (i, j) in g._arcs if i in d and j not in d}


def replace_outgoing(f: WeightedDigraph, g: WeightedDigraph, vertices: Iterable[Vertex]) -> WeightedDigraph:
    """Replace the arcs of ``f`` leaving ``D`` by the arcs of ``g`` leaving ``D``.

    When ``f`` and ``g`` are forests and either no arc of ``f`` enters ``D``
    or no arc of ``g`` leaves ``D``, the result is asserted to be a forest.
    """
    if f.labels != g.labels:
        raise GraphError("replace_outgoing needs graphs on the same vertex labels")
    d = f.resolve(vertices)
    tails = [i for (i, _) in g._arcs if i in d]
    if len(tails) != len(set(tails)):
        raise GraphError("replacement graph has two outgoing arcs from a vertex of D")
    arcs = {a: w for a, w in f._arcs.items() if a[0] not in d}
    arcs.update({a: w for a, w in g._arcs.items() if a[0] in d})
    out = WeightedDigraph(f.labels, arcs)
    if forest_check(f).is_forest and forest_check(g).is_forest:
        if not _in_neighbourhood(f, d) or not _out_neighbourhood(g, d):
            assert forest_check(out).is_forest, "arc replacement broke the forest property"
    return out


def weight_out(g: WeightedDigraph, vertices: Iterable[Vertex]) -> float:
    """Sum of weights of arcs whose tail lies in ``D`` (heads unrestricted)."""
    d = g.resolve(vertices)
    return sum((w for (i, _), w in g._arcs.items() if i in d), 0.0)


def weight_undirected(g: WeightedGraph, vertices: Iterable[Vertex]) -> float:
    """Sum of weights of edges with both ends in ``S``."""
    s = g.resolve(vertices)
    return sum((w for (i, j), w in g._edges.items() if i in s and j in s), 0.0)


class ForestCheck:
    __slots__ = ("is_forest", "roots", "component")

    def __init__(self, is_forest, roots, component):
        self.is_forest = is_forest
        self.roots = roots
        self.component = component

    def __repr__(self):
        return f"ForestCheck(is_forest={self.is_forest}, roots={sorted(self.roots)})"


def forest_check(g: WeightedDigraph) -> ForestCheck:
    """Out-degree at most one everywhere and acyclic.

    ``component`` maps each vertex to the root of its tree (``None`` when
    ``g`` is not a forest).
    """
    succ: list[Optional[int]] = [None] * g.n
    for i, j in g._arcs:
        if succ[i] is not None:
            return ForestCheck(False, frozenset(), None)
        succ[i] = j
    roots = frozenset(i for i, s in enumerate(succ) if s is None)
    root_of = _roots_of(succ)
    if root_of is None:
        return ForestCheck(False, roots, None)
    return ForestCheck(True, roots, tuple(root_of))


# -- JSON documents -----------------------------------------------------------

def graph_from_dict(doc: Mapping):
    """Build a graph from the JSON graph document layout."""
    try:
        directed = bool(doc.get("directed", True))
        reflexive = bool(doc.get("reflexive", False))
        labels = doc["vertices"]
        if directed:
            if doc.get("loops"):
                raise GraphError("directed documents cannot carry loops")
            arcs = [(a["from"], a["to"], a["w"]) for a in doc.get("arcs", [])]
            return WeightedDigraph(labels, arcs)
        edges = [(a["from"], a["to"], a["w"]) for a in doc.get("edges", [])]
        loops = doc.get("loops")
        if loops and not reflexive:
            raise GraphError("loops given but graph not flagged reflexive")
        return WeightedGraph(labels, edges, loops=loops, reflexive=reflexive)
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph document: missing or bad field {exc}") from None


def _num(w: float, tol: float = TOL):
    r = round(w)
    return int(r) if abs(w - r) <= tol else w


def graph_to_dict(g) -> dict:
    if isinstance(g, WeightedGraph):
        doc = {
            "directed": False,
            "reflexive": g.reflexive,
            "vertices": list(g.labels),
            "edges": [{"from": g.labels[i], "to": g.labels[j], "w": _num(w)} for i, j, w in g.edge_list()],
        }
        if g.reflexive:
            doc["loops"] = {v: _num(w) for v, w in zip(g.labels, g.loops)}
        return doc
    return {
        "directed": True,
        "reflexive": False,
        "vertices": list(g.labels),
        "arcs": [{"from": g.labels[i], "to": g.labels[j], "w": _num(w)} for i, j, w in g.arc_list()],
    }


def load_graph(path):
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphError(f"malformed JSON in {path}: {exc}") from None
    return graph_from_dict(doc)


def partition_from_dict(graph, doc: Mapping) -> Partition:
    try:
        return Partition(graph, doc["blocks"], names=doc.get("names"))
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed partition document: {exc}") from None


def load_partition(graph, path) -> Partition:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphError(f"malformed JSON in {path}: {exc}") from None
    return partition_from_dict(graph, doc)


def forest_from_dict(graph: WeightedDigraph, doc: Mapping) -> InForest:
    """``{"succ": {vertex: target | null}}``; weights come from ``graph``."""
    try:
        succ_doc = doc["succ"]
    except (KeyError, TypeError):
        raise GraphError("forest document needs a 'succ' mapping") from None
    succ: list[Optional[int]] = [None] * graph.n
    for v, t in succ_doc.items():
        succ[graph.index(v)] = None if t is None else graph.index(t)
    return InForest.from_succ(graph, succ)


def forest_to_dict(f: InForest) -> dict:
    return {"succ": f.succ_labels()}
