"""Command-line entry point: ``treesplit <subcommand> --graph G.json [...]``.

Exit codes: 0 success, 2 graph not tree-divisible, 1 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

import numpy as np

from . import forests as fl
from . import graph as gc
from . import splitter
from .generators import random_partition
from .verify import verify_instance


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _budget_default() -> int:
    env = os.environ.get("QF_BUDGET")
    if env is None:
        return fl.DEFAULT_MAX_VERTICES
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"QF_BUDGET must be an integer, got {env!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--graph", required=True, help="graph JSON document")
    common.add_argument("--partition", help="partition JSON document (default: singleton blocks)")
    common.add_argument("--k", type=int, help="number of trees")
    common.add_argument("--mode", choices=("any", "minimal"), default="minimal")
    common.add_argument("--tolerance", type=float, default=gc.TOL)
    common.add_argument("--budget", type=int, default=None, help="max vertices for exhaustive routines")
    common.add_argument("--format", choices=("json", "dot"), default="json")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--forest", help="forest JSON document {\"succ\": {...}}")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--provenance", action="store_true", help="include tree witnesses in split output")

    parser = _Parser(prog="treesplit", description="Tree-based splitting of weighted graphs by a partition.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, text in [
        ("split", "quotient graph of the partition"),
        ("divisible", "test tree-divisibility"),
        ("lightweight", "drop arcs outside every minimal block and cross tree"),
        ("representative", "block forest of a divisible forest (--forest)"),
        ("principal", "forest of the graph representing a block forest (--forest over block names)"),
        ("atoms", "atoms generated by minimal k-forests"),
        ("phi", "minimum k-forest weights and convexity verdicts"),
        ("verify", "run the brute-force cross-check suite"),
    ]:
        sub.add_parser(name, parents=[common], help=text)
    return parser


def _write(text: str, out) -> None:
    if not out:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".treesplit-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise gc.GraphError(f"malformed JSON in {path}: {exc}") from None


def _directed(g):
    return splitter.digraph_view(g) if isinstance(g, gc.WeightedGraph) else g


def _num(w, tol):
    return None if w == gc.INF else gc._num(w, tol)


def run(argv=None) -> int:
    saved_budget = fl.DEFAULT_MAX_VERTICES
    args = None
    try:
        args = build_parser().parse_args(argv)
        budget = args.budget if args.budget is not None else _budget_default()
        fl.DEFAULT_MAX_VERTICES = budget
        g = gc.graph_from_dict(_load_json(args.graph))
        if args.partition:
            partition = gc.partition_from_dict(g, _load_json(args.partition))
        else:
            partition = gc.Partition.singletons(g)
        text = COMMANDS[args.command](g, partition, args, budget)
        _write(text, args.out)
        return 0
    except splitter.NotDivisibleError as exc:
        print(f"treesplit: {exc}", file=sys.stderr)
        return 2
    except NotDivisible as exc:
        _write(exc.text, args.out)
        return 2
    except (UsageError, gc.GraphError, fl.BudgetError) as exc:
        print(f"treesplit: {exc}", file=sys.stderr)
        return 1
    finally:
        fl.DEFAULT_MAX_VERTICES = saved_budget


class NotDivisible(Exception):
    def __init__(self, text):
        self.text = text


def _cmd_split(g, partition, args, budget):
    if isinstance(g, gc.WeightedGraph):
        split = splitter.split_undirected(g, partition)
        if args.format == "dot":
            return splitter.to_dot(split)
        doc = gc.graph_to_dict(split.graph)
        doc["blocks"] = {n: g.label_set(b) for n, b in zip(partition.names, partition.blocks)}
        return _dump(doc)
    split = splitter.split_digraph(g, partition)
    if args.format == "dot":
        return splitter.to_dot(split)
    return _dump(splitter.split_to_dict(split, g, provenance=args.provenance))


def _cmd_divisible(g, partition, args, budget):
    div = splitter.is_tree_divisible(g, partition)
    doc = {"divisible": div.divisible,
           "failing": [{"block": name, "reason": why} for name, why in div.failing]}
    if not div:
        raise NotDivisible(_dump(doc))
    return _dump(doc)


def _cmd_lightweight(g, partition, args, budget):
    light = splitter.lightweight_graph(_directed(g), partition)
    if args.format == "dot":
        return splitter.to_dot(light)
    return _dump(gc.graph_to_dict(light))


def _require_forest(args):
    if not args.forest:
        raise UsageError("--forest is required for this subcommand")
    return _load_json(args.forest)


def _forest_doc(f: gc.InForest, tol) -> dict:
    doc = gc.forest_to_dict(f)
    doc["weight"] = _num(f.total_weight, tol)
    doc["trees"] = f.k
    return doc


def _cmd_representative(g, partition, args, budget):
    psi = _directed(g)
    forest = gc.forest_from_dict(psi, _require_forest(args))
    split = splitter.split_digraph(psi, partition)
    if not splitter.is_forest_divisible(forest, partition):
        raise UsageError("forest is not tree-divisible by the partition")
    rep = fl.representative(forest, split)
    doc = _forest_doc(rep, args.tolerance)
    doc["own_split"] = gc.graph_to_dict(splitter.split_forest(forest, partition).graph)
    return _dump(doc)


def _cmd_principal(g, partition, args, budget):
    psi = _directed(g)
    split = splitter.split_digraph(psi, partition)
    block_forest = gc.forest_from_dict(split.graph, _require_forest(args))
    pair = fl.principal(block_forest, split, args.mode)
    doc = _forest_doc(pair.forest, args.tolerance)
    doc["block_forest"] = _forest_doc(block_forest, args.tolerance)
    doc["is_minimal_principal"] = pair.is_minimal_principal
    doc["offset"] = _num(sum(m.value for m in split.block_minima), args.tolerance)
    return _dump(doc)


def _cmd_atoms(g, partition, args, budget):
    psi = _directed(g)
    fl._check_budget(psi, budget)
    ks = [args.k] if args.k is not None else range(1, psi.n + 1)
    out = []
    for k in ks:
        fam = fl.atoms(psi, k, max_vertices=budget)
        out.append({"k": k, "minimal_forests": fam.minimal_forest_count,
                    "atoms": [{"vertices": psi.label_set(a), "labeled": lab}
                              for a, lab in zip(fam.atoms, fam.labeled)]})
    return _dump({"atoms": out})


def _cmd_phi(g, partition, args, budget):
    psi = _directed(g)
    conv = fl.check_convexity(psi, max_vertices=budget)
    doc = {"phi": {str(k): _num(p, args.tolerance) for k, p in enumerate(conv.phis)},
           "convexity": {str(k): v for k, v in conv.verdicts.items()}}
    if conv.note:
        doc["note"] = conv.note
    return _dump(doc)


def _cmd_verify(g, partition, args, budget):
    psi = _directed(g)
    fl._check_budget(psi, budget)
    if not args.partition:
        rng = np.random.default_rng(args.seed)
        # prefer a proper coarsening; singletons are the fallback
        for _ in range(200):
            candidate = random_partition(psi, max(1, min(4, psi.n)), rng)
            if 1 < len(candidate) < psi.n and splitter.is_tree_divisible(psi, candidate):
                partition = candidate
                break
    report = verify_instance(psi, partition, os.path.basename(args.graph))
    if isinstance(g, gc.WeightedGraph) and splitter.is_tree_divisible(g, partition):
        from .verify import check_undirected
        report.extend(check_undirected(g, partition, os.path.basename(args.graph)))
    doc = report.to_dict()
    doc["partition"] = [psi.label_set(b) for b in partition.blocks]
    return _dump(doc)


COMMANDS = {
    "split": _cmd_split,
    "divisible": _cmd_divisible,
    "lightweight": _cmd_lightweight,
    "representative": _cmd_representative,
    "principal": _cmd_principal,
    "atoms": _cmd_atoms,
    "phi": _cmd_phi,
    "verify": _cmd_verify,
}


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
