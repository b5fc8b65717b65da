"""Command-line interface.

Exit codes: 0 success, 1 verdict-level incompatibility (the input pair
of tree and partition admits no transfer scenario of the requested
kind), 2 malformed input or usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import oracle, refine, stats
from .classify import PairClassifier, RPairClassifier
from .fitch import fitch_graph, graph_to_dot, graph_to_json
from .partition import (Partition, PartitionError, edge_coloring,
                        vertex_coloring)
from .separating import classify_tree_edges, parse_edge_set
from .simulate import RateConfig
from .tree import RootedTree, TreeError, parse_newick

DEFAULT_RATE_GRID = ["0.5,0.5,0.5", "1,1,0.5", "1,1,1", "1,1,1.5"]


class VerdictError(Exception):
    """Incompatibility verdict (exit code 1)."""


def _load_tree(path: str) -> RootedTree:
    with open(path) as f:
        return parse_newick(f.read())


def _load_partition(path: str) -> Partition:
    with open(path) as f:
        return Partition.parse(f)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("XENO_SEED")
    return int(env) if env else 0


def cmd_classify_edges(args) -> int:
    tree = _load_tree(args.tree)
    partition = _load_partition(args.partition)
    classes = classify_tree_edges(tree, partition)
    if classes is None:
        r = edge_coloring(tree, partition).r_compatible
        raise VerdictError("not compatible; "
                           + ("r-compatible (try --refinements on "
                              "classify-pairs or `refine`)" if r
                              else "not r-compatible"))
    for v in tree.preorder():
        if v != tree.root:
            print(f"{tree.edge_name(v)},{classes[v].value}")
    return 0


def cmd_classify_pairs(args) -> int:
    tree = _load_tree(args.tree)
    partition = _load_partition(args.partition)
    prefix = "r-" if args.refinements else ""
    if args.oracle:
        budget = oracle.OracleBudget(max_leaves=args.max_leaves)
        fn = (oracle.oracle_rpair_classes if args.refinements
              else oracle.oracle_pair_classes)
        try:
            verdicts = fn(tree, partition, budget)
        except ValueError as e:
            raise VerdictError(str(e)) from None
    else:
        try:
            cls = (RPairClassifier if args.refinements
                   else PairClassifier)(tree, partition)
        except ValueError as e:
            raise VerdictError(str(e)) from None
        verdicts = cls.all_pairs()
    for (a, b) in sorted(verdicts):
        print(f"{a},{b},{prefix}{verdicts[(a, b)].value}")
    return 0


def cmd_refine(args) -> int:
    tree = _load_tree(args.tree)
    partition = _load_partition(args.partition)
    if not edge_coloring(tree, partition).r_compatible:
        raise VerdictError("not r-compatible")
    star = refine.star_refinement(tree, partition)
    urs = refine.urs_tree(tree, partition)
    print(star.newick())
    print(urs.newick())
    return 0


def cmd_fitch(args) -> int:
    tree = _load_tree(args.tree)
    with open(args.h) as f:
        h = parse_edge_set(tree, f)
    graph = fitch_graph(tree, h)
    print(graph_to_dot(graph) if args.dot else graph_to_json(graph))
    return 0


def cmd_simulate(args) -> int:
    from .simulate import run_experiment
    configs = []
    for spec in args.rates or DEFAULT_RATE_GRID:
        try:
            d, l, h = (float(x) for x in spec.split(","))
        except ValueError:
            raise TreeError(f"bad rates {spec!r}, expected d,l,h") from None
        configs.append(RateConfig(d, l, h))
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for _ in run_experiment(configs, args.count, _seed(args), out):
            pass
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_stats(args) -> int:
    from .simulate import scenario_from_json
    data = []
    with open(args.corpus) as f:
        for line in f:
            if not line.strip():
                continue
            tree, h, partition, rates = scenario_from_json(line)
            key = ",".join(f"{r:g}" for r in rates)
            data.append(stats.ScenarioData(key, tree, h, partition))
    if not data:
        raise TreeError(f"empty corpus {args.corpus!r}")
    if args.table == "edges":
        table = stats.edge_fraction_table(data)
    elif args.table == "pairs":
        table = stats.pair_fraction_table(data, level="leaf")
    elif args.table == "qpairs":
        table = stats.pair_fraction_table(data, level="quotient")
    else:
        table = stats.contraction_table(data, args.contraction_p,
                                        _seed(args))
    csv_text = table.to_csv()
    if args.csv:
        with open(args.csv, "w") as f:
            f.write(csv_text)
    else:
        sys.stdout.write(csv_text)
    if args.scenario_csv:
        with open(args.scenario_csv, "w") as f:
            f.write(table.to_scenario_csv())
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="xenoclass",
        description="Classify horizontal-transfer placements on gene "
                    "trees from transfer-free leaf partitions.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify-edges",
                       help="essential/forbidden/ambiguous per tree edge")
    p.add_argument("tree")
    p.add_argument("partition")
    p.set_defaults(fn=cmd_classify_edges)

    p = sub.add_parser("classify-pairs",
                       help="classify ordered class pairs")
    p.add_argument("tree")
    p.add_argument("partition")
    p.add_argument("--refinements", action="store_true",
                   help="quantify over all compatible refinements")
    p.add_argument("--oracle", action="store_true",
                   help="use the brute-force reference implementation")
    p.add_argument("--max-leaves", type=int, default=8,
                   help="oracle budget (leaves)")
    p.set_defaults(fn=cmd_classify_pairs)

    p = sub.add_parser("refine", help="emit the star refinement and a "
                                      "fully resolved compatible tree")
    p.add_argument("tree")
    p.add_argument("partition")
    p.set_defaults(fn=cmd_refine)

    p = sub.add_parser("fitch", help="Fitch graph of (tree, H)")
    p.add_argument("tree")
    p.add_argument("h", help="edge-set file (one edge key per line)")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(fn=cmd_fitch)

    p = sub.add_parser("simulate", help="generate a scenario corpus")
    p.add_argument("--rates", action="append",
                   help="d,l,h (repeatable; default grid otherwise)")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", help="corpus JSON-lines path (default stdout)")
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("stats", help="fraction tables over a corpus")
    p.add_argument("corpus")
    p.add_argument("--table", required=True,
                   choices=["edges", "pairs", "qpairs", "contraction"])
    p.add_argument("--csv", help="summary CSV path (default stdout)")
    p.add_argument("--scenario-csv",
                   help="also write per-scenario fractions (for plots)")
    p.add_argument("--contraction-p", type=float, default=0.25)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(fn=cmd_stats)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except VerdictError as e:
        print(f"xenoclass: {e}", file=sys.stderr)
        return 1
    except (TreeError, PartitionError, ValueError, OSError) as e:
        print(f"xenoclass: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
