"""Command-line front end: ``simplelocal run`` and ``simplelocal stats``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .augmented import DEFAULT_TOL
from .errors import InputError, InternalError
from .graph_core import Graph, NodeSet, load_graph, neighborhood, read_seeds
from .simple_local import ALPHA_UPDATES, ImprovementResult, simple_local

logger = logging.getLogger("simplelocal")


@dataclass
class RunConfig:
    graph_path: str
    format: str = "edgelist"
    index_base: int = 0
    seeds_path: str | None = None
    seed_nodes: list[int] = field(default_factory=list)
    grow_seeds: bool = False
    deltas: list[float] = field(default_factory=lambda: [0.0])
    tolerance: float = DEFAULT_TOL
    max_iterations: int | None = None
    output_path: str | None = None
    emit_trace: bool = False
    alpha_update: str = "quotient"

    def validate(self) -> None:
        if any(not d >= 0 for d in self.deltas):
            raise InputError("delta values must be >= 0")
        if not self.tolerance > 0:
            raise InputError("tolerance must be > 0")
        if self.index_base not in (0, 1):
            raise InputError("index base must be 0 or 1")
        if self.seeds_path is None and not self.seed_nodes:
            raise InputError("no seeds given; use --seeds or --seed-nodes")


def build_seed(g: Graph, cfg: RunConfig) -> NodeSet:
    ids = [v - cfg.index_base for v in cfg.seed_nodes]
    if cfg.seeds_path is not None:
        ids += read_seeds(cfg.seeds_path, cfg.index_base)
    for v in ids:
        if not 0 <= v < g.node_count:
            raise InputError(f"unknown node id in seeds: {v + cfg.index_base}")
    seed = NodeSet.of(g, ids)
    if cfg.grow_seeds:
        seed = NodeSet.of(g, seed.members | neighborhood(g, seed).members)
    return seed


def result_record(res: ImprovementResult, base: int, wall_time: float, trace: bool) -> dict:
    rec = {
        "delta": res.delta,
        "set": [v + base for v in res.best_set],
        "size": len(res.best_set),
        "conductance": res.best_conductance,
        "alpha_trace": res.alpha_trace,
        "flow_calls": res.flow_calls,
        "explored_volume": res.explored_volume,
        "touched_volume": res.touched_volume,
        "exploration_bound": res.exploration_bound,
        "locality_guaranteed": res.locality_guaranteed,
        "wall_time": wall_time,
    }
    if trace:
        rec["trace"] = [
            {
                "alpha": it.alpha,
                "flow": it.flow,
                "size": it.size,
                "conductance": it.conductance,
                "explored_volume": it.explored_volume,
                "flow_iterations": it.flow_iterations,
            }
            for it in res.per_iteration
        ]
    return rec


def run(cfg: RunConfig) -> dict:
    """Run one improvement per delta and return the result document."""
    cfg.validate()
    g = load_graph(cfg.graph_path, cfg.format, cfg.index_base)
    seed = build_seed(g, cfg)
    records = []
    for delta in cfg.deltas:
        t0 = time.perf_counter()
        res = simple_local(
            g,
            seed,
            delta,
            tol=cfg.tolerance,
            max_iterations=cfg.max_iterations,
            alpha_update=cfg.alpha_update,
        )
        elapsed = time.perf_counter() - t0
        logger.info("delta=%g phi=%.6g size=%d explored=%g", delta, res.best_conductance, len(res.best_set), res.explored_volume)
        records.append(result_record(res, cfg.index_base, elapsed, cfg.emit_trace))
    return {
        "graph": str(cfg.graph_path),
        "nodes": g.node_count,
        "total_volume": g.total_volume,
        "seed": [v + cfg.index_base for v in seed],
        "seed_volume": seed.volume,
        "records": records,
    }


def stats(graph_path: str, fmt: str = "edgelist", index_base: int = 0) -> dict:
    g = load_graph(graph_path, fmt, index_base)
    return {
        "nodes": g.node_count,
        "edges": g.edge_count,
        "total_volume": g.total_volume,
        "weighted": g.is_weighted,
    }


def oracle_check(graph_path: str, fmt: str, index_base: int, seeds: list[int], delta: float) -> dict:
    from .augmented import AugmentedParams
    from .oracle import brute_min_quotient
    from .simple_local import modified_quotient

    g = load_graph(graph_path, fmt, index_base)
    r = NodeSet.of(g, [v - index_base for v in seeds])
    res = simple_local(g, r, delta)
    p = AugmentedParams.for_seed(g, r, 1.0, delta)
    rep = brute_min_quotient(g, r, p.epsilon)
    return {
        "algorithm_score": modified_quotient(g, r, p, res.best_set),
        "oracle_score": rep.best_value,
        "oracle_sets": [sorted(v + index_base for v in s) for s in rep.best_sets],
        "evaluated": rep.evaluated,
    }


def _id_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad node id list {text!r}") from None


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True, help="graph file")
    p.add_argument("--format", default="edgelist", choices=["edgelist", "matrix-market", "mtx"])
    p.add_argument("--index-base", type=int, default=0, choices=[0, 1], help="id base of the input files")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="simplelocal", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, metavar="{run,stats}")

    p_run = sub.add_parser("run", help="improve a seed set for one or more delta values")
    _add_graph_args(p_run)
    p_run.add_argument("--seeds", help="seed file, one node id per line")
    p_run.add_argument("--seed-nodes", type=_id_list, action="append", default=[], help="inline ids, e.g. 1,2,3")
    p_run.add_argument("--grow-seeds", action="store_true", help="add the seeds' neighborhood to the seed set")
    p_run.add_argument("--delta", type=float, action="append", help="locality parameter (repeatable)")
    p_run.add_argument("--tolerance", type=float, default=DEFAULT_TOL)
    p_run.add_argument("--max-iters", type=int, default=None)
    p_run.add_argument("--alpha-update", choices=ALPHA_UPDATES, default="quotient")
    p_run.add_argument("--out", help="write the JSON document here instead of stdout")
    p_run.add_argument("--trace", action="store_true", help="include per-flow-call diagnostics")

    p_stats = sub.add_parser("stats", help="print node/edge/volume counts")
    _add_graph_args(p_stats)

    p_oracle = sub.add_parser("oracle")  # debugging aid, deliberately unlisted
    _add_graph_args(p_oracle)
    p_oracle.add_argument("--seed-nodes", type=_id_list, required=True)
    p_oracle.add_argument("--delta", type=float, default=0.0)
    return parser


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.command == "run":
            cfg = RunConfig(
                graph_path=args.graph,
                format=args.format,
                index_base=args.index_base,
                seeds_path=args.seeds,
                seed_nodes=[v for chunk in args.seed_nodes for v in chunk],
                grow_seeds=args.grow_seeds,
                deltas=args.delta if args.delta else [0.0],
                tolerance=args.tolerance,
                max_iterations=args.max_iters,
                output_path=args.out,
                emit_trace=args.trace,
                alpha_update=args.alpha_update,
            )
            _emit(run(cfg), cfg.output_path)
        elif args.command == "stats":
            _emit(stats(args.graph, args.format, args.index_base), None)
        else:
            _emit(oracle_check(args.graph, args.format, args.index_base, args.seed_nodes, args.delta), None)
    except (InputError, OSError) as exc:
        print(f"simplelocal: error: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"simplelocal: internal error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
