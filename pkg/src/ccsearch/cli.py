"""Command-line interface: ``ccsearch {query,batch,sample-stats,generate,oracle}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .estimators import PPRCS, SCCS
from .evaluation import (
    EvalReport,
    evaluate_query,
    generate_planted_partition,
    load_ground_truth,
    select_queries,
    summarize,
)
from .graph import load_edge_list
from .oracle import brute_force_ccs
from .sampling import SamplingParams, sample_subgraph

REPORT_FIELDS = list(EvalReport.__dataclass_fields__)


class CliError(Exception):
    pass


def _r_max(text):
    if text == "auto":
        return text
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("r_max must be positive or 'auto'")
    return value


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _probability(text):
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"expected a probability in [0, 1], got {text}")
    return value


def _add_search_args(p):
    p.add_argument("graph", help="edge-list file")
    p.add_argument("--algorithm", choices=["pprcs", "sccs"], default="sccs")
    p.add_argument("--alpha", type=float, default=0.15)
    p.add_argument("--r-max", type=_r_max, default="auto", help="push threshold or 'auto' (1/n)")
    _add_sampling_args(p)
    p.add_argument("--count", type=_positive_int, default=2)
    p.add_argument("--max-rounds", type=_positive_int, default=100)
    p.add_argument("--format", choices=["jsonl", "tsv"], default="jsonl")
    p.add_argument("--output", "-o", help="write here instead of stdout")
    p.add_argument("--no-timing", action="store_true",
                   help="report runtime_ms as 0 so repeated runs are byte-identical")


def _add_sampling_args(p):
    p.add_argument("--dp", type=_positive_int, default=3)
    p.add_argument("--l", type=_positive_int, default=300)
    p.add_argument("--h", type=_positive_int, default=5000)


def _add_query_selection(p):
    p.add_argument("--ground-truth", "-t", help="community file, one community per line")
    p.add_argument("--queries", type=int, nargs="+", help="explicit external query ids")
    p.add_argument("-k", type=_positive_int, default=50, help="number of sampled queries")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ccsearch", description="Connected low-conductance community search.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("query", help="run one search")
    _add_search_args(p)
    p.add_argument("--query", "-q", type=int, required=True, help="external id of the query vertex")
    p.add_argument("--ground-truth", "-t")

    p = sub.add_parser("batch", help="evaluate many queries against ground truth")
    _add_search_args(p)
    _add_query_selection(p)
    p.add_argument("--jobs", type=_positive_int, default=1, help="worker processes")

    p = sub.add_parser("sample-stats", help="coverage and sampling rate of the BFS sample")
    p.add_argument("graph")
    _add_sampling_args(p)
    _add_query_selection(p)
    p.add_argument("--output", "-o")
    p.add_argument("--no-timing", action="store_true")

    p = sub.add_parser("generate", help="write a planted-partition graph and its blocks")
    p.add_argument("--blocks", type=_positive_int, required=True)
    p.add_argument("--block-size", type=int, required=True)
    p.add_argument("--p-in", type=_probability, required=True)
    p.add_argument("--p-out", type=_probability, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--edges-out", required=True)
    p.add_argument("--truth-out", required=True)

    p = sub.add_parser("oracle", help="exhaustive optimum for graphs with at most 20 vertices")
    p.add_argument("graph")
    p.add_argument("--query", "-q", type=int, required=True)
    return parser


def _load_graph(path):
    try:
        return load_edge_list(path)
    except OSError as exc:
        raise CliError(f"cannot read graph {path}: {exc.strerror or exc}") from None
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from None


def _load_truth(path, g):
    if path is None:
        return None
    try:
        return load_ground_truth(path, g)
    except OSError as exc:
        raise CliError(f"cannot read ground truth {path}: {exc.strerror or exc}") from None
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from None


def _dense(g, external_id):
    try:
        return g.dense_id(external_id)
    except KeyError:
        raise CliError(f"vertex {external_id} is not in the graph") from None


def _make_estimator(args):
    if args.algorithm == "pprcs":
        return PPRCS(alpha=args.alpha, r_max=args.r_max)
    return SCCS(dp=args.dp, l=args.l, h=args.h, count=args.count, max_rounds=args.max_rounds)


def _queries(args, g, gt):
    if args.queries:
        out = []
        for ext in args.queries:
            q = _dense(g, ext)
            holders = gt.index.get(q) if gt is not None else None
            out.append((q, holders[0] if holders else None))
        return out
    if gt is None:
        raise CliError("sampling queries needs --ground-truth")
    try:
        return select_queries(gt, args.k, args.seed)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _format_row(record: dict, fmt: str) -> str:
    if fmt == "jsonl":
        return json.dumps(record)
    cells = []
    for key in REPORT_FIELDS:
        value = record.get(key)
        if isinstance(value, list):
            value = " ".join(map(str, value))
        elif isinstance(value, dict):
            value = json.dumps(value, sort_keys=True)
        cells.append("" if value is None else str(value))
    return "\t".join(cells)


def _open_out(path):
    return open(path, "w") if path else sys.stdout


def _report_dict(report, no_timing):
    d = report.to_dict()
    if no_timing:
        d["runtime_ms"] = 0.0
    return d


def cmd_query(args):
    g = _load_graph(args.graph)
    gt = _load_truth(args.ground_truth, g)
    q = _dense(g, args.query)
    est = _make_estimator(args).fit(g)
    if gt is not None and q not in gt.index:
        gt = None
    report = evaluate_query(g, gt, est, q)
    out = _open_out(args.output)
    if args.format == "tsv":
        out.write("\t".join(REPORT_FIELDS) + "\n")
    out.write(_format_row(_report_dict(report, args.no_timing), args.format) + "\n")
    if out is not sys.stdout:
        out.close()


_WORKER = {}


def _init_worker(graph_path, truth_path, est):
    g = load_edge_list(graph_path)
    _WORKER.update(g=g, gt=_load_truth(truth_path, g), est=est.fit(g))


def _run_one(item):
    q, ci = item
    return evaluate_query(_WORKER["g"], _WORKER["gt"], _WORKER["est"], q, ci)


def cmd_batch(args):
    g = _load_graph(args.graph)
    gt = _load_truth(args.ground_truth, g)
    if gt is None:
        raise CliError("batch needs --ground-truth")
    queries = _queries(args, g, gt)
    missing = [int(g.external_ids[q]) for q, ci in queries if ci is None]
    if missing:
        raise CliError(f"query vertices {missing[:5]} are in no ground-truth community")
    est = _make_estimator(args).fit(g)
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs, initializer=_init_worker,
                                 initargs=(args.graph, args.ground_truth, est)) as pool:
            reports = list(pool.map(_run_one, queries))
    else:
        reports = [evaluate_query(g, gt, est, q, ci) for q, ci in queries]
    summary = summarize(reports)
    if args.no_timing:
        summary["mean_runtime_ms"] = 0.0
    out = _open_out(args.output)
    if args.format == "tsv":
        out.write("\t".join(REPORT_FIELDS) + "\n")
    for r in reports:
        out.write(_format_row(_report_dict(r, args.no_timing), args.format) + "\n")
    if args.format == "tsv":
        out.write("# " + json.dumps(summary) + "\n")
    else:
        out.write(json.dumps(summary) + "\n")
    if out is not sys.stdout:
        out.close()


def cmd_sample_stats(args):
    g = _load_graph(args.graph)
    gt = _load_truth(args.ground_truth, g)
    if gt is None:
        raise CliError("sample-stats needs --ground-truth")
    try:
        params = SamplingParams(args.dp, args.l, args.h)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    queries = _queries(args, g, gt)
    rows = []
    for q, ci in queries:
        if ci is None:
            raise CliError(f"query vertex {int(g.external_ids[q])} is in no ground-truth community")
        start = time.perf_counter()
        sg = sample_subgraph(g, q, params)
        elapsed = 0.0 if args.no_timing else (time.perf_counter() - start) * 1000.0
        truth = gt.communities[ci]
        covered = len(truth.intersection(sg.to_parent.tolist()))
        rows.append({
            "query": int(g.external_ids[q]),
            "community_index": ci,
            "coverage": covered / len(truth),
            "rate": sg.n / g.n,
            "sample_size": sg.n,
            "time_ms": elapsed,
        })
    out = _open_out(args.output)
    for row in rows:
        out.write(json.dumps(row) + "\n")
    out.write(json.dumps({
        "summary": True,
        "queries": len(rows),
        "mean_coverage": float(np.mean([r["coverage"] for r in rows])),
        "mean_rate": float(np.mean([r["rate"] for r in rows])),
        "mean_time_ms": float(np.mean([r["time_ms"] for r in rows])),
    }) + "\n")
    if out is not sys.stdout:
        out.close()


def cmd_generate(args):
    try:
        g, gt = generate_planted_partition(args.blocks, args.block_size, args.p_in, args.p_out, args.seed)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    with open(args.edges_out, "w") as fh:
        fh.write(f"# planted partition blocks={args.blocks} block_size={args.block_size} "
                 f"p_in={args.p_in} p_out={args.p_out} seed={args.seed}\n")
        for u, v in g.edges().tolist():
            fh.write(f"{u}\t{v}\n")
    with open(args.truth_out, "w") as fh:
        gt.write(fh, g)


def cmd_oracle(args):
    g = _load_graph(args.graph)
    q = _dense(g, args.query)
    try:
        res = brute_force_ccs(g, q)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    print(json.dumps({
        "query": args.query,
        "best_set": [int(g.external_ids[v]) for v in res.best_set],
        "best_conductance": float(res.best_conductance),
        "best_conductance_exact": str(res.best_conductance),
        "optima_count": res.optima_count,
    }))


COMMANDS = {
    "query": cmd_query,
    "batch": cmd_batch,
    "sample-stats": cmd_sample_stats,
    "generate": cmd_generate,
    "oracle": cmd_oracle,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except (CliError, ValueError, RuntimeError) as exc:
        print(f"ccsearch: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
