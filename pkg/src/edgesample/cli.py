"""Command-line interface.

Exit status is 0 when every verdict passes, 1 when one fails and 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import sys

from .graph import GraphFormatError
from .harness.advice import parse_advice
from .harness.corpus import load_graph, parse_graph_spec
from .harness.experiments import SAMPLERS, run_complexity_sweep, run_uniformity, to_json
from .harness.factors import brute_force_factor
from .lowerbound import LowerBoundParams, distinguishability_experiment, verify_construction
from .oracle import OracleSession

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _add_graph_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--graph", metavar="FILE", help="edge-list file ('n m' header, then 'u v' lines)")
    group.add_argument("--gen", metavar="FAMILY:PARAMS",
                       help="generated graph, e.g. gnm:64,200, or a corpus name such as mix")
    parser.add_argument("--graph-seed", type=int, default=0, help="seed for random graph families")


def _add_sampler_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", choices=sorted(SAMPLERS), default="hybrid")
    parser.add_argument("--eps", type=float, default=0.2)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--advice", default="exact", help="exact, noisy or fixed:V")


def _graph(args):
    try:
        if args.graph:
            return load_graph(args.graph)
        return parse_graph_spec(args.gen, seed=args.graph_seed)
    except (OSError, GraphFormatError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _advice(args):
    try:
        return parse_advice(args.advice)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _write(path: str | None, text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_sample(args) -> int:
    graph = _graph(args)
    session = OracleSession(graph, seed=args.seed)
    edge = SAMPLERS[args.model](session, args.eps, _advice(args))
    result = {
        "edge": None if edge is None else [edge.u, edge.v],
        "sampling_queries": session.sampling_counters(),
        "advice_queries": session.advice_queries,
    }
    sys.stdout.write(to_json(result))
    return EXIT_PASS


def cmd_uniformity(args) -> int:
    graph = _graph(args)
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    report = run_uniformity(graph, args.model, args.eps, args.trials, seed=args.seed,
                            advice=_advice(args), graph_name=args.gen or args.graph)
    _write(args.json, report.to_json())
    metrics = report.metrics
    print(f"trials={report.trials} accepted={report.accepted} "
          f"accept_rate={metrics['accept_rate']:.4f} ratio={metrics['max_min_ratio']} "
          f"bound={metrics['ratio_bound']:.4f} verdict={report.verdict}")
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_sweep(args) -> int:
    try:
        sizes = [int(x) for x in args.sizes.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad --sizes {args.sizes!r}") from None
    if not sizes or sizes != sorted(sizes) or min(sizes) < 4:
        raise UsageError("--sizes must be an ascending list of integers >= 4")
    table = run_complexity_sweep(args.model, args.regime, sizes, eps=args.eps,
                                 trials=args.trials, seed=args.seed)
    _write(args.json, table.to_json())
    _write(args.csv, table.to_csv())
    sys.stdout.write(table.to_csv())
    print(f"spread={table.spread} verdict={table.verdict}")
    return EXIT_FAIL if table.verdict == "fail" else EXIT_PASS


def cmd_lowerbound(args) -> int:
    params = LowerBoundParams(args.n, args.m)
    if args.verify:
        report = verify_construction(params)
        sys.stdout.write(to_json(report.to_dict()))
        return EXIT_PASS if report.passed else EXIT_FAIL
    errors = params.domain_errors()
    if errors:
        raise UsageError("; ".join(errors))
    report = distinguishability_experiment(args.model, params, args.trials, seed=args.seed, eps=args.eps)
    text = to_json(report.to_dict())
    _write(args.json, text)
    sys.stdout.write(text)
    return EXIT_FAIL if report.g_side_rate != 0 else EXIT_PASS


def cmd_factors(args) -> int:
    graph = _graph(args)
    try:
        value = brute_force_factor(graph, args.kind, args.mtilde, args.u, args.v)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    sys.stdout.write(to_json({"kind": args.kind, "u": args.u, "v": args.v, "mtilde": args.mtilde,
                              "value": value.value, "low": value.low, "high": value.high,
                              "exact": value.exact}))
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edgesample", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw one edge")
    _add_graph_args(p)
    _add_sampler_args(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("uniformity", help="uniformity experiment")
    _add_graph_args(p)
    _add_sampler_args(p)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--json", metavar="OUT")
    p.set_defaults(func=cmd_uniformity)

    p = sub.add_parser("sweep", help="query-cost sweep over graph sizes")
    p.add_argument("--model", choices=sorted(SAMPLERS), default="hybrid")
    p.add_argument("--regime", choices=("sparse", "dense"), required=True)
    p.add_argument("--sizes", required=True, help="comma-separated vertex counts, ascending")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--eps", type=float, default=0.2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", metavar="OUT")
    p.add_argument("--csv", metavar="OUT")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("lowerbound", help="hard instance pair checks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--verify", action="store_true")
    mode.add_argument("--experiment", action="store_true")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--model", choices=sorted(SAMPLERS), default="is")
    p.add_argument("--eps", type=float, default=0.2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", metavar="OUT")
    p.set_defaults(func=cmd_lowerbound)

    p = sub.add_parser("factors", help="exact loneliness/starness/neighborhood factors")
    _add_graph_args(p)
    p.add_argument("--kind", choices=("loneliness", "starness", "neighborhood"), required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--v", type=int)
    p.add_argument("--mtilde", type=float, required=True)
    p.set_defaults(func=cmd_factors)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"edgesample: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
