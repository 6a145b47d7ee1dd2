"""Command-line entry point: ``vrcomplex {gen,build,bench,verify}``."""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .bench import (
    BENCH_ALGORITHMS,
    METRICS,
    ExperimentConfig,
    VerificationFailure,
    counters_record,
    emit_table,
    run_experiment,
    write_stats_csv,
)
from .construction import ALGORITHMS, run_algorithm
from .errors import NodeBudgetExceeded, ValidationError
from .graph import erdos_renyi, from_point_cloud, read_edge_list, read_point_cloud, write_edge_list
from .parallel import resolve_workers
from .verify import DEFAULT_DIMS, DEFAULT_PROBS, verify_equivalence


class CliError(Exception):
    pass


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}") from None


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}") from None


def _open_out(path: str):
    try:
        return open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}") from None


def cmd_gen(args) -> int:
    g = erdos_renyi(args.n, args.p, args.seed)
    _write_text(args.out, write_edge_list(g))
    return 0


def cmd_build(args) -> int:
    if args.points is not None:
        if args.epsilon is None:
            raise CliError("--points requires --epsilon")
        try:
            g = from_point_cloud(read_point_cloud(_read_text(args.points)), args.epsilon)
        except ValidationError as exc:
            raise CliError(f"{args.points}: {exc}") from None
    else:
        try:
            g = read_edge_list(_read_text(args.input))
        except ValidationError as exc:
            raise CliError(f"{args.input}: {exc}") from None
    workers = resolve_workers(args.workers)
    t0 = time.perf_counter_ns()
    try:
        tree, counters = run_algorithm(args.algo, g, args.dim, workers=workers, node_budget=args.node_budget)
    except NodeBudgetExceeded as exc:
        raise CliError(str(exc)) from None
    elapsed_us = (time.perf_counter_ns() - t0) / 1000.0
    if args.dump_out:
        _write_text(args.dump_out, tree.dump())
    report = [
        f"algorithm: {args.algo}",
        f"vertices: {g.n}",
        f"edges: {g.edge_count}",
        f"max_dim: {args.dim}",
        "f_vector: " + ",".join(map(str, tree.f_vector())),
        f"simplices: {tree.size}",
        f"edge_probes: {counters.edge_probes}",
        f"merge_comparisons: {counters.merge_comparisons}",
        f"nodes_created: {counters.nodes_created}",
        f"time_us: {elapsed_us:.3f}",
    ]
    print("\n".join(report))
    if args.stats_out:
        with _open_out(args.stats_out) as fh:
            write_stats_csv([counters_record(0, args.algo, args.dim, elapsed_us, counters)], fh)
    return 0


def cmd_bench(args) -> int:
    cfg = ExperimentConfig(
        n=args.n,
        p_list=tuple(args.p),
        dim_list=tuple(args.dims),
        trials=args.trials,
        seed=args.seed,
        algorithms=tuple(args.algos),
        workers=resolve_workers(args.workers),
        node_budget=args.node_budget,
        warmup=not args.no_warmup,
    )

    def progress(cell):
        if args.verbose:
            print(f"p={cell.p:g} dim={cell.dim} {cell.algorithm}: {cell.mean_time_us:.1f} us "
                  f"({cell.failures} failed)", file=sys.stderr)

    try:
        results = run_experiment(cfg, progress=progress)
    except VerificationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    text = "\n".join(emit_table(results, args.out_format, m) for m in args.metric)
    _write_text(args.out, text)
    if args.stats_out:
        with _open_out(args.stats_out) as fh:
            write_stats_csv([r for cell in results for r in cell.records], fh)
    return 0


def cmd_verify(args) -> int:
    report = verify_equivalence(
        trials=args.trials,
        min_n=args.min_n,
        max_n=args.max_n,
        seed=args.seed,
        probs=tuple(args.p),
        dims=tuple(args.dims),
    )
    for line in report.mismatches:
        print(line, file=sys.stderr)
    status = "OK" if report.ok else "FAILED"
    print(f"{status}: {report.cases} graphs, {len(report.mismatches)} mismatches")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vrcomplex",
        description="Vietoris-Rips (clique complex) construction and benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a seeded Erdos-Renyi edge list")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("build", help="construct one complex and report statistics")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="edge-list file")
    src.add_argument("--points", help="point-cloud CSV file")
    p.add_argument("--epsilon", type=float, help="distance threshold for --points")
    p.add_argument("--dim", type=int, required=True, help="maximum simplex dimension")
    p.add_argument("--algo", choices=sorted(ALGORITHMS), default="new")
    p.add_argument("--workers", type=int, default=1, help="0 = one per logical CPU")
    p.add_argument("--node-budget", type=int)
    p.add_argument("--dump-out", help="write the canonical simplex dump here")
    p.add_argument("--stats-out", help="write a counter CSV here")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("bench", help="run the Erdos-Renyi timing grid")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--p", type=float, nargs="+", default=[0.1, 0.2, 0.3, 0.4, 0.5, 0.6])
    p.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4, 5, 6])
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--algos", nargs="+", choices=BENCH_ALGORITHMS, default=["new", "incremental"])
    p.add_argument("--workers", type=int, default=1, help="0 = one per logical CPU")
    p.add_argument("--node-budget", type=int)
    p.add_argument("--out-format", choices=["csv", "md"], default="md")
    p.add_argument("--metric", nargs="+", choices=METRICS, default=["mean_time_us"])
    p.add_argument("--out", help="table output path (default: stdout)")
    p.add_argument("--stats-out", help="per-trial counter CSV")
    p.add_argument("--no-warmup", action="store_true")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="check all constructions against the brute-force oracle")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--min-n", type=int, default=5)
    p.add_argument("--max-n", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=float, nargs="+", default=list(DEFAULT_PROBS))
    p.add_argument("--dims", type=int, nargs="+", default=list(DEFAULT_DIMS))
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
