"""Command-line driver: ``gen``, ``solve``, ``bench`` and ``selftest``.

Exit codes: 0 success, 1 usage / IO / solver error, 2 validation mismatch.
"""
import argparse
import json
from pathlib import Path
import sys

import numpy as np

from . import selftest
from .errors import SemiringError
from .fileio import (GRAPH_KINDS, WEIGHT_KINDS, format_dense_matrix, format_edge_list,
                     generate_graph, generate_points, parse_dense_matrix, parse_edge_list,
                     write_dense_matrix)
from .mmo import tile_count
from .runner import PROBLEMS, solve_graph, solve_knn, _jsonable


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="semiring-mxu", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="write a synthetic graph or point set")
    gen.add_argument("--kind", required=True, choices=GRAPH_KINDS + ("points",))
    gen.add_argument("--n", type=int, required=True, help="vertices, or points for --kind points")
    gen.add_argument("--density", type=float, default=0.3)
    gen.add_argument("--weights", choices=WEIGHT_KINDS, default="integer")
    gen.add_argument("--range", nargs=2, type=float, default=(1, 10), metavar=("LO", "HI"))
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--undirected", action="store_true")
    gen.add_argument("--dim", type=int, default=2, help="point dimension (--kind points)")
    gen.add_argument("--precision", choices=("exact32", "mixed16"), default="exact32")
    gen.add_argument("--output", "-o", help="file to write (default stdout)")

    solve = sub.add_parser("solve", help="solve one problem instance")
    solve.add_argument("problem", choices=tuple(PROBLEMS))
    solve.add_argument("--input", required=True,
                       help="edge list, or query points (dense matrix) for knn")
    solve.add_argument("--refs", help="knn reference points (default: the query points)")
    solve.add_argument("--k", type=int, default=1, help="knn neighbour count")
    solve.add_argument("--algo", choices=("bf", "leyzorek", "oracle"), default="leyzorek")
    solve.add_argument("--precision", choices=("exact32", "mixed16"), default="exact32")
    solve.add_argument("--validate", action="store_true", help="diff against the oracle")
    solve.add_argument("--report", help="write the JSON run report here")
    solve.add_argument("--output", help="write the result matrix here")
    solve.add_argument("--threads", type=int, default=None)
    solve.add_argument("--no-check", action="store_true", help="skip entry domain scans")

    bench = sub.add_parser("bench", help="sweep sizes and tabulate iterations / tile ops")
    bench.add_argument("--problem", choices=tuple(p for p in PROBLEMS if p != "knn"),
                       default="apsp")
    bench.add_argument("--kind", choices=GRAPH_KINDS, default="erdos_renyi")
    bench.add_argument("--sizes", nargs="+", type=int, default=[16, 32, 64, 128])
    bench.add_argument("--density", type=float, default=0.1)
    bench.add_argument("--weights", choices=WEIGHT_KINDS, default="integer")
    bench.add_argument("--range", nargs=2, type=float, default=(1, 10), metavar=("LO", "HI"))
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--algos", nargs="+", choices=("bf", "leyzorek"), default=["bf", "leyzorek"])
    bench.add_argument("--precision", choices=("exact32", "mixed16"), default="exact32")
    bench.add_argument("--report", help="write a JSON list of run reports here")

    st = sub.add_parser("selftest", help="run the quick invariant battery")
    st.add_argument("--seed", type=int, default=0)
    return p


def _cmd_gen(args):
    if args.kind == "points":
        text = format_dense_matrix(generate_points(
            args.n, args.dim, args.seed, args.range[0], args.range[1], precision=args.precision))
    else:
        text = format_edge_list(generate_graph(
            args.kind, args.n, args.density, tuple(args.range), args.seed,
            args.weights, not args.undirected, args.precision))
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_solve(args):
    common = dict(algorithm=args.algo, precision=args.precision, validate=args.validate,
                  workers=args.threads, check=not args.no_check)
    if args.problem == "knn":
        points = parse_dense_matrix(args.input)
        refs = parse_dense_matrix(args.refs) if args.refs else points
        matrix, idx, report = solve_knn(points, refs, args.k, **common)
        print("\n".join(" ".join(str(int(i)) for i in row) for row in idx))
    else:
        g = parse_edge_list(args.input)
        matrix, report, extra = solve_graph(args.problem, g, **common)
        if extra is not None:
            weight, edges = extra
            print(f"msf_weight {weight:g}")
            for u, v, w in edges:
                print(f"{u} {v} {np.float32(w)}")
    if args.output:
        write_dense_matrix(args.output, matrix)
    text = report.to_json()
    if args.report:
        Path(args.report).write_text(text + "\n")
    else:
        print(text)
    if report.validation is not None and not report.validation["matched"]:
        print(f"validation mismatch: max_abs_diff={report.validation['max_abs_diff']}",
              file=sys.stderr)
        return 2
    return 0


def _cmd_bench(args):
    rows = []
    print(f"{'n':>6} {'algo':>12} {'iters':>6} {'tile_ops':>10} {'tiles/iter':>10} {'seconds':>9}")
    for n in args.sizes:
        g = generate_graph(args.kind, n, args.density, tuple(args.range), args.seed,
                           args.weights, args.problem != "mst", args.precision)
        for algo in args.algos:
            _, report, _ = solve_graph(args.problem, g, algo, args.precision, check=False)
            rows.append(report.to_dict())
            print(f"{n:>6} {report.algorithm:>12} {report.iterations:>6} {report.tile_ops:>10} "
                  f"{tile_count(n, n, n):>10} {report.wall_time_seconds:>9.4f}")
    if args.report:
        Path(args.report).write_text(json.dumps([_jsonable(r) for r in rows], indent=2) + "\n")
    return 0


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "bench":
            return _cmd_bench(args)
        return 0 if selftest.run(args.seed) else 1
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except (OSError, SemiringError, IndexError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
