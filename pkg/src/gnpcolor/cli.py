"""Command-line front end.

Exit codes: 0 success, 1 usage/parse error, 2 algorithmic abort (input
rejected by the structure gate), 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import GraphFormatError, ParameterError
from .graph import (
    CycleThreshold,
    GnpParams,
    generate_gnp,
    load_graph,
    save_graph,
    short_cycle_threshold,
)
from .pipeline import RunConfig, sample_many

DEFAULT_SEED = 1729  # documented default so every invocation is reproducible

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_ABORT = 2
EXIT_VERIFY = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    p = _Parser(prog="gnpcolor")
    sub = p.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a random sparse graph file")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--d", type=float, required=True)
    gen.add_argument("--seed", type=int, default=DEFAULT_SEED)
    gen.add_argument("--out", default="-")

    smp = sub.add_parser("sample", help="sample approximately-uniform colorings")
    smp.add_argument("--graph", required=True)
    smp.add_argument("--k", type=int, required=True)
    smp.add_argument("--d", type=float, required=True)
    smp.add_argument("--cap", type=int, default=None)
    smp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    smp.add_argument("--trials", type=int, default=1)
    smp.add_argument("--stats", action="store_true")
    smp.add_argument("--out", default="-")

    ver = sub.add_parser("verify", help="run an exhaustive verification suite")
    ver.add_argument(
        "--suite",
        required=True,
        choices=["switching", "update", "pipeline", "dp"],
    )
    ver.add_argument("--max-n", type=int, default=5)
    ver.add_argument("--k", type=int, default=3)

    alf = sub.add_parser("measure-alpha", help="pathological-coloring fractions")
    alf.add_argument("--graph", required=True)
    alf.add_argument("--v", type=int, required=True)
    alf.add_argument("--u", type=int, required=True)
    alf.add_argument("--k", type=int, required=True)
    alf.add_argument("--out", default="-")

    ben = sub.add_parser("bench", help="runtime scaling benchmark")
    ben.add_argument("--n-list", required=True, help="comma-separated sizes")
    ben.add_argument("--d", type=float, default=5.0)
    ben.add_argument("--k", type=int, default=12)
    ben.add_argument("--seeds", type=int, default=5)
    ben.add_argument("--compare-backends", action="store_true")
    ben.add_argument("--out", default="-")
    return p


def _open_out(path: str):
    return sys.stdout if path == "-" else open(path, "w")


def _cmd_generate(args) -> int:
    g = generate_gnp(GnpParams(args.n, args.d, args.seed))
    if args.out == "-":
        sys.stdout.write(f"{g.n} {g.m}\n")
        for u, v in g.edges:
            sys.stdout.write(f"{u} {v}\n")
    else:
        save_graph(g, args.out)
    return EXIT_OK


def _resolve_cap(n: int, d: float, cap_flag) -> CycleThreshold:
    formula = short_cycle_threshold(n, d)
    if cap_flag is None:
        if formula.value == 0:
            raise ParameterError(
                "the threshold formula degenerates at this size; pass --cap "
                "explicitly (0 peels every edge)"
            )
        return formula
    return CycleThreshold(cap_flag)


def _cmd_sample(args) -> int:
    g = load_graph(args.graph)
    cap = _resolve_cap(g.n, args.d, args.cap)
    cfg = RunConfig(args.k, args.d, cap, args.seed, collect_stats=args.stats)
    reports = sample_many(g, cfg, args.trials)
    out = _open_out(args.out)
    try:
        for rep in reports:
            out.write(rep.to_json() + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_ABORT if any(r.aborted for r in reports) else EXIT_OK


def _cmd_verify(args) -> int:
    from . import verify

    if args.suite == "switching":
        results = [
            verify.verify_switching(args.max_n, ks=(args.k,)),
            verify.verify_bijection(args.max_n, ks=(args.k,)),
        ]
    elif args.suite == "update":
        results = [verify.verify_update(args.max_n, ks=(args.k,))]
    elif args.suite == "dp":
        results = [verify.verify_dp(args.max_n, args.k)]
    else:
        results = [verify.verify_pipeline(ks=(args.k,))]
    for res in results:
        print(res.summary())
    return EXIT_OK if all(r.ok for r in results) else EXIT_VERIFY


def _cmd_measure_alpha(args) -> int:
    from .oracle import measure_alpha

    g = load_graph(args.graph)
    report = measure_alpha(g, args.v, args.u, args.k)
    payload = {
        "alpha": [report.alpha.numerator, report.alpha.denominator],
        "pairs": {
            f"{c},{q}": [[f.numerator, f.denominator] for f in fr]
            for (c, q), fr in report.pair_fractions.items()
        },
    }
    out = _open_out(args.out)
    try:
        json.dump(payload, out, indent=2)
        out.write("\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def _cmd_bench(args) -> int:
    from . import _backend, bench

    try:
        n_list = [int(x) for x in args.n_list.split(",") if x.strip()]
    except ValueError:
        raise ParameterError(f"bad --n-list: {args.n_list!r}")
    backends = None
    if args.compare_backends:
        backends = ["numpy"] + (["numba"] if _backend.numba_available() else [])
    rows = bench.run_benchmark(n_list, args.d, args.k, args.seeds, backends=backends)
    out = _open_out(args.out)
    try:
        out.write(bench.to_csv(rows))
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "generate": _cmd_generate,
        "sample": _cmd_sample,
        "verify": _cmd_verify,
        "measure-alpha": _cmd_measure_alpha,
        "bench": _cmd_bench,
    }
    try:
        return handlers[args.command](args)
    except (ParameterError, GraphFormatError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
