"""``disect`` command line: generate, partition, verify, bench."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path

from .config import EngineConfig
from .constructions import (
    eulerian_complete_odd,
    extremal_bisection_bound,
    extremal_family,
    random_min_semidegree,
)
from .digraph import ParseError, read_digraph, serialize_digraph, underlying_graph
from .engine import build_split, dumps, optimal_bisect, result_document
from .oracle import (
    BISECTION_MAX_N,
    OracleGuardError,
    exact_best_bisection,
    exact_matching_profile,
    exact_min_gap,
    exact_tight_check,
    GAP_MAX_LEN,
    MATCHING_MAX_N,
    TIGHT_MAX_N,
)

EXIT_OK, EXIT_INPUT, EXIT_CERT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with status 1 instead of argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _config(args) -> EngineConfig:
    try:
        return EngineConfig(
            epsilon=args.epsilon,
            trials=args.trials,
            seed=args.seed,
            threshold=args.threshold,
            dense_constant=args.dense_constant,
            threads=args.threads or os.cpu_count() or 1,
        )
    except ValueError as err:
        raise UsageError(str(err)) from err


def cmd_generate(args) -> int:
    try:
        if args.family == "extremal":
            D, layout = extremal_family(args.d, args.k)
            if args.layout:
                Path(args.layout).write_text(layout.to_json() + "\n")
        elif args.family == "eulerian":
            D = eulerian_complete_odd(args.t)
        else:
            if args.n is None:
                raise UsageError("generate random needs --n")
            D = random_min_semidegree(args.n, args.d, args.p, args.seed)
    except ValueError as err:
        raise UsageError(str(err)) from err
    _emit(serialize_digraph(D), args.out)
    print(f"generated {args.family}: n={D.n} m={D.m}", file=sys.stderr)
    return EXIT_OK


def cmd_partition(args) -> int:
    D = read_digraph(args.file)
    bis, cert = optimal_bisect(D, _config(args))
    text = dumps(result_document(D, bis, cert))
    target = args.json or args.out
    _emit(text, target)
    a = cert.achieved
    print(
        f"n={D.n} m={D.m} d={cert.d} mode={cert.mode} e12={bis.stats.e12} e21={bis.stats.e21} "
        f"minDir={a['minDir']} ratio={a['ratio']:.4f} bound={a['bound']:.4f} ({a['boundStatus']})",
        file=sys.stderr,
    )
    for w in cert.warnings:
        print(f"warning: {w}", file=sys.stderr)
    failed = cert.failed
    for r in failed:
        print(f"certificate failure: {r.name}: {r.lhs} {r.relation} {r.rhs}", file=sys.stderr)
    return EXIT_CERT if failed else EXIT_OK


def cmd_verify(args) -> int:
    D = read_digraph(args.file)
    limit = min(args.oracle_max_n, BISECTION_MAX_N)
    if D.n > limit:
        raise UsageError(f"n={D.n} exceeds oracle guard {limit}; refusing exhaustive verification")
    config = _config(args)
    bis, cert = optimal_bisect(D, config)
    oracle = exact_best_bisection(D)
    checks = [
        {
            "name": "bisection_dominance",
            "engine": bis.stats.min_dir,
            "oracle": oracle.value,
            "ok": bis.stats.min_dir <= oracle.value,
            "optimal": bis.stats.min_dir == oracle.value,
        }
    ]
    ctx = build_split(D, config)
    if len(ctx.X) <= GAP_MAX_LEN and ctx.gap_mode == "exact":
        gap = exact_min_gap([int(ctx.splus[v]) for v in ctx.X])
        checks.append({"name": "gap", "engine": ctx.theta, "oracle": gap.value, "ok": ctx.theta == gap.value})
    G = underlying_graph(ctx.stripped)
    GY, _ = G.induced(ctx.Y)
    if GY.n <= MATCHING_MAX_N:
        from .matching import maximum_matching

        size = maximum_matching(GY).size
        prof = exact_matching_profile(GY)
        checks.append({"name": "matching_size", "engine": size, "oracle": prof.value[0], "ok": size == prof.value[0]})
    tight_ok = True
    for comp, tight in zip(ctx.components.components, ctx.components.is_tight):
        if len(comp) <= TIGHT_MAX_N:
            H, _ = G.induced(comp)
            tight_ok &= exact_tight_check(H) == tight
    checks.append({"name": "tight_components", "ok": tight_ok})
    ok = all(c["ok"] for c in checks) and not cert.failed
    _emit(json.dumps({"n": D.n, "m": D.m, "checks": checks, "ok": ok}, indent=2) + "\n", args.out)
    return EXIT_OK if ok else EXIT_CERT


def cmd_bench(args) -> int:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["d", "k", "n", "m", "minDir", "ratio", "bound", "margin"])
    config = _config(args)
    worst = EXIT_OK
    for d in args.ds:
        for k in args.ks:
            D, _ = extremal_family(d, k)
            bis, cert = optimal_bisect(D, config)
            ratio = bis.stats.min_dir / D.m
            bound = d / (2 * (2 * d + 1))
            writer.writerow([d, k, D.n, D.m, bis.stats.min_dir, f"{ratio:.6f}", f"{bound:.6f}", f"{ratio - bound:.6f}"])
            assert bis.stats.min_dir <= extremal_bisection_bound(d, k)
            if cert.failed:
                worst = EXIT_CERT
    _emit(buf.getvalue(), args.out)
    return worst


def _engine_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--epsilon", type=float, default=0.02)
    p.add_argument("--trials", type=int, default=None, help="default: derived from epsilon")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None, help="default: machine parallelism")
    p.add_argument("--threshold", type=int, default=None, help="X/Y degree cutoff (default ceil(n^(3/4)))")
    p.add_argument("--dense-constant", type=float, default=256)
    p.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="disect", description="Bisections of digraphs with many arcs in both directions.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a generated digraph in arc-list format")
    g.add_argument("family", choices=["extremal", "eulerian", "random"])
    g.add_argument("--d", type=int, default=1)
    g.add_argument("--k", type=int, default=1)
    g.add_argument("--t", type=int, default=3)
    g.add_argument("--n", type=int, default=None)
    g.add_argument("--p", type=float, default=0.0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default=None)
    g.add_argument("--layout", default=None, help="extremal only: write layout JSON here")
    g.set_defaults(func=cmd_generate)

    p = sub.add_parser("partition", help="bisect a digraph and emit the JSON result document")
    p.add_argument("file")
    _engine_flags(p)
    p.add_argument("--json", default=None, help="write the JSON document here (same as --out)")
    p.set_defaults(func=cmd_partition)

    v = sub.add_parser("verify", help="compare the engine against exhaustive oracles")
    v.add_argument("file")
    _engine_flags(v)
    v.add_argument("--oracle-max-n", type=int, default=12)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="extremal sweep as CSV")
    b.add_argument("--ds", type=int, nargs="+", default=[1, 2, 3])
    b.add_argument("--ks", type=int, nargs="+", default=[10, 30, 100])
    _engine_flags(b)
    b.set_defaults(func=cmd_bench)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ParseError, OSError, UsageError, OracleGuardError) as err:
        print(f"disect: error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as err:
        print(f"disect: internal assertion failed: {err}", file=sys.stderr)
        return EXIT_CERT


def main() -> None:
    sys.exit(run())
