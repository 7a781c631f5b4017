"""Command-line front end: ``kecolor {run,gen,verify,oracle}``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from contextlib import nullcontext

from .bench import ALGORITHMS, ORACLE_EDGE_LIMIT, RunConfig, check_stream, generate_stream, replay, verify
from .graph import ContractError, DynamicGraph, StreamParseError, parse_stream
from .oracles import OracleRefused, solve_all

log = logging.getLogger("kecolor")


def _setup_logging() -> None:
    level = os.environ.get("KEC_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--algo", required=True, choices=ALGORITHMS)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--epsilon", type=float, default=0.25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle", action="store_true", help="compute the exact optimum per step on small graphs")
    p.add_argument("--stream", required=True)
    p.add_argument("--metrics", default=None, help="metrics output path (JSON lines); '-' for stdout")
    p.add_argument("--no-timing", action="store_true", help="write elapsed_ns as 0 for byte-stable output")


def _config(args) -> RunConfig:
    return RunConfig(
        algo=args.algo,
        k=args.k,
        epsilon=args.epsilon,
        seed=args.seed,
        oracle=args.oracle,
        stream=args.stream,
        metrics=args.metrics,
        timing=not args.no_timing,
    )


def _load(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_stream(fh.read())


def cmd_run(args) -> int:
    cfg = _config(args)
    try:
        cfg.validate()
        n, _, events = _load(cfg.stream)
        check_stream(cfg, n, events)
    except (ContractError, StreamParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if cfg.metrics in (None, "-"):
        ctx = nullcontext(sys.stdout)
    else:
        ctx = open(cfg.metrics, "w", encoding="utf-8")
    with ctx as out:
        replay(cfg, n, events, out=out)
    return 0


def cmd_verify(args) -> int:
    cfg = _config(args)
    try:
        cfg.validate()
        n, _, events = _load(cfg.stream)
        check_stream(cfg, n, events)
    except (ContractError, StreamParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    ok, msg = verify(cfg, n, events, corrupt_at=args.corrupt_at)
    if not ok:
        print(f"FAIL {msg}", file=sys.stderr)
        return 1
    log.info("verified %d steps", len(events))
    return 0


def cmd_gen(args) -> int:
    try:
        text = generate_stream(
            args.n, args.steps, args.p_delete, args.seed, k=args.k,
            max_edges=args.max_edges, bipartite=args.bipartite,
        )
    except ContractError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_oracle(args) -> int:
    try:
        n, k, events = _load(args.stream)
    except StreamParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    k = args.k if args.k is not None else k
    g = DynamicGraph(n)
    for ev in events:
        g.apply(ev)
    try:
        res = solve_all(g, k, coloring_limit=ORACLE_EDGE_LIMIT)
    except OracleRefused as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    frac = None if res.frac_opt is None else str(res.frac_opt)
    print(json.dumps({"n": n, "m": g.m, "k": k, "p_star": res.p_star, "s_star": res.s_star, "frac_opt": frac}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kecolor", description="Dynamic maximum k-edge coloring benchmarks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="replay a stream and emit per-update metrics")
    _add_run_flags(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="replay a stream asserting every invariant")
    _add_run_flags(p)
    p.add_argument("--corrupt-at", type=int, default=None, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a random update stream")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--p-delete", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--k", type=int, default=1, help="k written to the header")
    p.add_argument("--max-edges", type=int, default=None)
    p.add_argument("--bipartite", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="exact optima for the final graph of a stream")
    p.add_argument("--stream", required=True)
    p.add_argument("--k", type=int, default=None)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
