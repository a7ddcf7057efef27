"""Command-line front end.

    hyperlag gen complete --n 10 --r 3 -o k10.hg
    hyperlag solve k10.hg --starts 10 --seed 0 --trace trace.csv
    hyperlag eval k10.hg x.txt
    echo "0.5 0.2 -0.1" | hyperlag project

``solve`` prints one JSON object on stdout and a short summary on stderr.
Exit codes: 0 success, 2 parse/validation error, 3 solver failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time

import numpy as np

from . import __version__
from ._accel import backend
from .hypergraph import (
    HypergraphError,
    format_hg,
    gen_complete,
    gen_frankl_star,
    gen_icosphere,
    gen_random,
    read_hg,
    toy_hypergraph,
)
from .simplex import NonFiniteInput, project_simplex
from .solver import ConfigError, LineSearchFailed, SolverConfig, Status, criticality_residual, multi_start
from .tensor import DimensionMismatch, weight_value

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SOLVER = 3

TRACE_HEADER = ["c", "f", "g_norm", "alpha", "rho", "backtracks"]

log = logging.getLogger("hyperlag")


class InputError(ValueError):
    pass


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _parse_floats(text: str, what: str) -> np.ndarray:
    try:
        vals = [float(tok) for tok in text.split()]
    except ValueError as exc:
        raise InputError(f"{what}: {exc}") from None
    if not vals:
        raise InputError(f"{what}: no numbers found")
    return np.array(vals)


def cmd_gen(args) -> int:
    if args.kind == "complete":
        G = gen_complete(args.n, args.r)
        note = f"complete {args.r}-graph K_{args.n}"
    elif args.kind == "icosphere":
        G = gen_icosphere(args.level)
        note = f"icosphere level {args.level}"
    elif args.kind == "frankl-star":
        G = gen_frankl_star(args.t)
        note = f"Frankl-Furedi F* with t={args.t}"
    elif args.kind == "random":
        G = gen_random(args.n, args.r, args.m, args.seed)
        note = f"random {args.r}-graph, n={args.n} m={args.m} seed={args.seed}"
    else:
        G = toy_hypergraph()
        note = "toy 3-graph: three K_4^3 cliques plus {4,8,12}"
    text = format_hg(G, comment=f"hyperlag {__version__}: {note}")
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        log.info("wrote %s (r=%d n=%d m=%d)", args.out, G.r, G.n, G.m)
    return EXIT_OK


def config_from_args(args) -> SolverConfig:
    return SolverConfig(
        eta=args.eta,
        beta=args.beta,
        alpha0=args.alpha0,
        alpha_min=args.alpha_min,
        alpha_max=args.alpha_max,
        tol_residual=args.tol,
        tol_fstall=args.ftol,
        max_iters=args.max_iter,
        max_backtracks=args.max_backtracks,
        n_starts=args.starts,
        seed=args.seed,
    )


def write_trace(path, records) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(TRACE_HEADER)
        for rec in records:
            w.writerow([rec.c, _fmt(rec.f), _fmt(rec.g_norm), _fmt(rec.alpha), _fmt(rec.rho), rec.backtracks])


def build_report(G, cfg, best, runs, elapsed_ms, sparse=False) -> dict:
    x = best.x_final
    if sparse:
        keep = np.flatnonzero(x >= 1e-12)
        x_hat = {str(int(i) + 1): float(x[i]) for i in keep}
    else:
        x_hat = x.tolist()
    return {
        "lambda_hat": float(best.lambda_hat),
        "x_hat": x_hat,
        "residual": float(best.residual),
        "status": str(best.status),
        "iterations": int(best.iterations),
        "n_starts": len(runs),
        "best_start": int(best.start_index),
        "elapsed_ms": elapsed_ms,
        "config": cfg.as_dict(),
        "hypergraph": {"r": G.r, "n": G.n, "m": G.m},
        "backend": backend(),
    }


def cmd_solve(args) -> int:
    G = read_hg(args.path)
    cfg = config_from_args(args)
    t0 = time.perf_counter()
    try:
        best, runs = multi_start(G, cfg, trace=args.trace is not None)
    except LineSearchFailed as exc:
        print(f"hyperlag: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    elapsed_ms = (time.perf_counter() - t0) * 1e3
    if args.trace is not None:
        write_trace(args.trace, best.trace)
    report = build_report(G, cfg, best, runs, elapsed_ms, sparse=args.sparse)
    json.dump(report, sys.stdout)
    sys.stdout.write("\n")
    print(
        f"lambda_hat = {best.lambda_hat:.12g}  residual = {best.residual:.3e}  "
        f"status = {best.status}  iterations = {best.iterations}  "
        f"best start {best.start_index + 1}/{len(runs)}  ({elapsed_ms:.1f} ms)",
        file=sys.stderr,
    )
    if best.status is Status.MAX_ITERS:
        print("hyperlag: warning: iteration cap reached before convergence", file=sys.stderr)
    return EXIT_OK


def cmd_eval(args) -> int:
    G = read_hg(args.graph)
    with open(args.x, encoding="utf-8") as fh:
        x = _parse_floats(fh.read(), args.x)
    if x.shape[0] != G.n:
        raise DimensionMismatch(f"{args.x} has {x.shape[0]} entries, graph has n={G.n}")
    if not np.isfinite(x).all():
        raise NonFiniteInput(f"{args.x} contains NaN or inf")
    if x.min() < -1e-9 or abs(x.sum() - 1.0) > 1e-9:
        print("hyperlag: warning: x is not a legal weighting; projecting onto the simplex first", file=sys.stderr)
        x = project_simplex(x)
    print(f"value {_fmt(weight_value(G, x))}")
    print(f"residual {_fmt(criticality_residual(G, x))}")
    return EXIT_OK


def cmd_project(args) -> int:
    a = _parse_floats(sys.stdin.read(), "stdin")
    x = project_simplex(a)
    print(" ".join(_fmt(v) for v in x))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperlag", description="Lagrangians of uniform hypergraphs")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a generated hypergraph as .hg")
    kinds = g.add_subparsers(dest="kind", required=True)
    k = kinds.add_parser("complete", help="complete r-graph K_n^r")
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--r", type=int, default=3)
    k = kinds.add_parser("icosphere", help="subdivided icosahedron faces")
    k.add_argument("--level", type=int, required=True)
    k = kinds.add_parser("frankl-star", help="Frankl-Furedi F* 3-graph")
    k.add_argument("--t", type=int, required=True)
    k = kinds.add_parser("random", help="uniformly random r-graph")
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--r", type=int, default=3)
    k.add_argument("--m", type=int, required=True)
    k.add_argument("--seed", type=int, default=0)
    kinds.add_parser("toy", help="the 12-vertex toy 3-graph")
    for kp in kinds.choices.values():
        kp.add_argument("-o", "--out", default=None, help="output path (default stdout)")
    g.set_defaults(func=cmd_gen)

    d = SolverConfig()
    s = sub.add_parser("solve", help="compute the Lagrangian of a .hg file")
    s.add_argument("path")
    s.add_argument("--eta", type=float, default=d.eta)
    s.add_argument("--beta", type=float, default=d.beta)
    s.add_argument("--alpha0", type=float, default=d.alpha0)
    s.add_argument("--alpha-min", type=float, default=d.alpha_min)
    s.add_argument("--alpha-max", type=float, default=d.alpha_max)
    s.add_argument("--tol", type=float, default=d.tol_residual, help="residual tolerance")
    s.add_argument("--ftol", type=float, default=d.tol_fstall, help="tolerance on |f_c - f_{c-4}|")
    s.add_argument("--max-iter", type=int, default=d.max_iters)
    s.add_argument("--max-backtracks", type=int, default=d.max_backtracks)
    s.add_argument("--starts", type=int, default=d.n_starts)
    s.add_argument("--seed", type=int, default=d.seed)
    s.add_argument("--trace", metavar="PATH", default=None, help="write the best run's iterations as CSV")
    s.add_argument("--sparse", action="store_true", help="report only x_hat entries >= 1e-12")
    s.set_defaults(func=cmd_solve)

    e = sub.add_parser("eval", help="print f(x) and the criticality residual")
    e.add_argument("graph")
    e.add_argument("x", help="file of n whitespace-separated weights")
    e.set_defaults(func=cmd_eval)

    pr = sub.add_parser("project", help="project a vector read from stdin onto the simplex")
    pr.set_defaults(func=cmd_project)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except (HypergraphError, ConfigError, InputError, DimensionMismatch, NonFiniteInput) as exc:
        print(f"hyperlag: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"hyperlag: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
