"""Command-line interface.

Exit codes: 0 success, 1 infeasible or invalid input/solution, 2 usage
error, 3 parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import re
import statistics
import sys
import time
from pathlib import Path

import numpy as np

from . import caterpillar, necklace, oracle, reductions
from .core import edges_to_partition, validate_cc, validate_cp
from .errors import ColourfulError, InvalidPartition, InvalidSolution, ParseError
from .formats import (
    cc_solution,
    cp_solution,
    parse_dimacs,
    parse_graph,
    parse_solution,
    to_dot,
    write_graph,
    write_solution,
    write_witness,
)
from .generators import random_caterpillar, random_necklace

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 3


class _Fail(Exception):
    def __init__(self, message: str, code: int = EXIT_INVALID):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Fail(f"cannot read {path}: {exc.strerror}", EXIT_USAGE) from exc


def _emit(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _dot_backbone(kind: str, backbone) -> list[int]:
    ids = [int(v) for v in backbone]
    return ids + ids[:1] if kind == "cycle" and ids else ids


def cmd_solve(args) -> int:
    gf = parse_graph(_read(args.input))
    g = gf.graph
    cls = args.cls
    if cls == "auto":
        if gf.hint is None:
            try:
                caterpillar.recognize(g)
                cls = "caterpillar"
            except ColourfulError:
                cls = "necklace"
        else:
            cls = "necklace"
    if cls == "caterpillar":
        cs = caterpillar.recognize(g)
        s = caterpillar.solve_with_structure(g, cs)
        kind, spine = cs.kind, cs.backbone
    else:
        ns = necklace.recognize_necklace(g, gf.hint)
        s = necklace.solve_cc_necklace(g, (ns.kind, ns.backbone.tolist()))
        kind, spine = ns.kind, ns.backbone
    sol = cc_solution(s) if args.problem == "cc" else cp_solution(edges_to_partition(g, s))
    _emit(write_solution(sol), args.out)
    if args.emit_dot:
        Path(args.emit_dot).write_text(to_dot(g, s, _dot_backbone(kind, spine)), encoding="utf-8")
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = parse_graph(_read(args.input)).graph
    if args.problem == "cc":
        budget = oracle.SearchBudget(max_depth=args.max_depth, node_limit=args.node_limit)
        s = oracle.bb_min_cc(g, budget)
        if s is None:
            raise _Fail(f"no solution with at most {args.max_depth} deletions")
        sol = cc_solution(s)
    else:
        parts = oracle.brute_min_cp(g)
        if args.max_depth is not None and len(parts) > args.max_depth + 1:
            raise _Fail(f"no partition with at most {args.max_depth + 1} parts")
        sol = cp_solution(parts)
    _emit(write_solution(sol), args.out)
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.kind == "necklace":
        g, hint = random_necklace(args.n, args.colours, args.seed)
    else:
        g = random_caterpillar(args.n, args.colours, args.seed, cyclic=args.kind == "cyclic")
        hint = None
    note = [f"generated kind={args.kind} n={args.n} colours={args.colours} seed={args.seed}"]
    _emit(write_graph(g, hint, note), args.out)
    return EXIT_OK


def cmd_reduce(args) -> int:
    f = parse_dimacs(_read(args.cnf))
    if args.family in reductions.TREE_FAMILIES:
        simplified = reductions.simplify_cnf(f)
        if simplified is None:
            raise _Fail("formula is unsatisfiable by unit propagation; no instance built")
        f = simplified
    inst = reductions.build_instance(f, args.family)
    note = [f"family {inst.family}", f"budget {inst.budget}"]
    hint = None
    if inst.backbone:
        hint = ("path", inst.backbone)
    _emit(write_graph(inst.graph, hint, note), args.out)
    if args.witness_out:
        Path(args.witness_out).write_text(write_witness(inst), encoding="utf-8")
    if args.emit_dot:
        Path(args.emit_dot).write_text(to_dot(inst.graph, (), inst.backbone), encoding="utf-8")
    if args.out not in (None, "-"):
        print(f"{inst.family}: {inst.graph.n} vertices, {inst.graph.m} edges, budget {inst.budget}")
    return EXIT_OK


def cmd_verify(args) -> int:
    g = parse_graph(_read(args.graph)).graph
    sol = parse_solution(_read(args.solution))
    budget = sol.size if args.budget is None else args.budget
    try:
        if sol.kind == "cc":
            ok = validate_cc(g, sol.edges, budget)
        else:
            ok = validate_cp(g, sol.parts, budget)
    except (InvalidSolution, InvalidPartition) as exc:
        raise _Fail(f"invalid: {exc}") from exc
    if not ok:
        raise _Fail(f"invalid: the {sol.kind} solution does not meet budget {budget} or is not colourful")
    print(f"valid {sol.kind} {sol.size}")
    return EXIT_OK


_POWER = re.compile(r"^2\^(\d+)$")


def _size(tok: str) -> int:
    m = _POWER.match(tok)
    return 1 << int(m.group(1)) if m else int(tok)


def parse_sizes(text: str, step: int = 1) -> list[int]:
    """``2^14..2^20`` (every ``step``-th power of two) or a comma list."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        a, b = _POWER.match(lo.strip()), _POWER.match(hi.strip())
        if not (a and b):
            raise ValueError(f"range must be written 2^a..2^b, got {text!r}")
        return [1 << k for k in range(int(a.group(1)), int(b.group(1)) + 1, step)]
    return [_size(t.strip()) for t in text.split(",") if t.strip()]


def bench_rows(sizes, seed: int, repeats: int = 1, density: float = 0.25):
    """Solve one random caterpillar per (size, repeat); yields CSV rows."""
    for n in sizes:
        for r in range(repeats):
            s = seed + r
            g = random_caterpillar(n, max(1, int(n * density)), s)
            t0 = time.perf_counter()
            sol = caterpillar.solve_cc(g)
            micros = int((time.perf_counter() - t0) * 1e6)
            yield {"n": n, "seed": s, "micros": micros, "edges_removed": len(sol)}


def cmd_bench(args) -> int:
    try:
        sizes = parse_sizes(args.sizes, args.step)
    except ValueError as exc:
        raise _Fail(str(exc), EXIT_USAGE) from exc
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=["n", "seed", "micros", "edges_removed"], lineterminator="\n")
    writer.writeheader()
    times: dict[int, list[int]] = {}
    for row in bench_rows(sizes, args.seed, args.repeats, args.density):
        writer.writerow(row)
        times.setdefault(row["n"], []).append(row["micros"])
    _emit(buf.getvalue(), args.csv)
    if args.csv not in (None, "-"):
        for n, ts in times.items():
            print(f"n={n} median {statistics.median(ts) / 1e3:.1f} ms")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="colourful", description="Colourful Components / Partition toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve CC or CP on a caterpillar or necklace")
    s.add_argument("--input", required=True)
    s.add_argument("--problem", choices=["cc", "cp"], required=True)
    s.add_argument("--class", dest="cls", choices=["caterpillar", "necklace", "auto"], default="auto")
    s.add_argument("--out")
    s.add_argument("--emit-dot")
    s.set_defaults(func=cmd_solve)

    o = sub.add_parser("oracle", help="exact brute-force reference solution")
    o.add_argument("--input", required=True)
    o.add_argument("--problem", choices=["cc", "cp"], required=True)
    o.add_argument("--max-depth", type=int)
    o.add_argument("--node-limit", type=int, default=5_000_000)
    o.add_argument("--out")
    o.set_defaults(func=cmd_oracle)

    gen = sub.add_parser("generate", help="random instance")
    gen.add_argument("--kind", choices=["caterpillar", "cyclic", "necklace"], required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--colours", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out")
    gen.set_defaults(func=cmd_generate)

    r = sub.add_parser("reduce", help="hardness instance from a DIMACS CNF")
    r.add_argument("--cnf", required=True)
    r.add_argument("--family", choices=list(reductions.TREE_FAMILIES + reductions.PLANAR_FAMILIES), required=True)
    r.add_argument("--out")
    r.add_argument("--witness-out")
    r.add_argument("--emit-dot")
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", help="check a solution file against a graph")
    v.add_argument("--graph", required=True)
    v.add_argument("--solution", required=True)
    v.add_argument("--budget", type=int)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="time the caterpillar solver on random instances")
    b.add_argument("--sizes", default="2^14..2^20")
    b.add_argument("--step", type=int, default=2, help="exponent step for 2^a..2^b ranges")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--repeats", type=int, default=1)
    b.add_argument("--density", type=float, default=0.25, help="colours per vertex")
    b.add_argument("--csv")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ColourfulError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
