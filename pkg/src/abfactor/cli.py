"""Command-line front end.

Exit status: 0 success, 1 violations found, 2 usage / input errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Iterator, Sequence

from .config import FuzzConfig
from .factor import (BRUTE_FORCE_CAP, deficiency, find_factor_flow, find_fractional_factor,
                     max_deficiency_bruteforce)
from .graph import (FamilySpec, Graph, construct_cho_graph, construct_family_member, construct_H,
                    min_degree, to_graph6)
from .spectral import DEFAULT_TOL, hsf_bound, spectral_radius
from .streams import connected_graph6_lines, open_stream, read_graph6
from . import verify as V

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int | None = None
    a: int | None = None
    b: int | None = None
    tol: float = DEFAULT_TOL
    seed: int | None = None
    fmt: str = "plain"
    cap: int = BRUTE_FORCE_CAP

    def __post_init__(self):
        if self.a is not None and self.a < 1:
            raise UsageError(f"need a >= 1, got {self.a}")
        if self.b is not None and (self.a is None or self.b <= self.a):
            raise UsageError(f"need b > a >= 1, got a={self.a}, b={self.b}")
        if self.cap < 1:
            raise UsageError("cap must be positive")
        if self.tol <= 0:
            raise UsageError("tolerance must be positive")


def _num(x: float) -> str:
    return f"{x:.12f}"


def _graphs(args) -> Iterator[tuple[str, Graph]]:
    if args.graph6:
        yield from ((t, g) for _, t, g in read_graph6([args.graph6]))
        return
    if not args.input:
        raise UsageError("give --graph6 or --input")
    stream = open_stream(args.input)
    try:
        for _, text, G in read_graph6(stream):
            yield text, G
    finally:
        if stream is not sys.stdin:
            stream.close()


def _need(args, *names) -> None:
    for name in names:
        if getattr(args, name, None) is None:
            raise UsageError(f"--{name} is required")


def _emit(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(V._round_floats(rows), indent=2, sort_keys=True) + "\n")
    elif fmt == "csv":
        if rows:
            writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({k: V._fmt(v) for k, v in row.items()})
    else:
        for row in rows:
            out.write(" ".join(_num(v) if isinstance(v, float) else str(v) for v in row.values()) + "\n")


# --- subcommands -------------------------------------------------------------

def cmd_construct(args, out) -> int:
    if args.family == "cho":
        _need(args, "n", "a")
        RunConfig("construct", args.n, args.a)
        graphs = [construct_cho_graph(args.n, args.a)]
    else:
        _need(args, "n", "a", "b")
        RunConfig("construct", args.n, args.a, args.b)
        if args.family == "H":
            graphs = [construct_H(args.n, args.a, args.b)]
        elif args.pairs is not None:
            pairs = tuple(tuple(int(x) for x in p.split(":")) for p in args.pairs.split(",") if p)
            graphs = [construct_family_member(FamilySpec(args.n, args.a, args.b, pairs))]
        else:
            graphs = V.enumerate_family(args.n, args.a, args.b)
    for G in graphs:
        if args.format == "json":
            out.write(json.dumps({"n": G.n, "m": G.edge_count, "edges": G.edges(),
                                  "graph6": to_graph6(G)}, sort_keys=True) + "\n")
        elif args.format == "plain":
            out.write(f"{G.n} {G.edge_count}\n")
            for u, v in G.edges():
                out.write(f"{u} {v}\n")
        else:
            out.write(to_graph6(G) + "\n")
    return EXIT_OK


def cmd_rho(args, out) -> int:
    RunConfig("rho", tol=args.tol)
    rows = []
    for text, G in _graphs(args):
        res = spectral_radius(G, tol=args.tol)
        row = {"graph6": text, "rho": res.rho} if args.format != "plain" else {"rho": res.rho}
        if args.format != "plain":
            row.update(iterations=res.iterations, residual=res.residual,
                       perron=[float(x) for x in res.perron] if args.format == "json" else None)
            if args.format == "csv":
                row.pop("perron")
        rows.append(row)
    _emit(rows, args.format, out)
    return EXIT_OK


def cmd_factor(args, out) -> int:
    _need(args, "a", "b")
    RunConfig("factor", a=args.a, b=args.b, cap=args.cap)
    rows = []
    for text, G in _graphs(args):
        res = find_factor_flow(G, args.a, args.b, args.cap)
        row = {"graph6": text, "exists": res.exists}
        if args.format == "json":
            row["factor_edges"] = [list(e) for e in res.factor_edges] if res.factor_edges else None
            row["witness"] = res.witness.to_dict() if res.witness else None
            row["witness_method"] = res.witness_method
        elif res.witness:
            row["deficiency"] = res.witness.deficiency
        rows.append(row)
    _emit(rows, args.format, out)
    return EXIT_OK


def cmd_fractional(args, out) -> int:
    _need(args, "a", "b")
    RunConfig("fractional", a=args.a, b=args.b, cap=args.cap)
    rows = []
    for text, G in _graphs(args):
        res = find_fractional_factor(G, args.a, args.b, args.cap)
        row = {"graph6": text, "exists": res.exists}
        if args.format == "json":
            row["h"] = ({f"{u}-{v}": str(val) for (u, v), val in res.factor.h.items()}
                        if res.factor else None)
            row["witness"] = res.witness.to_dict() if res.witness else None
        rows.append(row)
    _emit(rows, args.format, out)
    return EXIT_OK


def cmd_deficiency(args, out) -> int:
    _need(args, "a", "b")
    RunConfig("deficiency", a=args.a, b=args.b, cap=args.cap)
    rows = []
    for text, G in _graphs(args):
        if args.S is not None:
            S = [int(x) for x in args.S.split(",") if x != ""]
            w = deficiency(G, args.a, args.b, S)
        else:
            w = max_deficiency_bruteforce(G, args.a, args.b, args.cap)
        row = {"graph6": text, "deficiency": w.deficiency}
        if args.format != "plain":
            row.update(S=sorted(w.S), W=sorted(w.W))
        rows.append(row)
    _emit(rows, args.format, out)
    return EXIT_OK


def _stream_lines(args) -> Iterator[str]:
    stream = open_stream(args.input)
    try:
        yield from stream
    finally:
        if stream is not sys.stdin:
            stream.close()


def cmd_verify(args, out) -> int:
    cfg = FuzzConfig.load(args.config)
    seed = args.seed if args.seed is not None else cfg.seed
    _need(args, "n", "a", "b")
    RunConfig("verify", args.n, args.a, args.b, seed=seed, fmt=args.format, cap=args.cap)
    n, a, b = args.n, args.a, args.b
    claim = args.claim
    if claim == "interval":
        report = V.verify_rho_interval(n, a, b, cfg.agree_tol)
    elif claim == "maximizer":
        report = V.verify_family_maximizer(n, a, b, cfg.rho_margin, cfg.agree_tol)
    elif claim == "sharpness":
        report = V.verify_sharpness(n, a, b, args.cap)
    elif claim == "theorem":
        if args.input:
            lines = _stream_lines(args)
        elif n >= V.rho_threshold(a, b):
            samples = args.samples or cfg.perturbation_samples
            lines = V.perturbation_stream(n, a, b, samples, seed)
        else:
            lines = connected_graph6_lines(n)
        report = V.verify_theorem_stream(a, b, lines, n, cfg.rho_margin, args.cap)
    elif claim == "edge":
        lines = _stream_lines(args) if args.input else V.edge_theorem_samples(
            n, a, b, args.samples or cfg.edge_samples, seed)
        report = V.verify_edge_theorem(a, b, lines, n, args.cap)
    else:
        report = V.kelmans_hillclimb(n, a, b, seed, cfg.hillclimb_max_steps, args.cap, cfg.rho_margin)
    if args.format == "csv":
        out.write(report.to_csv())
    else:
        out.write(report.to_json(timing=args.timing) + "\n")
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_sweep(args, out) -> int:
    """One CSV row per stream graph with the quantities the results compare."""
    _need(args, "a", "b")
    RunConfig("sweep", args.n, args.a, args.b, cap=args.cap)
    if args.input:
        lines = _stream_lines(args)
    else:
        _need(args, "n")
        lines = connected_graph6_lines(args.n)
    a, b = args.a, args.b
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["graph6", "n", "m", "delta", "rho", "hsf_bound", "edge_bound", "factor", "deficiency"])
    for _, text, G in read_graph6(lines):
        delta = min_degree(G)
        rho = spectral_radius(G).rho
        bound = hsf_bound(G.n, G.edge_count, delta) if 1 <= delta <= G.n - 1 else None
        res = find_factor_flow(G, a, b, args.cap)
        defic = (max_deficiency_bruteforce(G, a, b, args.cap).deficiency if G.n <= args.cap
                 else (res.witness.deficiency if res.witness else None))
        writer.writerow([text, G.n, G.edge_count, delta, _num(rho),
                         "" if bound is None else _num(bound),
                         V.edge_bound(G.n, a, b) if G.n - b - 1 >= 2 else "",
                         int(res.exists), "" if defic is None else defic])
    return EXIT_OK


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="abfactor", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def params(p, need_b=True):
        p.add_argument("--n", type=int)
        p.add_argument("--a", type=int)
        if need_b:
            p.add_argument("--b", type=int)

    def source(p):
        p.add_argument("--graph6", help="a single graph6 string")
        p.add_argument("--input", help="graph6 file, one graph per line ('-' for stdin)")

    def fmt(p, choices=("plain", "json", "csv"), default="plain"):
        p.add_argument("--format", choices=choices, default=default)

    p = sub.add_parser("construct", help="build H, a family member, or K_{a-1} join (K_1 + K_{n-a}) (cho)")
    p.add_argument("family", choices=["H", "family", "cho"])
    params(p)
    p.add_argument("--pairs", help="attachment pairs for 'family', e.g. 0:0,1:3")
    fmt(p, ("graph6", "json", "plain"), "graph6")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("rho", help="spectral radius")
    source(p)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    fmt(p)
    p.set_defaults(func=cmd_rho)

    for name, func, text in (("factor", cmd_factor, "decide [a,b]-factor existence"),
                             ("fractional", cmd_fractional, "decide fractional [a,b]-factor existence"),
                             ("deficiency", cmd_deficiency, "deficiency of S, or its maximum")):
        p = sub.add_parser(name, help=text)
        source(p)
        params(p)
        p.add_argument("--cap", type=int, default=BRUTE_FORCE_CAP)
        if name == "deficiency":
            p.add_argument("--S", help="comma separated vertex set; omit to maximise")
        fmt(p)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="run one of the verification checks")
    p.add_argument("claim", choices=["interval", "maximizer", "sharpness", "theorem", "edge", "hillclimb"])
    params(p)
    p.add_argument("--input", help="graph6 stream for theorem/edge ('-' for stdin)")
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--cap", type=int, default=BRUTE_FORCE_CAP)
    p.add_argument("--config", help="fuzz config JSON (default configs/fuzz.json)")
    p.add_argument("--timing", action="store_true", help="include elapsed time in the report")
    fmt(p, ("json", "csv"), "json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="CSV summary over a graph6 stream (default: all connected graphs on n)")
    params(p)
    p.add_argument("--input")
    p.add_argument("--cap", type=int, default=BRUTE_FORCE_CAP)
    p.set_defaults(func=cmd_sweep)
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        buf = io.StringIO()
        status = args.func(args, buf)
        out.write(buf.getvalue())
        return status
    except (UsageError, ValueError, OSError) as exc:
        print(f"abfactor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
