"""Executable checks of the spectral [a,b]-factor results.

Every check returns a :class:`VerificationReport`.  Runs at parameters below a
result's size hypothesis are allowed; they are labelled ``in_hypothesis=False``
and anything contradicting the claim is filed under ``findings`` instead of
``violations``.
"""
from __future__ import annotations

import csv
import io
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations, permutations
from math import comb
from typing import Callable, Iterable, Iterator

from .config import worker_count
from .factor import (BRUTE_FORCE_CAP, deficiency, find_factor_flow, find_fractional_factor,
                     has_factor, max_deficiency_bruteforce)
from .graph import (FamilySpec, Graph, construct_family_member, construct_H, from_graph6,
                    h_spec, is_connected, min_degree, to_graph6)
from .iso import is_isomorphic
from .spectral import (coarsest_equitable_partition, hsf_bound, quotient_matrix,
                       quotient_spectral_radius, spectral_radius)
from .streams import read_graph6

CSV_COLUMNS = ["graph6", "n", "m", "delta", "rho", "rho_quotient", "rho_H", "hsf_bound",
               "edge_bound", "factor", "fractional", "deficiency", "status"]


@dataclass
class VerificationReport:
    claim: str
    params: dict
    in_hypothesis: bool = True
    checked: int = 0
    skipped: int = 0
    vacuous: int = 0
    violations: list[dict] = field(default_factory=list)
    findings: list[dict] = field(default_factory=list)
    evidence: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def flag(self, record: dict) -> None:
        (self.violations if self.in_hypothesis else self.findings).append(record)

    def to_dict(self, timing: bool = True) -> dict:
        data = asdict(self)
        if not timing:
            data.pop("elapsed")
        return _round_floats(data)

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in self.evidence:
            writer.writerow({k: _fmt(v) for k, v in row.items()})
        return buf.getvalue()


def _round_floats(obj):
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _fmt(value):
    if isinstance(value, float):
        return f"{value:.12f}"
    if isinstance(value, bool):
        return int(value)
    return "" if value is None else value


def rho_threshold(a: int, b: int) -> int:
    return 2 * (a + b + 2) * (b + 2)


def edge_threshold_ok(n: int, a: int, b: int) -> bool:
    # n >= 4a + 5b/2 + 6, kept in integers
    return 2 * n >= 8 * a + 5 * b + 12


def edge_bound(n: int, a: int, b: int) -> int:
    return comb(n - b - 1, 2) + a * b + 2 * a


def _map(fn: Callable, items: Iterable) -> Iterator:
    workers = worker_count()
    if workers == 1:
        return map(fn, items)
    pool = ProcessPoolExecutor(workers)
    return pool.map(fn, items, chunksize=64)


# --- family enumeration ----------------------------------------------------

def _pattern_key(pairs: tuple[tuple[int, int], ...]) -> tuple:
    ws = sorted({w for w, _ in pairs})
    cs = sorted({c for _, c in pairs})
    best = None
    for pw in permutations(range(len(ws))):
        wmap = dict(zip(ws, pw))
        for pc in permutations(range(len(cs))):
            cmap = dict(zip(cs, pc))
            key = tuple(sorted((wmap[w], cmap[c]) for w, c in pairs))
            if best is None or key < best:
                best = key
    return best


def family_patterns(n: int, a: int, b: int) -> list[FamilySpec]:
    """Attachment patterns up to permuting independents and clique vertices."""
    clique = n - a - b - 1
    k = a - 1
    if k > (b + 1) * clique:
        raise ValueError("a-1 exceeds the number of possible attachment pairs")
    grid = [(w, c) for w in range(min(b + 1, max(k, 1))) for c in range(min(clique, max(k, 1)))]
    seen: dict[tuple, FamilySpec] = {}
    for pairs in combinations(grid, k):
        key = _pattern_key(pairs)
        if key not in seen:
            seen[key] = FamilySpec(n, a, b, key)
    h_key = _pattern_key(h_spec(n, a, b).attachment)
    ordered = [seen.pop(h_key)] + [seen[key] for key in sorted(seen)]
    return ordered


def enumerate_family(n: int, a: int, b: int, cap: int = 256, with_specs: bool = False):
    """Non-isomorphic members of the family; H_n^{a,b} comes first."""
    if n > cap or a > 5:
        raise ValueError(f"family enumeration capped at n <= {cap}, a <= 5")
    members: list[tuple[FamilySpec, Graph]] = []
    for spec in family_patterns(n, a, b):
        G = construct_family_member(spec)
        if not any(is_isomorphic(G, other) for _, other in members):
            members.append((spec, G))
    return members if with_specs else [G for _, G in members]


def _two_route_rho(G: Graph) -> tuple[float, float, int]:
    rho = spectral_radius(G).rho
    cells = coarsest_equitable_partition(G)
    quot = quotient_spectral_radius(quotient_matrix(G, cells))
    return rho, quot, len(cells)


def verify_rho_interval(n: int, a: int, b: int, agree_tol: float = 1e-9) -> VerificationReport:
    start = time.perf_counter()
    report = VerificationReport("lem-rho-interval", {"n": n, "a": a, "b": b},
                                in_hypothesis=n >= rho_threshold(a, b))
    lo, hi = n - b - 2, n - b - 1
    for spec, G in enumerate_family(n, a, b, with_specs=True):
        rho, quot, k = _two_route_rho(G)
        report.checked += 1
        row = {"graph6": to_graph6(G), "n": n, "m": G.edge_count, "delta": min_degree(G),
               "rho": rho, "rho_quotient": quot, "cells": k, "attachment": [list(p) for p in spec.attachment],
               "margin_low": rho - lo, "margin_high": hi - rho}
        report.evidence.append(row)
        instance = {"spec": asdict(spec)}
        if abs(rho - quot) > agree_tol:
            report.violations.append({"check": "backend-agreement", **instance, "rho": rho, "rho_quotient": quot})
        if not lo < rho < hi:
            report.flag({"check": "interval", **instance, "rho": rho, "interval": [lo, hi]})
    report.summary = {"interval": [lo, hi]}
    report.elapsed = time.perf_counter() - start
    return report


def verify_family_maximizer(n: int, a: int, b: int, margin: float = 1e-10,
                            agree_tol: float = 1e-9) -> VerificationReport:
    start = time.perf_counter()
    report = VerificationReport("lem-family-maximizer", {"n": n, "a": a, "b": b},
                                in_hypothesis=n >= rho_threshold(a, b))
    members = enumerate_family(n, a, b, with_specs=True)
    H = members[0][1]
    rho_H, quot_H, _ = _two_route_rho(H)
    for spec, G in members:
        rho, quot, _ = _two_route_rho(G)
        is_H = is_isomorphic(G, H)
        report.checked += 1
        report.evidence.append({"graph6": to_graph6(G), "n": n, "m": G.edge_count, "rho": rho,
                                "rho_quotient": quot, "rho_H": rho_H, "is_H": is_H,
                                "gap": rho_H - rho, "attachment": [list(p) for p in spec.attachment]})
        instance = {"spec": asdict(spec)}
        if abs(rho - quot) > agree_tol:
            report.violations.append({"check": "backend-agreement", **instance, "rho": rho, "rho_quotient": quot})
        if not is_H and not (rho < rho_H - margin and quot < quot_H - margin):
            report.flag({"check": "strict-maximum", **instance, "rho": rho, "rho_H": rho_H})
    if len(members) == 1:
        report.vacuous = 1
    report.summary = {"members": len(members), "rho_H": rho_H}
    report.elapsed = time.perf_counter() - start
    return report


def verify_sharpness(n: int, a: int, b: int, cap: int = BRUTE_FORCE_CAP) -> VerificationReport:
    start = time.perf_counter()
    report = VerificationReport("sharpness", {"n": n, "a": a, "b": b},
                                in_hypothesis=n >= rho_threshold(a, b))
    expected_edges = comb(n - b - 1, 2) + a * b + 2 * a - 1
    for spec, G in enumerate_family(n, a, b, with_specs=True):
        report.checked += 1
        instance = {"spec": asdict(spec)}
        flow = find_factor_flow(G, a, b, cap)
        fractional = find_fractional_factor(G, a, b, cap)
        join_witness = deficiency(G, a, b, range(a))
        row = {"graph6": to_graph6(G), "n": n, "m": G.edge_count, "delta": min_degree(G),
               "factor": flow.exists, "fractional": fractional.exists,
               "deficiency": join_witness.deficiency, "edge_bound": expected_edges + 1,
               "attachment": [list(p) for p in spec.attachment],
               "witness": flow.witness.to_dict() if flow.witness else None,
               "witness_method": flow.witness_method}
        if n <= cap:
            best = max_deficiency_bruteforce(G, a, b, cap)
            row["max_deficiency"] = best.deficiency
            row["max_deficiency_S"] = sorted(best.S)
            if (best.deficiency <= 0) != flow.exists:
                report.violations.append({"check": "method-agreement", **instance})
        report.evidence.append(row)
        if flow.exists:
            report.violations.append({"check": "no-factor", **instance})
        if fractional.exists:
            report.violations.append({"check": "no-fractional-factor", **instance})
        if G.edge_count != expected_edges:
            report.violations.append({"check": "edge-count", **instance, "m": G.edge_count,
                                      "expected": expected_edges})
        if min_degree(G) != a:
            report.violations.append({"check": "min-degree", **instance, "delta": min_degree(G)})
        if not is_connected(G):
            report.violations.append({"check": "connected", **instance})
        if join_witness.deficiency < 1:
            report.violations.append({"check": "join-witness", **instance,
                                      "deficiency": join_witness.deficiency})
    report.elapsed = time.perf_counter() - start
    return report


# --- spectral condition over graph streams ------------------------------

def _theorem_instance(args) -> dict:
    text, n, a, b, rho_H, margin, cap = args
    G = from_graph6(text)
    if G.n != n:
        raise ValueError(f"stream graph has {G.n} vertices, expected {n}")
    if not is_connected(G) or min_degree(G) < a:
        return {"status": "skipped"}
    rho = spectral_radius(G).rho
    row = {"graph6": text, "n": n, "m": G.edge_count, "delta": min_degree(G), "rho": rho, "rho_H": rho_H}
    if rho < rho_H - margin:
        row["status"] = "vacuous"
        return row
    row["borderline"] = abs(rho - rho_H) <= margin
    row["factor"] = has_factor(G, a, b, cap)
    row["is_H"] = (not row["factor"]) and is_isomorphic(G, construct_H(n, a, b))
    row["status"] = "pass" if row["factor"] or row["is_H"] else "violation"
    return row


def verify_theorem_stream(a: int, b: int, stream: Iterable[str], n: int,
                          margin: float = 1e-10, cap: int = BRUTE_FORCE_CAP,
                          claim: str = "thm-spectral") -> VerificationReport:
    """If rho(G) >= rho(H) then G has a factor or G is H, over a graph6 stream."""
    start = time.perf_counter()
    report = VerificationReport(claim, {"n": n, "a": a, "b": b},
                                in_hypothesis=n >= rho_threshold(a, b))
    rho_H = spectral_radius(construct_H(n, a, b)).rho
    texts = (text for _, text, _ in read_graph6(stream))
    borderline = 0
    for row in _map(_theorem_instance, ((t, n, a, b, rho_H, margin, cap) for t in texts)):
        status = row["status"]
        if status == "skipped":
            report.skipped += 1
            continue
        if status == "vacuous":
            report.vacuous += 1
            continue
        report.checked += 1
        borderline += row["borderline"]
        report.evidence.append(row)
        if status == "violation":
            report.flag({"check": "thm-spectral", "graph6": row["graph6"], "rho": row["rho"], "rho_H": rho_H})
    report.summary = {"rho_H": rho_H, "borderline": borderline}
    report.elapsed = time.perf_counter() - start
    return report


def perturbation_stream(n: int, a: int, b: int, samples: int, seed: int) -> list[str]:
    """H_n^{a,b} plus one uniformly random missing edge, ``samples`` times."""
    H = construct_H(n, a, b)
    missing = [(u, v) for u, v in combinations(range(n), 2) if not H.has_edge(u, v)]
    rng = random.Random(seed)
    return [to_graph6(H.add_edges([rng.choice(missing)])) for _ in range(samples)]


def _oracle_instance(args) -> dict:
    text, windows, cap = args
    G = from_graph6(text)
    delta = min_degree(G)
    row: dict = {"graph6": text, "n": G.n, "m": G.edge_count, "delta": delta, "windows": []}
    for a, b in windows:
        if delta < a:
            continue
        flow = find_factor_flow(G, a, b, cap).exists
        best = max_deficiency_bruteforce(G, a, b, cap).deficiency
        row["windows"].append((a, b, flow, best))
    if G.n >= 2 and delta >= 1:
        row["rho"] = spectral_radius(G).rho
        row["hsf_bound"] = hsf_bound(G.n, G.edge_count, delta)
    return row


def verify_oracle_stream(stream: Iterable[str], n: int, windows: Iterable[tuple[int, int]],
                         cap: int = BRUTE_FORCE_CAP, tol: float = 1e-9) -> VerificationReport:
    """Flow decision against the brute-force deficiency maximum, and rho
    against the degree/size bound, on every graph of a stream.

    Only failing rows are kept as evidence; the stream may be large.
    """
    start = time.perf_counter()
    windows = [tuple(w) for w in windows]
    report = VerificationReport("oracle-equivalence", {"n": n, "windows": [list(w) for w in windows]})
    per_window = {f"{a},{b}": {"checked": 0, "factor": 0, "disagreements": 0} for a, b in windows}
    bound_checked, worst_slack = 0, float("-inf")
    for row in _map(_oracle_instance, ((t, windows, cap) for _, t, _ in read_graph6(stream))):
        if row["n"] != n:
            raise ValueError(f"stream graph has {row['n']} vertices, expected {n}")
        report.checked += 1
        for a, b, flow, best in row["windows"]:
            stats = per_window[f"{a},{b}"]
            stats["checked"] += 1
            stats["factor"] += flow
            if flow != (best <= 0):
                stats["disagreements"] += 1
                report.violations.append({"check": "flow-vs-bruteforce", "graph6": row["graph6"],
                                          "a": a, "b": b, "flow": flow, "max_deficiency": best})
        if "rho" in row:
            bound_checked += 1
            slack = row["rho"] - row["hsf_bound"]
            worst_slack = max(worst_slack, slack)
            if slack > tol:
                report.violations.append({"check": "hsf-bound", "graph6": row["graph6"],
                                          "rho": row["rho"], "hsf_bound": row["hsf_bound"]})
    report.summary = {"windows": per_window, "bound_checked": bound_checked,
                      "max_rho_minus_bound": worst_slack if bound_checked else None}
    report.elapsed = time.perf_counter() - start
    return report


# --- size theorem ------------------------------------------------------------

def edge_theorem_samples(n: int, a: int, b: int, samples: int, seed: int) -> list[str]:
    """Random connected graphs with min degree >= a and at least the edge bound,
    obtained by deleting a uniform number of random edges from K_n."""
    bound = edge_bound(n, a, b)
    slack = comb(n, 2) - bound
    if slack < 0:
        raise ValueError("K_n is below the edge bound")
    rng = random.Random(seed)
    out = []
    for _ in range(samples):
        rows = [((1 << n) - 1) & ~(1 << v) for v in range(n)]
        edges = [(u, v) for u, v in combinations(range(n), 2)]
        rng.shuffle(edges)
        target = rng.randint(0, slack)
        deleted = 0
        for u, v in edges:
            if deleted == target:
                break
            if rows[u].bit_count() <= a or rows[v].bit_count() <= a:
                continue
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
            if not is_connected(Graph(n, tuple(rows))):
                rows[u] |= 1 << v
                rows[v] |= 1 << u
                continue
            deleted += 1
        G = Graph(n, tuple(rows))
        out.append(to_graph6(G))
    return out


def _edge_instance(args) -> dict:
    text, n, a, b, bound, cap = args
    G = from_graph6(text)
    if G.n != n:
        raise ValueError(f"stream graph has {G.n} vertices, expected {n}")
    if not is_connected(G) or min_degree(G) < a:
        return {"status": "skipped"}
    row = {"graph6": text, "n": n, "m": G.edge_count, "delta": min_degree(G), "edge_bound": bound}
    if G.edge_count < bound:
        row["status"] = "vacuous"
        return row
    row["factor"] = has_factor(G, a, b, cap)
    row["status"] = "pass" if row["factor"] else "violation"
    return row


def verify_edge_theorem(a: int, b: int, stream: Iterable[str], n: int,
                        cap: int = BRUTE_FORCE_CAP) -> VerificationReport:
    start = time.perf_counter()
    report = VerificationReport("thm-edge", {"n": n, "a": a, "b": b},
                                in_hypothesis=edge_threshold_ok(n, a, b))
    bound = edge_bound(n, a, b)
    texts = (text for _, text, _ in read_graph6(stream))
    for row in _map(_edge_instance, ((t, n, a, b, bound, cap) for t in texts)):
        if row["status"] == "skipped":
            report.skipped += 1
        elif row["status"] == "vacuous":
            report.vacuous += 1
        else:
            report.checked += 1
            report.evidence.append(row)
            if row["status"] == "violation":
                report.flag({"check": "thm-edge", "graph6": row["graph6"], "m": row["m"]})
    # tightness: family members sit one edge below the bound with no factor
    tight = []
    if n - a - b - 1 >= a - 1:
        H = construct_H(n, a, b)
        integral = find_factor_flow(H, a, b, cap).exists
        fractional = find_fractional_factor(H, a, b, cap).exists
        tight = {"graph6": to_graph6(H), "m": H.edge_count, "edge_bound": bound,
                 "factor": integral, "fractional": fractional}
        if H.edge_count != bound - 1 or integral or fractional:
            report.violations.append({"check": "tightness", **tight})
    report.summary = {"edge_bound": bound, "tightness": tight}
    report.elapsed = time.perf_counter() - start
    return report


# --- Kelmans shift property ---------------------------------------------------

def random_connected_graph(n: int, rng: random.Random) -> Graph:
    """Random spanning tree plus independent edges at a random density."""
    order = list(range(n))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, n)}
    p = rng.uniform(0.05, 0.6)
    edges |= {(u, v) for u, v in combinations(range(n), 2) if rng.random() < p}
    return Graph.from_edges(n, edges)


def verify_kelmans_property(graphs: int, max_n: int, seed: int, subsets_per_graph: int = 3,
                            margin: float = 1e-10) -> VerificationReport:
    """Every shift from v to u with x(u) >= x(v) raises rho by more than ``margin``.

    Per graph: each ordered pair with a nonempty movable set, shifting all of
    it, plus ``subsets_per_graph`` random proper subsets.
    """
    from .spectral import kelmans_shift

    start = time.perf_counter()
    report = VerificationReport("kelmans-shift", {"graphs": graphs, "max_n": max_n, "seed": seed})
    rng = random.Random(seed)
    smallest = float("inf")
    for _ in range(graphs):
        G = random_connected_graph(rng.randint(3, max_n), rng)
        res = spectral_radius(G)
        x = res.perron
        moves = []
        for u in range(G.n):
            for v in range(G.n):
                if u == v or x[u] < x[v]:
                    continue
                targets = [t for t in G.neighbors(v) if t != u and not G.has_edge(u, t)]
                if targets:
                    moves.append((u, v, targets))
        splittable = [m for m in moves if len(m[2]) > 1]
        for _ in range(subsets_per_graph if splittable else 0):
            u, v, targets = rng.choice(splittable)
            moves.append((u, v, sorted(rng.sample(targets, rng.randint(1, len(targets) - 1)))))
        for u, v, targets in moves:
            gain = spectral_radius(kelmans_shift(G, u, v, targets)).rho - res.rho
            report.checked += 1
            smallest = min(smallest, gain)
            if gain <= margin:
                report.violations.append({"check": "shift-increase", "graph6": to_graph6(G),
                                          "u": u, "v": v, "targets": targets, "gain": gain})
    report.summary = {"min_gain": smallest if report.checked else None}
    report.elapsed = time.perf_counter() - start
    return report


# --- Kelmans hill climb ------------------------------------------------------

def random_deficient_graph(n: int, a: int, b: int, rng: random.Random) -> Graph:
    """Random connected graph with min degree >= a and positive deficiency at
    a planted S: W independent, joined to all of S, a-|S| edges into U each."""
    for _ in range(1000):
        s = rng.randint(1, a)
        t = b + 1 + rng.randint(0, 1)
        u_count = n - s - t
        if u_count < a + 1:
            continue
        S = list(range(s))
        W = list(range(s, s + t))
        U = list(range(s + t, n))
        edges = {(x, w) for x in S for w in W}
        core = S + U
        rng.shuffle(core)
        edges |= {tuple(sorted(p)) for p in zip(core, core[1:])}
        for x, y in combinations(S + U, 2):
            if rng.random() < 0.5:
                edges.add((x, y))
        for w in W:
            for x in rng.sample(U, max(0, a - s)):
                edges.add(tuple(sorted((x, w))))
        G = Graph.from_edges(n, edges)
        if min_degree(G) < a or not is_connected(G):
            continue
        return G
    raise RuntimeError("could not plant a deficient graph")


def _hillclimb_candidates(G: Graph, x) -> list[tuple[float, str, tuple]]:
    n = G.n
    norm = float(x @ x)
    cands = []
    for u, v in combinations(range(n), 2):
        if not G.has_edge(u, v):
            cands.append((2 * x[u] * x[v] / norm, "add", (u, v)))
    for u in range(n):
        for v in range(n):
            if u == v or x[u] < x[v]:
                continue
            targets = [t for t in G.neighbors(v) if t != u and not G.has_edge(u, t)]
            if not targets:
                continue
            diff = x[u] - x[v]
            cands.append((2 * diff * sum(x[t] for t in targets) / norm, "shift", (u, v, tuple(targets))))
            if len(targets) > 1:
                for t in targets:
                    cands.append((2 * diff * x[t] / norm, "shift", (u, v, (t,))))
    cands.sort(key=lambda c: (-c[0], c[1], c[2]))
    return cands


def kelmans_hillclimb(n: int, a: int, b: int, seed: int, max_steps: int = 500,
                      cap: int = BRUTE_FORCE_CAP, margin: float = 1e-10) -> VerificationReport:
    """Greedy rho ascent through factor-free graphs by Perron-guided Kelmans
    shifts and edge additions, from a random planted start."""
    from .spectral import kelmans_shift

    if n > 64:
        raise ValueError("hill climb capped at n <= 64")
    start = time.perf_counter()
    report = VerificationReport("hillclimb", {"n": n, "a": a, "b": b, "seed": seed},
                                in_hypothesis=n >= rho_threshold(a, b))
    rng = random.Random(seed)
    G = random_deficient_graph(n, a, b, rng)
    res = spectral_radius(G)
    trajectory = [{"move": "start", "rho": res.rho, "graph6": to_graph6(G)}]
    first = find_factor_flow(G, a, b, cap)
    if first.exists:
        report.violations.append({"check": "start-deficient", "graph6": to_graph6(G)})
    steps = 0
    while steps < max_steps:
        accepted = False
        for _, kind, args in _hillclimb_candidates(G, res.perron):
            if kind == "add":
                cand = G.add_edges([args])
            else:
                cand = kelmans_shift(G, *args)
            if min_degree(cand) < a or not is_connected(cand):
                continue
            outcome = find_factor_flow(cand, a, b, cap)
            if outcome.exists:
                continue
            new = spectral_radius(cand)
            if new.rho <= res.rho + margin:
                if kind == "shift" and res.perron[args[0]] >= res.perron[args[1]]:
                    report.violations.append({"check": "shift-increase", "graph6": to_graph6(G),
                                              "move": [args[0], args[1], list(args[2])]})
                continue
            if outcome.witness is not None and outcome.witness.deficiency < 1:
                report.violations.append({"check": "deficiency", "graph6": to_graph6(cand)})
            G, res = cand, new
            steps += 1
            report.checked += 1
            trajectory.append({"move": kind, "args": _jsonable(args), "rho": res.rho,
                               "deficiency": outcome.witness.deficiency if outcome.witness else None})
            accepted = True
            break
        if not accepted:
            break
    H = construct_H(n, a, b)
    rho_H = spectral_radius(H).rho
    iso = is_isomorphic(G, H)
    report.evidence = trajectory
    report.summary = {"steps": steps, "best_rho": res.rho, "rho_H": rho_H, "optimum_is_H": iso,
                      "optimum": to_graph6(G), "local_optimum": steps < max_steps,
                      "rho_le_rho_H": res.rho <= rho_H + margin}
    if res.rho > rho_H + margin:
        report.findings.append({"check": "optimum-exceeds-H", "graph6": to_graph6(G),
                                "rho": res.rho, "rho_H": rho_H})
    report.elapsed = time.perf_counter() - start
    return report


def _jsonable(args):
    return [list(x) if isinstance(x, tuple) else x for x in args]


# --- replay ------------------------------------------------------------------

def replay_violation(report: VerificationReport, record: dict) -> dict | None:
    """Re-run the check named in ``record``; returns the fresh record or None."""
    p = report.params
    check = record["check"]
    if check in ("thm-spectral",):
        rho_H = spectral_radius(construct_H(p["n"], p["a"], p["b"])).rho
        row = _theorem_instance((record["graph6"], p["n"], p["a"], p["b"], rho_H, 1e-10, BRUTE_FORCE_CAP))
        return row if row["status"] == "violation" else None
    if check == "thm-edge":
        row = _edge_instance((record["graph6"], p["n"], p["a"], p["b"], edge_bound(p["n"], p["a"], p["b"]),
                              BRUTE_FORCE_CAP))
        return row if row["status"] == "violation" else None
    if "spec" in record:
        spec = FamilySpec(**{k: (tuple(map(tuple, v)) if k == "attachment" else v)
                             for k, v in record["spec"].items()})
        single = {
            "sharpness": verify_sharpness,
            "lem-rho-interval": verify_rho_interval,
            "lem-family-maximizer": verify_family_maximizer,
        }[report.claim](spec.n, spec.a, spec.b)
        matches = [v for v in single.violations + single.findings
                   if v.get("spec") == record["spec"] and v["check"] == check]
        return matches[0] if matches else None
    raise ValueError(f"cannot replay check {check!r}")
