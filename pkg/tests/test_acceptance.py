"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v -s`` to see the lines inline; they are
also repeated in the terminal summary.
"""
import time
from math import comb

import numpy as np
import pytest

from abfactor import verify as V
from abfactor.config import FuzzConfig
from abfactor.factor import (deficiency, find_factor_flow, find_fractional_factor,
                             max_deficiency_bruteforce)
from abfactor.graph import complete, construct_H, is_connected, min_degree, star
from abfactor.spectral import (are_twins, coarsest_equitable_partition, family_partition,
                               hsf_bound, monotone_f, neighbourhood_nested, quotient_matrix,
                               quotient_spectral_radius, spectral_radius)
from abfactor.streams import connected_graph6_lines

CFG = FuzzConfig.load()
SHARP_TRIPLES = [(1, 2, 40), (2, 3, 70), (3, 4, 108)]
WINDOWS = [(1, 2), (1, 3), (2, 3)]
RESULTS: dict[str, str] = {}


def report_line(criterion: str, ok: bool, detail: str) -> None:
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[criterion] = line
    print(line)


# --- 1: sharpness -------------------------------------------------------------------

def test_criterion_1_sharpness():
    start = time.perf_counter()
    problems = []
    rhos = []
    for a, b, n in SHARP_TRIPLES:
        assert n >= V.rho_threshold(a, b)
        H = construct_H(n, a, b)
        if not is_connected(H) or min_degree(H) != a:
            problems.append(f"({a},{b},{n}) structure")
        if find_factor_flow(H, a, b).exists:
            problems.append(f"({a},{b},{n}) has a factor")
        if deficiency(H, a, b, range(a)).deficiency != 1:
            problems.append(f"({a},{b},{n}) join deficiency")
        rho = spectral_radius(H).rho
        q_family = quotient_spectral_radius(quotient_matrix(H, family_partition(n, a, b)))
        q_coarse = quotient_spectral_radius(quotient_matrix(H, coarsest_equitable_partition(H)))
        if max(abs(rho - q_family), abs(rho - q_coarse)) > 1e-9:
            problems.append(f"({a},{b},{n}) back-ends disagree")
        if not n - b - 2 < rho < n - b - 1:
            problems.append(f"({a},{b},{n}) rho={rho} outside interval")
        rhos.append(rho)
    for a, b, n in [(1, 2, 8), (2, 3, 10)]:
        w = max_deficiency_bruteforce(construct_H(n, a, b), a, b)
        if w.S != frozenset(range(a)) or w.deficiency != 1:
            problems.append(f"brute force ({a},{b},{n}) gave {sorted(w.S)}/{w.deficiency}")
    elapsed = time.perf_counter() - start
    if elapsed >= 60:
        problems.append(f"runtime {elapsed:.1f}s")
    report_line("1", not problems,
                f"rho(H)={', '.join(f'{r:.9f}' for r in rhos)}; {elapsed:.1f}s {problems or ''}")
    assert not problems


# --- 2 and 3: exhaustive connected streams -------------------------------------------

@pytest.fixture(scope="module")
def oracle_reports():
    reports = {}

    def get(n):
        if n not in reports:
            reports[n] = V.verify_oracle_stream(connected_graph6_lines(n), n, WINDOWS)
        return reports[n]
    return get


SMALL_N = list(range(1, 9))


def _oracle_summary(reports):
    totals = {f"{a},{b}": [0, 0] for a, b in WINDOWS}
    for r in reports:
        for key, stats in r.summary["windows"].items():
            totals[key][0] += stats["checked"]
            totals[key][1] += stats["disagreements"]
    return totals


def test_criterion_2_oracle_equivalence_small(oracle_reports):
    start = time.perf_counter()
    reports = [oracle_reports(n) for n in SMALL_N]
    elapsed = time.perf_counter() - start
    bad = [v for r in reports for v in r.violations if v["check"] == "flow-vs-bruteforce"]
    totals = _oracle_summary(reports)
    ok = not bad and elapsed < 600
    report_line("2a", ok, "n<=8: " + ", ".join(f"({k}) {c} graphs/{d} disagreements"
                                                for k, (c, d) in totals.items()) + f"; {elapsed:.1f}s")
    assert ok, bad[:5]


@pytest.mark.slow
def test_criterion_2_oracle_equivalence_n9(oracle_reports):
    start = time.perf_counter()
    r = oracle_reports(9)
    elapsed = time.perf_counter() - start
    bad = [v for v in r.violations if v["check"] == "flow-vs-bruteforce"]
    totals = _oracle_summary([r])
    report_line("2b", not bad, f"n=9 ({r.checked} connected graphs): " + ", ".join(
        f"({k}) {c}/{d} disagreements" for k, (c, d) in totals.items()) + f"; {elapsed:.0f}s")
    assert not bad, bad[:5]


def _monotone_grid() -> tuple[int, int]:
    """10^4 admissible points: 100 (p, q) pairs times 100 values of x."""
    rng = np.random.default_rng(CFG.seed)
    points = violations = 0
    for _ in range(100):
        p = int(rng.integers(3, 200))
        q = int(rng.integers(p - 1, p * (p - 1) // 2))  # 2q < p(p-1)
        # admissible: a minimum degree x never exceeds the average 2q/p
        xs = np.linspace(0, min(p - 1, 2 * q / p), 100)
        values = [monotone_f(float(x), p, q) for x in xs]
        points += len(values)
        violations += sum(1 for s, t in zip(values, values[1:]) if not s > t)
    return points, violations


def test_criterion_3_spectral_bounds(oracle_reports):
    reports = [oracle_reports(n) for n in SMALL_N + [9]]
    bound_bad = [v for r in reports for v in r.violations if v["check"] == "hsf-bound"]
    checked = sum(r.summary["bound_checked"] for r in reports)
    worst = max(r.summary["max_rho_minus_bound"] for r in reports if r.summary["bound_checked"])
    equality = []
    for n in range(2, 13):
        for G, m, delta in [(complete(n), comb(n, 2), n - 1), (star(n - 1), n - 1, 1)]:
            equality.append(abs(spectral_radius(G).rho - hsf_bound(n, m, delta)))
    points, mono_bad = _monotone_grid()
    ok = not bound_bad and max(equality) <= 1e-9 and mono_bad == 0 and points >= 10**4
    report_line("3", ok, f"{checked} graphs, max rho-bound={worst:.2e}; equality err {max(equality):.1e}; "
                         f"monotone_f {points} points, {mono_bad} non-decreasing steps")
    assert ok


# --- 4: Kelmans shifts ---------------------------------------------------------------

def test_criterion_4_kelmans():
    r = V.verify_kelmans_property(CFG.kelmans_graphs, CFG.kelmans_max_n, CFG.seed,
                                  CFG.kelmans_shifts_per_graph, margin=1e-10)
    report_line("4", r.ok, f"{CFG.kelmans_graphs} graphs, {r.checked} shifts, "
                           f"min gain {r.summary['min_gain']:.3e}; {r.elapsed:.0f}s")
    assert r.ok, r.violations[:5]


# --- 5: Perron comparison -------------------------------------------------------------

def test_criterion_5_perron_comparison():
    strict = twins = 0
    problems = []
    for a, b, n in SHARP_TRIPLES:
        H = construct_H(n, a, b)
        x = spectral_radius(H).perron
        cell_of = {v: i for i, cell in enumerate(coarsest_equitable_partition(H)) for v in cell}
        for u in range(n):
            for v in range(n):
                if u == v:
                    continue
                if neighbourhood_nested(H, u, v):
                    strict += 1
                    if not x[u] > x[v]:
                        problems.append((a, b, n, u, v))
                if cell_of[u] == cell_of[v] and are_twins(H, u, v):
                    twins += 1
                    if abs(x[u] - x[v]) > 1e-9:
                        problems.append((a, b, n, u, v))
    report_line("5", not problems and strict > 0 and twins > 0,
                f"{strict} strictly nested pairs, {twins} twin pairs, {len(problems)} failures")
    assert not problems and strict and twins


# --- 6: family maximizer ----------------------------------------------------------------

def test_criterion_6_family_maximizer():
    a, b, n = 3, 4, 108
    members = V.enumerate_family(n, a, b)
    expected = comb(n - b - 1, 2) + a * b + 2 * a - 1
    edges_ok = all(G.edge_count == expected for G in members)
    fractional = [find_fractional_factor(G, a, b).exists for G in members]
    r = V.verify_family_maximizer(n, a, b, margin=1e-10)
    gaps = [row["gap"] for row in r.evidence[1:]]
    ok = len(members) == 3 and edges_ok and not any(fractional) and r.ok and not r.findings \
        and r.in_hypothesis and min(gaps) > 1e-10
    report_line("6", ok, f"{len(members)} members, e={expected}, fractional={fractional}, "
                         f"min gap {min(gaps):.3e}")
    assert ok


# --- 7: perturbation fuzz -------------------------------------------------------------

def test_criterion_7_perturbations():
    a, b, n = 1, 2, 40
    stream = V.perturbation_stream(n, a, b, CFG.perturbation_samples, CFG.seed)
    r = V.verify_theorem_stream(a, b, stream, n, CFG.rho_margin)
    ok = r.ok and not r.findings and r.in_hypothesis and r.elapsed < 300
    report_line("7", ok, f"{len(stream)} perturbations: {r.checked} checked, {r.vacuous} below rho(H), "
                         f"{r.skipped} skipped, {len(r.violations)} counterexamples; {r.elapsed:.0f}s")
    assert ok and r.checked + r.vacuous + r.skipped == CFG.perturbation_samples


# --- 8: edge theorem ------------------------------------------------------------------

@pytest.mark.parametrize("a, b, n", [(1, 2, 15), (2, 3, 21), (2, 3, 22)])
def test_criterion_8_edge_theorem(a, b, n):
    stream = V.edge_theorem_samples(n, a, b, CFG.edge_samples, CFG.seed)
    r = V.verify_edge_theorem(a, b, stream, n)
    tight = r.summary["tightness"]
    ok = (r.ok and not r.findings and r.checked == CFG.edge_samples
          and tight["m"] == V.edge_bound(n, a, b) - 1 and not tight["factor"] and not tight["fractional"])
    note = "" if r.in_hypothesis else " (below the size threshold, run as stated)"
    report_line(f"8 ({a},{b},{n})", ok, f"{r.checked} samples with a factor, {len(r.findings)} without; "
                                        f"H has m={tight['m']}, bound {r.summary['edge_bound']}{note}")
    assert ok
