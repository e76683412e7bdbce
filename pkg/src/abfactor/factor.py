"""Deciding [a,b]-factor and fractional [a,b]-factor existence.

Two independent routes:

* the one-set deficiency criterion, maximised by brute force over vertex
  subsets (exponential, small n only);
* a feasible flow on the bipartite double cover of G, which gives a
  half-integral fractional factor.  For b > a the half edges are rounded to an
  integral factor by alternating along Euler trails, which never fails.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable

import numpy as np

from .flow import feasible_flow
from .graph import Graph, iter_bits

BRUTE_FORCE_CAP = 24


class FactorDisagreement(RuntimeError):
    """The flow decision and the brute-force deficiency maximum disagree."""


class CertificateError(RuntimeError):
    """A produced certificate failed independent re-verification."""


def _check_strict(a: int, b: int) -> None:
    if a < 1 or b <= a:
        raise ValueError(f"the deficiency criterion needs b > a >= 1, got a={a}, b={b}")


def _check_window(a: int, b: int) -> None:
    if a < 1 or b < a:
        raise ValueError(f"need b >= a >= 1, got a={a}, b={b}")


@dataclass(frozen=True)
class DeficiencyWitness:
    S: frozenset[int]
    W: frozenset[int]
    deficiency: int

    def to_dict(self) -> dict:
        return {"S": sorted(self.S), "W": sorted(self.W), "deficiency": self.deficiency}


@dataclass(frozen=True)
class FactorResult:
    exists: bool
    factor_edges: tuple[tuple[int, int], ...] | None = None
    witness: DeficiencyWitness | None = None
    # "bruteforce" or "min-cut" (best effort); None when no witness was found
    witness_method: str | None = None
    cut: frozenset[int] | None = field(default=None, repr=False)


@dataclass(frozen=True)
class FractionalFactor:
    h: dict[tuple[int, int], Fraction]

    def degree_sums(self, n: int) -> list[Fraction]:
        sums = [Fraction(0)] * n
        for (u, v), val in self.h.items():
            sums[u] += val
            sums[v] += val
        return sums

    @property
    def support(self) -> list[tuple[int, int]]:
        return sorted(e for e, val in self.h.items() if val > 0)


@dataclass(frozen=True)
class FractionalResult:
    exists: bool
    factor: FractionalFactor | None = None
    witness: DeficiencyWitness | None = None
    witness_method: str | None = None


# --- deficiency criterion --------------------------------------------------

def _deficiency_mask(G: Graph, a: int, b: int, smask: int) -> tuple[int, int]:
    rest = ((1 << G.n) - 1) & ~smask
    wmask = 0
    total = 0
    for v in iter_bits(rest):
        d = (G.rows[v] & rest).bit_count()
        if d < a:
            wmask |= 1 << v
            total += a - d
    return total - b * smask.bit_count(), wmask


def deficiency(G: Graph, a: int, b: int, S: Iterable[int]) -> DeficiencyWitness:
    """a|W| - sum_{v in W} d_{G-S}(v) - b|S| with W the low-degree vertices of G-S.

    A positive value certifies that G has no [a,b]-factor.
    """
    _check_strict(a, b)
    smask = 0
    for v in S:
        G._check_vertex(v)
        smask |= 1 << v
    value, wmask = _deficiency_mask(G, a, b, smask)
    return DeficiencyWitness(frozenset(iter_bits(smask)), frozenset(iter_bits(wmask)), value)


@lru_cache(maxsize=None)
def _subsets_of_size(n: int, k: int) -> np.ndarray:
    if k == 0:
        return np.zeros((1, 0), dtype=np.intp)
    return np.array(list(combinations(range(n), k)), dtype=np.intp).reshape(-1, k)


def max_deficiency_bruteforce(G: Graph, a: int, b: int, cap: int = BRUTE_FORCE_CAP) -> DeficiencyWitness:
    """Maximise the deficiency over all S; ties go to smaller |S|, then lex order.

    Subsets with a(n - |S|) <= b|S| are skipped: their deficiency is at most 0
    while S = {} already scores >= 0, so the maximiser is unaffected.
    """
    _check_strict(a, b)
    n = G.n
    if n > cap:
        raise ValueError(f"brute force capped at n <= {cap}, got n={n}")
    A = G.adjacency.astype(np.int64)
    deg = A.sum(axis=1)
    best_val, best_S = None, ()
    for k in range(n + 1):
        if k > 0 and a * (n - k) <= b * k:
            break
        subsets = _subsets_of_size(n, k)
        inS = np.zeros((len(subsets), n), dtype=bool)
        if k:
            inS[np.arange(len(subsets))[:, None], subsets] = True
            d = deg - inS.astype(np.int64) @ A
        else:
            d = np.broadcast_to(deg, (1, n))
        low = (~inS) & (d < a)
        values = np.where(low, a - d, 0).sum(axis=1) - b * k
        i = int(np.argmax(values))
        if best_val is None or values[i] > best_val:
            best_val, best_S = int(values[i]), tuple(int(v) for v in subsets[i])
    return deficiency(G, a, b, best_S)


def _improve_witness(G: Graph, a: int, b: int, start: Iterable[int]) -> DeficiencyWitness:
    """Single-vertex toggle hill climb on the deficiency."""
    smask = 0
    for v in start:
        smask |= 1 << v
    value, _ = _deficiency_mask(G, a, b, smask)
    improved = True
    while improved:
        improved = False
        best = (value, smask)
        for v in range(G.n):
            cand = smask ^ (1 << v)
            val, _ = _deficiency_mask(G, a, b, cand)
            if val > best[0]:
                best = (val, cand)
        if best[0] > value:
            value, smask = best
            improved = True
    return deficiency(G, a, b, iter_bits(smask))


def _witness_from_cut(G: Graph, a: int, b: int, side: frozenset[int]) -> DeficiencyWitness | None:
    n = G.n
    left = {v for v in range(n) if 2 + v in side}
    right = {v for v in range(n) if 2 + n + v in side}
    everything = set(range(n))
    candidates = [right, everything - right, left, everything - left,
                  right - left, left - right, set()]
    best = None
    for cand in candidates:
        w = _improve_witness(G, a, b, cand)
        if best is None or w.deficiency > best.deficiency:
            best = w
    return best if best.deficiency >= 1 else None


# --- flow route ------------------------------------------------------------

def _double_cover_flow(G: Graph, a: int, b: int):
    """Degree window [a,b] on both copies of the bipartite double cover.

    Nodes: 0 source, 1 sink, 2+v left copy, 2+n+v right copy.  Returns the
    feasibility outcome and h(uv) = (f(u'v'') + f(v'u'')) / 2.
    """
    n = G.n
    arcs = [(0, 2 + v, a, b) for v in range(n)]
    arcs += [(2 + n + v, 1, a, b) for v in range(n)]
    pairs = []
    for u in range(n):
        for v in iter_bits(G.rows[u]):
            arcs.append((2 + u, 2 + n + v, 0, 1))
            pairs.append((u, v))
    result = feasible_flow(2 * n + 2, arcs, source=0, sink=1)
    doubled: dict[tuple[int, int], int] = {}
    if result.feasible:
        for (u, v), f in zip(pairs, result.flow[2 * n:]):
            if f:
                key = (u, v) if u < v else (v, u)
                doubled[key] = doubled.get(key, 0) + f
    return result.feasible, doubled, frozenset(result.source_side)


def _euler_circuit(start: int, adj: list[list[int]], ends: list[tuple[int, int]], used: list[bool]) -> list[int]:
    stack: list[tuple[int, int | None]] = [(start, None)]
    circuit = []
    while stack:
        v, via = stack[-1]
        edges = adj[v]
        while edges and used[edges[-1]]:
            edges.pop()
        if edges:
            eid = edges.pop()
            used[eid] = True
            x, y = ends[eid]
            stack.append((y if x == v else x, eid))
        else:
            stack.pop()
            if via is not None:
                circuit.append(via)
    circuit.reverse()
    return circuit


def _round_half_integral(n: int, doubled: dict[tuple[int, int], int], a: int, b: int) -> list[tuple[int, int]] | None:
    """Round h in {0, 1/2, 1} to a 0/1 factor keeping every degree in [a, b].

    Half edges are split into trails between odd-degree vertices plus closed
    circuits; alternating 1,0,1,... leaves interior vertices unchanged, moves
    each odd vertex by 1/2, and moves the root of an odd circuit by 1, which the
    slack b > a absorbs.  Returns None only if a == b and an odd circuit occurs.
    """
    chosen = [e for e, f in doubled.items() if f == 2]
    halves = sorted(e for e, f in doubled.items() if f == 1)
    twice = [0] * n
    for (u, v), f in doubled.items():
        twice[u] += f
        twice[v] += f
    z = n
    adj: list[list[int]] = [[] for _ in range(n + 1)]
    ends = list(halves)
    for eid, (u, v) in enumerate(ends):
        adj[u].append(eid)
        adj[v].append(eid)
    for v in range(n):
        if len(adj[v]) % 2:
            ends.append((v, z))
            adj[v].append(len(ends) - 1)
            adj[z].append(len(ends) - 1)
    nreal = len(halves)
    for lst in adj:
        lst.reverse()  # pop() takes the lowest edge id first
    used = [False] * len(ends)

    def alternate(trail: list[int], first: int) -> None:
        for i, eid in enumerate(trail):
            if (i % 2 == 0) == bool(first):
                chosen.append(ends[eid])

    if adj[z]:
        circuit = _euler_circuit(z, adj, ends, used)
        trail: list[int] = []
        for eid in circuit:
            if eid >= nreal:
                if trail:
                    alternate(trail, 1)
                trail = []
            else:
                trail.append(eid)
    for r in range(n):
        if any(not used[e] for e in adj[r]):
            circuit = _euler_circuit(r, adj, ends, used)
            if len(circuit) % 2 == 0:
                alternate(circuit, 1)
            elif twice[r] + 2 <= 2 * b:
                alternate(circuit, 1)
            elif twice[r] - 2 >= 2 * a:
                alternate(circuit, 0)
            else:
                return None
    return sorted(chosen)


def _exact_f_factor(G: Graph, f: int) -> list[tuple[int, int]] | None:
    """f-factor via Tutte's gadget and a maximum matching (used only for a == b)."""
    import networkx as nx

    if any(d < f for d in G.degrees):
        return None
    H = nx.Graph()
    for v in range(G.n):
        ports = [("p", v, u) for u in G.neighbors(v)]
        H.add_nodes_from(ports)
        for k in range(G.degrees[v] - f):
            for p in ports:
                H.add_edge(("core", v, k), p)
    for u, v in G.edges():
        H.add_edge(("p", u, v), ("p", v, u))
    matching = nx.max_weight_matching(H, maxcardinality=True)
    if 2 * len(matching) != H.number_of_nodes():
        return None
    chosen = []
    for x, y in matching:
        if x[0] == "p" and y[0] == "p":
            chosen.append(tuple(sorted((x[1], y[1]))))
    return sorted(chosen)


def verify_factor(G: Graph, edges: Iterable[tuple[int, int]], a: int, b: int) -> bool:
    deg = [0] * G.n
    for u, v in edges:
        if not G.has_edge(u, v):
            return False
        deg[u] += 1
        deg[v] += 1
    return all(a <= d <= b for d in deg)


def verify_fractional(G: Graph, factor: FractionalFactor, a: int, b: int) -> bool:
    for (u, v), val in factor.h.items():
        if not G.has_edge(u, v) or not 0 <= val <= 1 or (2 * val).denominator != 1:
            return False
    return all(a <= s <= b for s in factor.degree_sums(G.n))


def find_factor_flow(G: Graph, a: int, b: int, cap: int = BRUTE_FORCE_CAP) -> FactorResult:
    """Decide whether G has an [a,b]-factor and return a checkable certificate.

    On non-existence with b > a, the witness comes from brute force when
    ``G.n <= cap`` and otherwise from the min cut plus a local search, which is
    best effort (``witness`` may then be None; ``cut`` is always returned).
    """
    _check_window(a, b)
    feasible, doubled, side = _double_cover_flow(G, a, b)
    if feasible:
        edges = _round_half_integral(G.n, doubled, a, b)
        if edges is None:
            edges = _exact_f_factor(G, a)
        if edges is not None:
            if not verify_factor(G, edges, a, b):
                raise CertificateError("rounded factor violates the degree window")
            return FactorResult(True, tuple(edges))
        return FactorResult(False)
    if a == b:
        return FactorResult(False, cut=side)
    if G.n <= cap:
        witness, method = max_deficiency_bruteforce(G, a, b, cap), "bruteforce"
    else:
        witness, method = _witness_from_cut(G, a, b, side), "min-cut"
    if witness is not None and witness.deficiency < 1:
        raise FactorDisagreement(f"flow infeasible but best deficiency is {witness.deficiency}")
    return FactorResult(False, witness=witness, witness_method=method if witness else None, cut=side)


def has_factor(G: Graph, a: int, b: int, cap: int = BRUTE_FORCE_CAP) -> bool:
    """Flow decision, cross-checked against the brute-force maximum when n <= cap."""
    _check_strict(a, b)
    result = find_factor_flow(G, a, b, cap)
    if G.n <= cap and result.exists:
        witness = max_deficiency_bruteforce(G, a, b, cap)
        if witness.deficiency > 0:
            raise FactorDisagreement(
                f"flow found factor {result.factor_edges} but S={sorted(witness.S)} "
                f"has deficiency {witness.deficiency}")
    return result.exists


def find_fractional_factor(G: Graph, a: int, b: int, cap: int = BRUTE_FORCE_CAP) -> FractionalResult:
    """Half-integral fractional [a,b]-factor from the double-cover flow."""
    _check_window(a, b)
    feasible, doubled, side = _double_cover_flow(G, a, b)
    if feasible:
        factor = FractionalFactor({e: Fraction(f, 2) for e, f in sorted(doubled.items())})
        if not verify_fractional(G, factor, a, b):
            raise CertificateError("fractional factor violates the degree window")
        return FractionalResult(True, factor)
    if a == b:
        return FractionalResult(False)
    if G.n <= cap:
        witness, method = max_deficiency_bruteforce(G, a, b, cap), "bruteforce"
    else:
        witness, method = _witness_from_cut(G, a, b, side), "min-cut"
    return FractionalResult(False, witness=witness, witness_method=method if witness else None)
