"""Adjacency spectral radius: power iteration on A + I, plus an exact-structure
route through quotient matrices of equitable partitions."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .graph import Graph, components

DEFAULT_TOL = 1e-12
MAX_ITER = 10**6
# power steps before switching to shifted inverse iteration
POLISH_AFTER = 5000


class ConvergenceError(RuntimeError):
    pass


class NotEquitableError(ValueError):
    def __init__(self, vertex: int, cell: int, message: str):
        super().__init__(message)
        self.vertex = vertex
        self.cell = cell


@dataclass(frozen=True)
class SpectralResult:
    rho: float
    perron: np.ndarray
    iterations: int
    residual: float


def _component_radius(A: np.ndarray, tol: float, max_iter: int) -> tuple[float, np.ndarray, int, float]:
    k = A.shape[0]
    if k == 1:
        return 0.0, np.ones(1), 0, 0.0
    M = A + np.eye(k)
    x = np.ones(k)
    rho, residual = 0.0, math.inf
    for it in range(1, max_iter + 1):
        y = M @ x
        x = y / y.max()
        Ax = A @ x
        rho = float(x @ Ax / (x @ x))
        residual = float(np.abs(Ax - rho * x).max())
        if residual <= tol:
            return rho, x, it, residual
        if it >= POLISH_AFTER:
            break
    # slow mixing: shifted inverse iteration from the power-iteration estimate
    shift = rho + max(residual, 1e-9)
    shifted = A - shift * np.eye(k)
    for extra in range(1, 200):
        try:
            y = np.linalg.solve(shifted, x)
        except np.linalg.LinAlgError:
            shift += 1e-9
            shifted = A - shift * np.eye(k)
            continue
        x = y / y[np.argmax(np.abs(y))]
        Ax = A @ x
        rho = float(x @ Ax / (x @ x))
        residual = float(np.abs(Ax - rho * x).max())
        if residual <= tol:
            return rho, x, it + extra, residual
    raise ConvergenceError(f"no convergence: residual {residual:.3e} after {it + extra} steps")


def spectral_radius(G: Graph, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER) -> SpectralResult:
    """Largest adjacency eigenvalue with its Perron vector (max entry 1).

    Each component is handled separately; for a disconnected graph the vector is
    supported on the component attaining the maximum.
    """
    if G.n < 1:
        raise ValueError("spectral radius needs n >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    A = G.adjacency
    best = None
    total_iter = 0
    for comp in components(G):
        rho, x, it, res = _component_radius(A[np.ix_(comp, comp)], tol, max_iter)
        total_iter += it
        if best is None or rho > best[0]:
            best = (rho, comp, x, res)
    rho, comp, x, res = best
    perron = np.zeros(G.n)
    perron[comp] = x
    return SpectralResult(rho, perron, total_iter, res)


# --- Hong-Shu-Fang bound ---------------------------------------------------

def hsf_bound(n: int, m: int, delta: int) -> float:
    """(delta-1)/2 + sqrt(2m - n*delta + (delta+1)^2/4)."""
    if m < 0 or not 1 <= delta <= n - 1:
        raise ValueError(f"need m >= 0 and 1 <= delta <= n-1, got n={n}, m={m}, delta={delta}")
    radicand = 2 * m - n * delta + (delta + 1) ** 2 / 4
    if radicand < 0:
        raise ValueError(f"infeasible (n, m, delta) = ({n}, {m}, {delta}): negative radicand")
    return (delta - 1) / 2 + math.sqrt(radicand)


def monotone_f(x: float, p: int, q: int) -> float:
    """(x-1)/2 + sqrt(2q - p*x + (1+x)^2/4).

    Strictly decreasing in x wherever defined when 2q < p(p-1), and constant
    (equal to p-1) when 2q = p(p-1).
    """
    if not (0 <= x <= p - 1) or q < 0 or 2 * q > p * (p - 1):
        raise ValueError(f"need 0 <= x <= p-1 and 0 <= 2q <= p(p-1), got x={x}, p={p}, q={q}")
    radicand = 2 * q - p * x + (1 + x) ** 2 / 4
    if radicand < 0:
        raise ValueError(f"f undefined at x={x} for p={p}, q={q}")
    return (x - 1) / 2 + math.sqrt(radicand)


# --- Kelmans shift ---------------------------------------------------------

def kelmans_shift(G: Graph, u: int, v: int, targets) -> Graph:
    """Move the edges v-t to u-t for every t in ``targets``."""
    targets = sorted(set(targets))
    if not targets:
        raise ValueError("targets must be nonempty")
    if u == v:
        raise ValueError("u and v must differ")
    for t in targets:
        if t == u:
            raise ValueError("u cannot be a target")
        if not G.has_edge(v, t):
            raise ValueError(f"target {t} is not adjacent to v={v}")
        if G.has_edge(u, t):
            raise ValueError(f"target {t} is already adjacent to u={u}")
    return G.remove_edges((v, t) for t in targets).add_edges((u, t) for t in targets)


# --- equitable partitions --------------------------------------------------

@dataclass(frozen=True)
class QuotientMatrix:
    partition: tuple[tuple[int, ...], ...]
    B: tuple[tuple[int, ...], ...]

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.B, dtype=np.float64)


def quotient_matrix(G: Graph, partition: Sequence[Sequence[int]]) -> QuotientMatrix:
    cells = tuple(tuple(sorted(c)) for c in partition)
    seen = 0
    masks = []
    for i, cell in enumerate(cells):
        if not cell:
            raise ValueError(f"cell {i} is empty")
        mask = 0
        for v in cell:
            G._check_vertex(v)
            if (seen | mask) >> v & 1:
                raise ValueError(f"vertex {v} appears twice")
            mask |= 1 << v
        seen |= mask
        masks.append(mask)
    if seen != (1 << G.n) - 1:
        missing = next(v for v in range(G.n) if not seen >> v & 1)
        raise ValueError(f"partition misses vertex {missing}")
    B = []
    for i, cell in enumerate(cells):
        row = [(G.rows[cell[0]] & m).bit_count() for m in masks]
        for v in cell[1:]:
            for j, m in enumerate(masks):
                if (G.rows[v] & m).bit_count() != row[j]:
                    raise NotEquitableError(
                        v, j, f"vertex {v} of cell {i} has {(G.rows[v] & m).bit_count()} "
                              f"neighbours in cell {j}, expected {row[j]}")
        B.append(tuple(row))
    return QuotientMatrix(cells, tuple(B))


def coarsest_equitable_partition(G: Graph, initial: Sequence[int] | None = None) -> list[list[int]]:
    """Colour refinement from ``initial`` colours (default: all equal)."""
    colours = list(initial) if initial is not None else [0] * G.n
    while True:
        classes: dict[int, int] = {}
        for v, c in enumerate(colours):
            classes[c] = classes.get(c, 0) | (1 << v)
        masks = [classes[c] for c in sorted(classes)]
        sigs = [(colours[v],) + tuple((G.rows[v] & m).bit_count() for m in masks) for v in range(G.n)]
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if len(ranking) == len(masks):
            break
        colours = new
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(new):
        cells.setdefault(c, []).append(v)
    return [cells[c] for c in sorted(cells)]


def charpoly(B: Sequence[Sequence[int]]) -> list[int]:
    """Integer characteristic polynomial det(xI - B), highest degree first
    (Faddeev-LeVerrier in exact integer arithmetic)."""
    k = len(B)
    M = [[0] * k for _ in range(k)]
    coeffs = [1]
    c = 1
    for step in range(1, k + 1):
        # M <- B M + c I
        M = [[sum(B[i][l] * M[l][j] for l in range(k)) + (c if i == j else 0)
              for j in range(k)] for i in range(k)]
        trace = sum(sum(B[i][l] * M[l][i] for l in range(k)) for i in range(k))
        if trace % step:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        c = -trace // step
        coeffs.append(c)
    return coeffs


def _poly_eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in p:
        acc = acc * x + c
    return acc


def _poly_rem(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    p = list(p)
    while len(p) >= len(q) and any(p):
        factor = p[0] / q[0]
        for i in range(len(q)):
            p[i] -= factor * q[i]
        p.pop(0)
    while p and p[0] == 0:
        p.pop(0)
    return p


def _poly_gcd(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    while q:
        p, q = q, _poly_rem(p, q)
    return [c / p[0] for c in p]


def _poly_div(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    p = list(p)
    out = []
    while len(p) >= len(q):
        factor = p[0] / q[0]
        out.append(factor)
        for i in range(len(q)):
            p[i] -= factor * q[i]
        p.pop(0)
    return out


def _derivative(p: list[Fraction]) -> list[Fraction]:
    deg = len(p) - 1
    return [c * (deg - i) for i, c in enumerate(p[:-1])]


def _sturm_sequence(p: list[Fraction]) -> list[list[Fraction]]:
    seq = [p, _derivative(p)]
    while True:
        r = _poly_rem(seq[-2], seq[-1])
        if not r:
            return seq
        seq.append([-c for c in r])


def _sign_changes(values: list[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def largest_real_root(coeffs: Sequence[int], lo: float, hi: float, tol: float) -> float:
    """Largest real root of a polynomial known to lie in [lo, hi], isolated by
    Sturm counts and bisected in exact rational arithmetic."""
    p = [Fraction(c) for c in coeffs]
    if len(p) == 2:
        return float(-p[1] / p[0])
    square_free = _poly_div(p, _poly_gcd(p, _derivative(p)))
    seq = _sturm_sequence(square_free)
    at_infinity = _sign_changes([q[0] for q in seq])

    def roots_above(x: Fraction) -> int:
        return _sign_changes([_poly_eval(q, x) for q in seq]) - at_infinity

    low = Fraction(math.floor(lo)) - 1
    high = Fraction(math.ceil(hi)) + 1
    if roots_above(low) < 1:
        raise ArithmeticError("no real root in the bracketing interval")
    width = Fraction(tol) / 4
    while high - low > width:
        mid = (low + high) / 2
        above = roots_above(mid)
        if _poly_eval(square_free, mid) == 0 and above == 0:
            return float(mid)
        if above >= 1:
            low = mid
        else:
            high = mid
    return float((low + high) / 2)


def quotient_spectral_radius(Q: QuotientMatrix, tol: float = DEFAULT_TOL) -> float:
    """Perron value of the quotient matrix (equals rho of the source graph)."""
    k = len(Q.B)
    if k > 16:
        raise ValueError(f"quotient too large: k={k} > 16")
    sums = [sum(row) for row in Q.B]
    if min(sums) == max(sums):
        return float(sums[0])
    return largest_real_root(charpoly(Q.B), min(sums), max(sums), tol)


def family_partition(n: int, a: int, b: int) -> list[list[int]]:
    """Equitable cells of H_n^{a,b}: join clique, attached clique vertices,
    remaining clique, attached independent, other independents (the attached
    cells are absent when a = 1)."""
    first_ind = n - b - 1
    cells = [list(range(a))]
    if a > 1:
        cells += [list(range(a, 2 * a - 1)), list(range(2 * a - 1, first_ind)),
                  [first_ind], list(range(first_ind + 1, n))]
    else:
        cells += [list(range(a, first_ind)), list(range(first_ind, n))]
    return [c for c in cells if c]


def closed_nbhd(G: Graph, v: int) -> int:
    return G.rows[v] | (1 << v)


def neighbourhood_nested(G: Graph, u: int, v: int) -> bool:
    """N(v) minus u is a proper subset of N(u) minus v."""
    nu = G.rows[u] & ~(1 << v)
    nv = G.rows[v] & ~(1 << u)
    return nv & ~nu == 0 and nv != nu


def are_twins(G: Graph, u: int, v: int) -> bool:
    """N(v) within N[u] and N(u) within N[v]."""
    return G.rows[v] & ~closed_nbhd(G, u) == 0 and G.rows[u] & ~closed_nbhd(G, v) == 0

