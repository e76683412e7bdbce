"""Simple undirected graphs on vertices 0..n-1, stored as per-vertex bitsets.

Also holds the graph6 codec and the builders for the named extremal families.
Labelling of the constructed families is fixed:

    0 .. a-1            the join clique K_a
    a .. n-b-2          the big clique K_{n-a-b-1}
    n-b-1 .. n-1        the b+1 independent vertices
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

GRAPH6_MAX_N = (1 << 18) - 1


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValueError("need one adjacency row per vertex")
        for v, row in enumerate(self.rows):
            if row >> v & 1:
                raise ValueError(f"self-loop at {v}")
            if row >> self.n:
                raise ValueError(f"row {v} references a vertex >= n")
            for u in iter_bits(row):
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.rows[v].bit_count()

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.rows)

    @cached_property
    def edge_count(self) -> int:
        return sum(self.degrees) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.rows[u] >> (u + 1) << (u + 1))]

    @cached_property
    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=np.float64)
        for u, v in self.edges():
            A[u, v] = A[v, u] = 1.0
        A.setflags(write=False)
        return A

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = list(self.rows)
        for u, v in edges:
            if u == v or self.has_edge(u, v):
                raise ValueError(f"cannot add edge ({u}, {v})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = list(self.rows)
        for u, v in edges:
            if not self.has_edge(u, v):
                raise ValueError(f"no edge ({u}, {v}) to remove")
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of 0..n-1")
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(vertices)}
        return Graph.from_edges(
            len(vertices),
            ((index[u], index[v]) for u, v in self.edges() if u in index and v in index),
        )

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range for n={self.n}")

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


# --- basic queries ---------------------------------------------------------

def degree(G: Graph, v: int) -> int:
    return G.degree(v)


def degree_in(G: Graph, v: int, S: Iterable[int]) -> int:
    """Number of neighbours of ``v`` inside ``S``."""
    G._check_vertex(v)
    mask = 0
    for u in S:
        G._check_vertex(u)
        mask |= 1 << u
    return (G.rows[v] & mask).bit_count()


def min_degree(G: Graph) -> int:
    return min(G.degrees) if G.n else 0


def components(G: Graph) -> list[list[int]]:
    seen = 0
    comps = []
    for s in range(G.n):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= G.rows[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(list(iter_bits(comp)))
    return comps


def is_connected(G: Graph) -> bool:
    # K_0 is treated as connected
    return G.n <= 1 or len(components(G)) == 1


# --- algebraic constructors ------------------------------------------------

def empty_graph(n: int) -> Graph:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Graph(n, (0,) * n)


def complete(n: int) -> Graph:
    if n < 0:
        raise ValueError("n must be nonnegative")
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def union(G1: Graph, G2: Graph) -> Graph:
    """Disjoint union; the vertices of ``G2`` are shifted up by ``G1.n``."""
    shift = G1.n
    return Graph(G1.n + G2.n, G1.rows + tuple(row << shift for row in G2.rows))


def join(G1: Graph, G2: Graph) -> Graph:
    shift = G1.n
    all2 = ((1 << G2.n) - 1) << shift
    all1 = (1 << G1.n) - 1
    rows = tuple(row | all2 for row in G1.rows) + tuple((row << shift) | all1 for row in G2.rows)
    return Graph(G1.n + G2.n, rows)


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def star(leaves: int) -> Graph:
    return join(complete(1), empty_graph(leaves))


# --- graph6 ----------------------------------------------------------------

def to_graph6(G: Graph) -> str:
    n = G.n
    if n > GRAPH6_MAX_N:
        raise ValueError(f"graph6 encoding supports n <= {GRAPH6_MAX_N}")
    if n <= 62:
        out = [chr(63 + n)]
    else:
        out = [chr(126)] + [chr(63 + (n >> s & 63)) for s in (12, 6, 0)]
    acc = nbits = 0
    for j in range(1, n):
        row = G.rows[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def from_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    text = text.rstrip("\r\n")
    base = 0
    if text.startswith(">>graph6<<"):
        base = len(">>graph6<<")
    data = text[base:]
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside 63..126", base + i)
    if not data:
        raise Graph6Error("empty graph6 string", base)
    if ord(data[0]) < 126:
        n, pos = ord(data[0]) - 63, 1
    else:
        if len(data) >= 2 and ord(data[1]) == 126:
            raise Graph6Error("8-byte size form (n >= 2^18) is not supported", base + 1)
        if len(data) < 4:
            raise Graph6Error("truncated size header", base + len(data))
        n = 0
        for k in range(1, 4):
            n = (n << 6) | (ord(data[k]) - 63)
        pos = 4
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < need:
        raise Graph6Error(f"truncated bit body: need {need} bytes, got {len(body)}", base + len(data))
    if len(body) > need:
        raise Graph6Error("trailing bytes after bit body", base + pos + need)
    rows = [0] * n
    k = 0
    i, j = 0, 1
    for byte in body:
        val = ord(byte) - 63
        for s in range(5, -1, -1):
            if k >= nbits:
                break
            if val >> s & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph(n, tuple(rows))


# --- paper families --------------------------------------------------------

def _check_ab(a: int, b: int) -> None:
    if not (isinstance(a, int) and isinstance(b, int)) or a < 1 or b <= a:
        raise ValueError(f"need integers b > a >= 1, got a={a}, b={b}")


@dataclass(frozen=True)
class FamilySpec:
    """A member of the family: the base graph K_a v (K_{n-a-b-1} u (b+1)K_1)
    plus a-1 edges, each given as (independent index, big-clique index)."""

    n: int
    a: int
    b: int
    attachment: tuple[tuple[int, int], ...]

    def __post_init__(self):
        _check_ab(self.a, self.b)
        if self.n < self.a + self.b + 2:
            raise ValueError(f"need n >= a+b+2, got n={self.n}")
        object.__setattr__(self, "attachment", tuple(tuple(p) for p in self.attachment))
        if len(self.attachment) != self.a - 1:
            raise ValueError(f"need exactly a-1={self.a - 1} attachment pairs")
        if len(set(self.attachment)) != len(self.attachment):
            raise ValueError("duplicate attachment pair")
        clique = self.n - self.a - self.b - 1
        for w, c in self.attachment:
            if not (0 <= w <= self.b and 0 <= c < clique):
                raise ValueError(f"attachment pair ({w}, {c}) out of range")

    @property
    def clique_size(self) -> int:
        return self.n - self.a - self.b - 1

    def independent_vertex(self, w: int) -> int:
        return self.n - self.b - 1 + w

    def clique_vertex(self, c: int) -> int:
        return self.a + c


def family_base(n: int, a: int, b: int) -> Graph:
    return join(complete(a), union(complete(n - a - b - 1), empty_graph(b + 1)))


def family_edge_count(n: int, a: int, b: int) -> int:
    return comb(n - b - 1, 2) + a * (b + 1) + a - 1


def construct_family_member(spec: FamilySpec) -> Graph:
    base = family_base(spec.n, spec.a, spec.b)
    return base.add_edges(
        (spec.independent_vertex(w), spec.clique_vertex(c)) for w, c in spec.attachment
    )


def h_spec(n: int, a: int, b: int) -> FamilySpec:
    _check_ab(a, b)
    if n - a - b - 1 < a - 1:
        raise ValueError(f"big clique K_{n - a - b - 1} cannot host a-1={a - 1} endpoints")
    return FamilySpec(n, a, b, tuple((0, c) for c in range(a - 1)))


def construct_H(n: int, a: int, b: int) -> Graph:
    """The extremal graph: all a-1 extra edges leave independent vertex n-b-1
    and land on big-clique vertices a..2a-2."""
    return construct_family_member(h_spec(n, a, b))


def construct_cho_graph(n: int, a: int) -> Graph:
    """K_{a-1} v (K_1 u K_{n-a}), the conjectured extremal graph without a factor."""
    if a < 1 or n < a + 1:
        raise ValueError(f"need n >= a+1 >= 2, got n={n}, a={a}")
    return join(complete(a - 1), union(complete(1), complete(n - a)))
