"""Exact graph isomorphism by individualisation and colour refinement."""
from __future__ import annotations

from .graph import Graph

ISO_CAP = 256


def _refine(graphs: tuple[Graph, Graph], colours: tuple[list[int], list[int]]):
    """Joint colour refinement of two graphs with a shared colour naming.

    Returns the refined colourings, or None once the class sizes differ.
    """
    c1, c2 = colours
    n = len(c1)
    while True:
        masks1: dict[int, int] = {}
        masks2: dict[int, int] = {}
        for v in range(n):
            masks1[c1[v]] = masks1.get(c1[v], 0) | (1 << v)
            masks2[c2[v]] = masks2.get(c2[v], 0) | (1 << v)
        if sorted(masks1) != sorted(masks2):
            return None
        keys = sorted(masks1)
        if any(masks1[k].bit_count() != masks2[k].bit_count() for k in keys):
            return None
        sigs1 = [(c1[v],) + tuple((graphs[0].rows[v] & masks1[k]).bit_count() for k in keys) for v in range(n)]
        sigs2 = [(c2[v],) + tuple((graphs[1].rows[v] & masks2[k]).bit_count() for k in keys) for v in range(n)]
        ranking = {s: i for i, s in enumerate(sorted(set(sigs1) | set(sigs2)))}
        new1 = [ranking[s] for s in sigs1]
        new2 = [ranking[s] for s in sigs2]
        if sorted(new1) != sorted(new2):
            return None
        if len(ranking) == len(keys):
            return new1, new2
        c1, c2 = new1, new2


def _try_mapping(G1: Graph, G2: Graph, c1: list[int], c2: list[int]) -> bool:
    """Map the vertices of each colour class in index order and test it."""
    order1 = sorted(range(G1.n), key=lambda v: (c1[v], v))
    order2 = sorted(range(G2.n), key=lambda v: (c2[v], v))
    perm = [0] * G1.n
    for x, y in zip(order1, order2):
        perm[x] = y
    for u in range(G1.n):
        image = 0
        row = G1.rows[u]
        while row:
            low = row & -row
            image |= 1 << perm[low.bit_length() - 1]
            row ^= low
        if image != G2.rows[perm[u]]:
            return False
    return True


def _search(G1: Graph, G2: Graph, c1: list[int], c2: list[int]) -> bool:
    refined = _refine((G1, G2), (c1, c2))
    if refined is None:
        return False
    c1, c2 = refined
    if _try_mapping(G1, G2, c1, c2):
        return True
    counts: dict[int, int] = {}
    for c in c1:
        counts[c] = counts.get(c, 0) + 1
    splittable = [c for c, k in counts.items() if k > 1]
    if not splittable:
        return False
    target = min(splittable, key=lambda c: (counts[c], c))
    fresh = max(counts) + 1
    v = next(x for x in range(G1.n) if c1[x] == target)
    for w in (y for y in range(G2.n) if c2[y] == target):
        d1, d2 = list(c1), list(c2)
        d1[v] = d2[w] = fresh
        if _search(G1, G2, d1, d2):
            return True
    return False


def is_isomorphic(G1: Graph, G2: Graph, cap: int = ISO_CAP) -> bool:
    if G1.n != G2.n:
        return False
    if G1.n > cap:
        raise ValueError(f"isomorphism test capped at n <= {cap}, got n={G1.n}")
    if G1.edge_count != G2.edge_count or sorted(G1.degrees) != sorted(G2.degrees):
        return False
    if G1.n == 0:
        return True
    return _search(G1, G2, [0] * G1.n, [0] * G2.n)
