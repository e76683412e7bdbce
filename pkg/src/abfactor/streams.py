"""graph6 line streams: lazy reading and exhaustive small-graph generation."""
from __future__ import annotations

import os
import sys
from pathlib import Path
from typing import IO, Iterable, Iterator

from .graph import Graph, Graph6Error, from_graph6, is_connected, to_graph6


class StreamError(ValueError):
    def __init__(self, line_no: int, cause: Graph6Error):
        super().__init__(f"line {line_no}: {cause}")
        self.line_no = line_no
        self.cause = cause


def read_graph6(lines: Iterable[str]) -> Iterator[tuple[int, str, Graph]]:
    """Yield ``(line number, graph6 text, graph)``; blank lines are skipped."""
    for line_no, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text:
            continue
        try:
            yield line_no, text, from_graph6(text)
        except Graph6Error as exc:
            raise StreamError(line_no, exc) from exc


def open_stream(path: str) -> IO[str]:
    if path == "-":
        return sys.stdin
    return open(path, encoding="ascii")


def _certificate(n: int, rows: list[int]) -> tuple[bytes, list[int]]:
    import pynauty

    adjacency = {v: [u for u in range(v + 1, n) if rows[v] >> u & 1] for v in range(n)}
    g = pynauty.Graph(n, adjacency_dict=adjacency)
    return pynauty.certificate(g), pynauty.canon_label(g)


def all_graphs(n: int) -> list[Graph]:
    """One canonical representative of every graph on n vertices.

    Built by vertex augmentation of the graphs on n-1 vertices (every
    neighbourhood of the new vertex), deduplicated by nauty certificate, so the
    order is deterministic.
    """
    if n == 0:
        return [Graph(0, ())]
    graphs = [Graph(0, ())]
    for k in range(1, n + 1):
        seen: set[bytes] = set()
        nxt = []
        for parent in graphs:
            for nbhd in range(1 << (k - 1)):
                rows = list(parent.rows) + [nbhd]
                for u in range(k - 1):
                    if nbhd >> u & 1:
                        rows[u] |= 1 << (k - 1)
                cert, label = _certificate(k, rows)
                if cert in seen:
                    continue
                seen.add(cert)
                # canon_label lists the vertices in canonical order
                inverse = [0] * k
                for pos, v in enumerate(label):
                    inverse[v] = pos
                nxt.append(Graph(k, tuple(rows)).relabel(inverse))
        graphs = nxt
    return graphs


def connected_graphs(n: int) -> Iterator[Graph]:
    for G in all_graphs(n):
        if is_connected(G):
            yield G


def cache_dir() -> Path:
    return Path(os.environ.get("ABFACTOR_CACHE", Path.home() / ".cache" / "abfactor"))


def connected_graph6_file(n: int) -> Path:
    """Path of a cached graph6 file listing every connected graph on n vertices."""
    path = cache_dir() / f"connected{n}.g6"
    if not path.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w", encoding="ascii") as fh:
            for G in connected_graphs(n):
                fh.write(to_graph6(G) + "\n")
        tmp.replace(path)
    return path


def connected_graph6_lines(n: int) -> Iterator[str]:
    with open(connected_graph6_file(n), encoding="ascii") as fh:
        yield from fh
