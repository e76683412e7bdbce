import io

import networkx as nx
import pytest

from abfactor.graph import from_graph6, is_connected, to_graph6
from abfactor.iso import is_isomorphic
from abfactor.streams import (StreamError, all_graphs, connected_graph6_lines, connected_graphs,
                              read_graph6)

# numbers of graphs / connected graphs on n unlabelled vertices
ALL_COUNTS = [1, 1, 2, 4, 11, 34, 156, 1044, 12346]
CONNECTED_COUNTS = [1, 1, 2, 6, 21, 112, 853, 11117, 261080]


@pytest.mark.parametrize("n", range(1, 9))
def test_graph_counts(n):
    graphs = all_graphs(n)
    assert len(graphs) == ALL_COUNTS[n]
    assert sum(1 for G in graphs if is_connected(G)) == CONNECTED_COUNTS[n - 1]


@pytest.mark.parametrize("n", range(1, 8))
def test_matches_atlas(n):
    atlas = [H for H in nx.graph_atlas_g() if H.number_of_nodes() == n and nx.is_connected(H)]
    ours = list(connected_graphs(n))
    assert len(ours) == len(atlas)
    # every atlas graph is hit by exactly one generated graph with its invariants
    for H in atlas:
        degs = sorted(d for _, d in H.degree())
        cands = [G for G in ours if G.edge_count == H.number_of_edges() and sorted(G.degrees) == degs]
        G_ref = from_graph6(nx.to_graph6_bytes(H, header=False).decode().strip())
        assert sum(is_isomorphic(G, G_ref) for G in cands) == 1


def test_generation_is_deterministic():
    assert [to_graph6(G) for G in all_graphs(6)] == [to_graph6(G) for G in all_graphs(6)]


def test_cached_stream(tmp_path, monkeypatch):
    monkeypatch.setenv("ABFACTOR_CACHE", str(tmp_path))
    lines = list(connected_graph6_lines(6))
    assert len(lines) == 112
    assert (tmp_path / "connected6.g6").exists()
    assert list(connected_graph6_lines(6)) == lines


@pytest.mark.slow
def test_connected_nine():
    assert sum(1 for _ in connected_graph6_lines(9)) == 261080


def test_read_graph6_skips_blanks_and_reports_lines():
    stream = io.StringIO("Bw\n\nA_\nD!!\n")
    it = read_graph6(stream)
    assert next(it)[0] == 1
    assert next(it)[:2] == (3, "A_")
    with pytest.raises(StreamError) as exc:
        next(it)
    assert exc.value.line_no == 4
