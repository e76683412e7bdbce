from math import comb

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from abfactor.graph import (FamilySpec, Graph, Graph6Error, complete, construct_cho_graph,
                            construct_family_member, construct_H, degree, degree_in,
                            empty_graph, family_edge_count, from_graph6, is_connected, join,
                            min_degree, star, to_graph6, union)
from abfactor.iso import is_isomorphic

from .conftest import graphs


def to_nx(G):
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    return H


# --- graph6 --------------------------------------------------------------------

def test_graph6_triangle():
    G = from_graph6("Bw")
    assert G.n == 3 and G.edge_count == 3
    assert to_nx(G).edges() == nx.from_graph6_bytes(b"Bw").edges()


def test_graph6_empty_bodies():
    assert from_graph6("A?").edge_count == 0 and from_graph6("A?").n == 2
    G = from_graph6("D??")
    assert G.n == 5 and G.edge_count == 0


@pytest.mark.parametrize("text, offset", [
    ("B!", 1),        # character below 63
    ("Bw\x7f", 2),    # character above 126
    ("D?", 2),        # body truncated
    ("Bww", 2),       # trailing byte
    ("~~??????????", 1),  # 8-byte size form
    ("~?", 2),        # truncated 4-byte header
])
def test_graph6_errors_report_offset(text, offset):
    with pytest.raises(Graph6Error) as exc:
        from_graph6(text)
    assert exc.value.offset == offset


def test_graph6_long_form_matches_networkx():
    G = construct_H(70, 2, 3)
    ref = nx.to_graph6_bytes(to_nx(G), header=False).decode().strip()
    assert to_graph6(G) == ref
    assert from_graph6(ref) == G


def test_graph6_header_is_accepted():
    assert from_graph6(">>graph6<<Bw") == complete(3)


@given(graphs(min_n=0, max_n=20))
def test_graph6_roundtrip_and_reference_codec(G):
    text = to_graph6(G)
    assert from_graph6(text) == G
    assert to_graph6(from_graph6(text)) == text
    assert text == nx.to_graph6_bytes(to_nx(G), header=False).decode().strip()


# --- constructors --------------------------------------------------------------

def test_join_examples():
    S = join(complete(1), empty_graph(3))
    assert S.edge_count == 3 and sorted(S.degrees) == [1, 1, 1, 3]
    assert join(complete(2), complete(2)) == complete(4)


def test_union_example():
    G = union(complete(4), empty_graph(3))
    assert (G.n, G.edge_count, min_degree(G)) == (7, 6, 0)


@given(graphs(min_n=0, max_n=6), graphs(min_n=0, max_n=6))
def test_join_degree_law(G1, G2):
    J = join(G1, G2)
    assert J.edge_count == G1.edge_count + G2.edge_count + G1.n * G2.n
    for v in range(G1.n):
        assert J.degree(v) == G1.degree(v) + G2.n
    for v in range(G2.n):
        assert J.degree(G1.n + v) == G2.degree(v) + G1.n
    U = union(G1, G2)
    assert U.edge_count == G1.edge_count + G2.edge_count


@given(graphs(max_n=12))
def test_edge_count_is_half_degree_sum(G):
    assert 2 * G.edge_count == sum(G.degrees)
    for u in range(G.n):
        assert not G.has_edge(u, u)
        for v in range(G.n):
            assert G.has_edge(u, v) == G.has_edge(v, u)


def test_construct_H_examples():
    H = construct_H(8, 1, 2)
    assert H.edge_count == 13 == comb(5, 2) + 3
    assert min_degree(H) == 1 and is_connected(H)
    assert H == join(complete(1), union(complete(4), empty_graph(3)))
    H = construct_H(10, 2, 3)
    assert H.edge_count == comb(6, 2) + 8 + 1 == 24
    assert min_degree(H) == 2
    H = construct_H(5, 1, 2)
    assert (H.edge_count, min_degree(H)) == (4, 1)


def test_construct_H_labelling():
    n, a, b = 20, 3, 5
    H = construct_H(n, a, b)
    attached = n - b - 1
    assert sorted(H.neighbors(attached)) == [0, 1, 2, 3, 4]
    for w in range(attached + 1, n):
        assert H.neighbors(w) == [0, 1, 2]
    assert H.degree(attached) == 2 * a - 1


@pytest.mark.parametrize("n, a, b", [(8, 1, 2), (10, 2, 3), (40, 1, 2), (70, 2, 3), (108, 3, 4), (30, 4, 9)])
def test_construct_H_invariants(n, a, b):
    H = construct_H(n, a, b)
    assert H.edge_count == family_edge_count(n, a, b)
    assert min_degree(H) == a and is_connected(H)


@pytest.mark.parametrize("n, a, b", [(8, 2, 2), (8, 0, 2), (4, 1, 2), (9, 3, 4)])
def test_construct_H_rejects_bad_parameters(n, a, b):
    with pytest.raises(ValueError):
        construct_H(n, a, b)


def test_family_member_examples():
    assert construct_family_member(FamilySpec(8, 1, 2, ())) == construct_H(8, 1, 2)
    g1 = construct_family_member(FamilySpec(12, 2, 3, ((0, 0),)))
    g2 = construct_family_member(FamilySpec(12, 2, 3, ((1, 3),)))
    assert g1 != g2 and is_isomorphic(g1, g2)
    shared = construct_family_member(FamilySpec(40, 3, 4, ((0, 0), (1, 0))))
    distinct = construct_family_member(FamilySpec(40, 3, 4, ((0, 0), (1, 1))))
    assert not is_isomorphic(shared, distinct)


def test_family_spec_rejects_duplicates_and_range():
    with pytest.raises(ValueError, match="duplicate"):
        FamilySpec(20, 3, 4, ((0, 0), (0, 0)))
    with pytest.raises(ValueError):
        FamilySpec(20, 3, 4, ((5, 0), (0, 1)))
    with pytest.raises(ValueError):
        FamilySpec(20, 3, 4, ((0, 0),))


@st.composite
def family_specs(draw):
    a = draw(st.integers(1, 4))
    b = draw(st.integers(a + 1, a + 4))
    n = draw(st.integers(a + b + 2 + max(0, a - 2), 30))
    clique = n - a - b - 1
    grid = [(w, c) for w in range(b + 1) for c in range(clique)]
    pairs = draw(st.lists(st.sampled_from(grid), min_size=a - 1, max_size=a - 1, unique=True))
    return FamilySpec(n, a, b, tuple(pairs))


@given(family_specs())
def test_family_edge_count_and_min_degree(spec):
    G = construct_family_member(spec)
    assert G.edge_count == comb(spec.n - spec.b - 1, 2) + spec.a * (spec.b + 1) + spec.a - 1
    assert min_degree(G) == spec.a


@pytest.mark.parametrize("n, a, m", [(6, 2, 11), (5, 1, 6), (4, 3, 5)])
def test_cho_graph(n, a, m):
    G = construct_cho_graph(n, a)
    assert G.edge_count == m == comb(a - 1, 2) + (a - 1) * (n - a + 1) + comb(n - a, 2)
    assert is_connected(G) == (a > 1)


def test_cho_graph_rejects():
    with pytest.raises(ValueError):
        construct_cho_graph(3, 3)


def test_degree_queries():
    H = construct_H(8, 1, 2)
    assert min_degree(H) == 1
    assert is_connected(H)
    assert degree_in(complete(4), 0, {1, 2}) == 2
    assert degree(star(4), 0) == 4
    with pytest.raises(IndexError):
        degree(complete(3), 3)
    with pytest.raises(IndexError):
        degree_in(complete(3), 0, {5})


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(ValueError):
        complete(3).add_edges([(0, 1)])
