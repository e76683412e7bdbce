import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from abfactor.flow import FlowNetwork, feasible_flow


@st.composite
def networks(draw):
    n = draw(st.integers(2, 9))
    arcs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(0, 6)),
                         max_size=25))
    return n, [(u, v, c) for u, v, c in arcs if u != v]


@given(networks())
def test_max_flow_matches_networkx(net):
    n, arcs = net
    F = FlowNetwork(n)
    D = nx.DiGraph()
    D.add_nodes_from(range(n))
    for u, v, c in arcs:
        F.add_arc(u, v, c)
        cap = D[u][v]["capacity"] + c if D.has_edge(u, v) else c
        D.add_edge(u, v, capacity=cap)
    value = F.max_flow(0, n - 1)
    assert value == nx.maximum_flow_value(D, 0, n - 1)
    # min-cut side: capacity leaving it equals the flow value
    side = F.reachable(0)
    assert n - 1 not in side
    assert value == sum(c for u, v, c in arcs if u in side and v not in side)


def test_simple_network():
    F = FlowNetwork(4)
    a = F.add_arc(0, 1, 3)
    F.add_arc(0, 2, 2)
    F.add_arc(1, 3, 2)
    F.add_arc(2, 3, 3)
    F.add_arc(1, 2, 1)
    assert F.max_flow(0, 3) == 5
    assert F.flow_on(a) == 3


def test_lower_bounds_feasible():
    # 0 -> 1 -> 2 with a forced unit on the middle arc
    res = feasible_flow(3, [(0, 1, 0, 2), (1, 2, 1, 1)], source=0, sink=2)
    assert res.feasible and res.flow == [1, 1]


def test_lower_bounds_infeasible():
    res = feasible_flow(3, [(0, 1, 0, 1), (1, 2, 2, 3)], source=0, sink=2)
    assert not res.feasible


def test_bad_bounds():
    with pytest.raises(ValueError):
        feasible_flow(2, [(0, 1, 2, 1)])


@given(st.integers(0, 2**32))
def test_feasible_flow_conservation(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 7)
    arcs = []
    for _ in range(rng.randint(1, 14)):
        u, v = rng.sample(range(n), 2)
        lo = rng.randint(0, 2)
        arcs.append((u, v, lo, lo + rng.randint(0, 3)))
    res = feasible_flow(n, arcs)
    if res.feasible:
        bal = [0] * n
        for (u, v, lo, hi), f in zip(arcs, res.flow):
            assert lo <= f <= hi
            bal[u] -= f
            bal[v] += f
        assert bal == [0] * n
    else:
        # networkx circulation with demands as the reference
        D = nx.DiGraph()
        D.add_nodes_from(range(n), demand=0)
        for i, (u, v, lo, hi) in enumerate(arcs):
            m = ("m", i)
            D.add_edge(u, m, capacity=hi - lo)
            D.add_edge(m, v, capacity=hi - lo)
            D.nodes[u]["demand"] += lo
            D.nodes[v]["demand"] -= lo
        with pytest.raises(nx.NetworkXUnfeasible):
            nx.network_simplex(D)
