import os
import sys

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from abfactor.graph import Graph

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def graphs(draw, min_n=1, max_n=9, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, keep in zip(pairs, bits) if keep]
    if connected:
        # a random spanning path guarantees connectivity
        order = draw(st.permutations(range(n)))
        edges = sorted(set(edges) | {tuple(sorted(p)) for p in zip(order, order[1:])})
    return Graph.from_edges(n, edges)


@pytest.fixture
def nx():
    import networkx
    return networkx


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("tests.test_acceptance")
    if acceptance is not None and acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(acceptance.RESULTS):
            terminalreporter.write_line(acceptance.RESULTS[key])
