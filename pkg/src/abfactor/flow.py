"""Max flow (Dinic) and feasible flow with lower bounds."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass


class FlowNetwork:
    """Integer-capacity residual network with paired forward/backward arcs.

    Augmentation follows shortest paths (BFS level graph, then blocking flow),
    visiting arcs in insertion order, so results are deterministic.
    """

    def __init__(self, num_nodes: int):
        self.num_nodes = num_nodes
        self.adj: list[list[int]] = [[] for _ in range(num_nodes)]
        self.head: list[int] = []
        self.cap: list[int] = []

    def add_arc(self, u: int, v: int, capacity: int) -> int:
        """Add u->v; returns the arc id (its reverse is ``id ^ 1``)."""
        arc = len(self.head)
        self.head += (v, u)
        self.cap += (capacity, 0)
        self.adj[u].append(arc)
        self.adj[v].append(arc + 1)
        return arc

    def _levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.num_nodes
        level[s] = 0
        queue = deque([s])
        head, cap, adj = self.head, self.cap, self.adj
        while queue:
            u = queue.popleft()
            for arc in adj[u]:
                v = head[arc]
                if cap[arc] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[t] >= 0 else None

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        head, cap, adj = self.head, self.cap, self.adj
        while True:
            level = self._levels(s, t)
            if level is None:
                return total
            pointer = [0] * self.num_nodes
            while True:
                # iterative DFS for one augmenting path in the level graph
                stack = [s]
                arcs: list[int] = []
                while stack:
                    u = stack[-1]
                    if u == t:
                        break
                    advanced = False
                    edges = adj[u]
                    while pointer[u] < len(edges):
                        arc = edges[pointer[u]]
                        v = head[arc]
                        if cap[arc] > 0 and level[v] == level[u] + 1:
                            stack.append(v)
                            arcs.append(arc)
                            advanced = True
                            break
                        pointer[u] += 1
                    if not advanced:
                        stack.pop()
                        level[u] = -1
                        if arcs:
                            arcs.pop()
                if not stack:
                    break
                push = min(cap[arc] for arc in arcs)
                for arc in arcs:
                    cap[arc] -= push
                    cap[arc ^ 1] += push
                total += push

    def reachable(self, s: int) -> set[int]:
        """Nodes reachable from ``s`` in the residual network."""
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for arc in self.adj[u]:
                v = self.head[arc]
                if self.cap[arc] > 0 and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen

    def flow_on(self, arc: int) -> int:
        return self.cap[arc ^ 1]


@dataclass
class FeasibleFlow:
    feasible: bool
    flow: list[int]
    # residual source side of the final max-flow; the cut when infeasible
    source_side: set[int]


def feasible_flow(num_nodes: int, arcs: list[tuple[int, int, int, int]],
                  source: int | None = None, sink: int | None = None) -> FeasibleFlow:
    """Find a flow meeting ``lo <= f <= hi`` on every ``(u, v, lo, hi)`` arc.

    With ``source``/``sink`` given, an unbounded sink->source return arc turns
    the problem into a circulation. Lower bounds are removed with the usual
    super-source/super-sink excess transformation.
    """
    big = sum(hi for _, _, _, hi in arcs) + 1
    super_s, super_t = num_nodes, num_nodes + 1
    net = FlowNetwork(num_nodes + 2)
    excess = [0] * num_nodes
    ids = []
    for u, v, lo, hi in arcs:
        if lo < 0 or hi < lo:
            raise ValueError(f"bad bounds [{lo}, {hi}] on arc {u}->{v}")
        ids.append(net.add_arc(u, v, hi - lo))
        excess[v] += lo
        excess[u] -= lo
    if source is not None and sink is not None:
        net.add_arc(sink, source, big)
    demand = 0
    for v, ex in enumerate(excess):
        if ex > 0:
            net.add_arc(super_s, v, ex)
            demand += ex
        elif ex < 0:
            net.add_arc(v, super_t, -ex)
    value = net.max_flow(super_s, super_t)
    flow = [net.flow_on(arc) + lo for arc, (_, _, lo, _) in zip(ids, arcs)]
    return FeasibleFlow(value == demand, flow, net.reachable(super_s))
