"""Growable residual networks and exact max-flow solvers over them.

A :class:`LocalFlowGraph` holds paired arcs: arc ``a`` and its reverse
``a ^ 1``. Arcs are only ever appended, so flow already routed survives when
the network grows. Solvers work in place on the residual capacities and
return the amount of additional flow they routed.

An arc counts as usable while its residual capacity exceeds
``tol * max(cap[a], cap[a ^ 1])``. The same threshold decides sink-arc
saturation, which keeps reachability and saturation consistent with each
other under floating point.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Hashable
from typing import Protocol

from .augmented import DEFAULT_TOL

SOURCE = 0
SINK = 1


class LocalFlowGraph:
    """Residual network with a virtual source and sink and labelled inner nodes."""

    def __init__(self, tol: float = DEFAULT_TOL):
        self.tol = tol
        # per local node
        self.adj: list[list[int]] = [[], []]
        self.labels: list[Hashable | None] = [None, None]
        self.local_id: dict[Hashable, int] = {}
        # per arc
        self.head: list[int] = []
        self.cap: list[float] = []
        self.res: list[float] = []
        self.thr: list[float] = []
        self.sink_arc: dict[Hashable, int] = {}
        self.source_arc: dict[Hashable, int] = {}
        self.net_flow_total = 0.0

    # -- construction --------------------------------------------------------

    @property
    def node_count(self) -> int:
        """Number of labelled (non-terminal) nodes."""
        return len(self.labels) - 2

    @property
    def arc_count(self) -> int:
        return len(self.head)

    def __contains__(self, label: Hashable) -> bool:
        return label in self.local_id

    def add_node(self, label: Hashable) -> int:
        lid = self.local_id.get(label)
        if lid is None:
            lid = len(self.labels)
            self.local_id[label] = lid
            self.labels.append(label)
            self.adj.append([])
        return lid

    def add_arc_pair(self, u: int, v: int, cap_uv: float, cap_vu: float = 0.0) -> int:
        """Append arcs ``u -> v`` and ``v -> u``; return the index of the first."""
        if cap_uv < 0 or cap_vu < 0:
            raise ValueError("capacities must be nonnegative")
        a = len(self.head)
        thr = self.tol * max(cap_uv, cap_vu)
        self.head += [v, u]
        self.cap += [cap_uv, cap_vu]
        self.res += [cap_uv, cap_vu]
        self.thr += [thr, thr]
        self.adj[u].append(a)
        self.adj[v].append(a + 1)
        return a

    def add_edge(self, x: Hashable, y: Hashable, weight: float) -> int:
        """Undirected edge between labelled nodes (capacity ``weight`` both ways)."""
        return self.add_arc_pair(self.add_node(x), self.add_node(y), weight, weight)

    def add_source_arc(self, x: Hashable, capacity: float) -> int:
        a = self.add_arc_pair(SOURCE, self.add_node(x), capacity)
        self.source_arc[x] = a
        return a

    def add_sink_arc(self, x: Hashable, capacity: float) -> int:
        a = self.add_arc_pair(self.add_node(x), SINK, capacity)
        self.sink_arc[x] = a
        return a

    # -- queries --------------------------------------------------------------

    def tail(self, a: int) -> int:
        return self.head[a ^ 1]

    def flow(self, a: int) -> float:
        """Net flow on arc ``a`` in its own direction."""
        return (self.cap[a] - self.res[a] - (self.cap[a ^ 1] - self.res[a ^ 1])) / 2.0

    def usable(self, a: int) -> bool:
        return self.res[a] > self.thr[a]

    def saturated_sinks(self) -> frozenset:
        res, thr = self.res, self.thr
        return frozenset(x for x, a in self.sink_arc.items() if res[a] <= thr[a])

    def checkpoint(self) -> frozenset:
        """Snapshot used by :func:`saturated_sink_nodes` to report only new saturations."""
        return self.saturated_sinks()


class MaxFlowSolver(Protocol):
    """Anything that augments ``l`` to a maximum flow in place and returns the flow added."""

    def __call__(self, l: LocalFlowGraph) -> float: ...


class DinicSolver:
    """Blocking flows on BFS level graphs."""

    name = "dinic"

    def __call__(self, l: LocalFlowGraph) -> float:
        total = 0.0
        while True:
            level = _bfs_levels(l)
            if level[SINK] < 0:
                return total
            total += self._blocking_flow(l, level)

    @staticmethod
    def _blocking_flow(l: LocalFlowGraph, level: list[int]) -> float:
        adj, head, res, thr = l.adj, l.head, l.res, l.thr
        it = [0] * len(adj)
        pushed = 0.0
        path: list[int] = []
        v = SOURCE
        while True:
            if v == SINK:
                f = min(res[a] for a in path)
                for a in path:
                    res[a] -= f
                    res[a ^ 1] += f
                pushed += f
                path.clear()
                v = SOURCE
                continue
            arcs = adj[v]
            i = it[v]
            nxt = level[v] + 1
            while i < len(arcs):
                a = arcs[i]
                if res[a] > thr[a] and level[head[a]] == nxt:
                    break
                i += 1
            it[v] = i
            if i < len(arcs):
                a = arcs[i]
                path.append(a)
                v = head[a]
                continue
            # dead end: prune v from the level graph and retreat
            level[v] = -1
            if v == SOURCE:
                l.net_flow_total += pushed
                return pushed
            a = path.pop()
            v = head[a ^ 1]
            it[v] += 1


class EdmondsKarpSolver:
    """Shortest augmenting paths, one BFS per augmentation."""

    name = "edmonds-karp"

    def __call__(self, l: LocalFlowGraph) -> float:
        adj, head, res, thr = l.adj, l.head, l.res, l.thr
        total = 0.0
        while True:
            parent = [-1] * len(adj)
            parent[SOURCE] = -2
            queue = deque([SOURCE])
            while queue and parent[SINK] == -1:
                u = queue.popleft()
                for a in adj[u]:
                    w = head[a]
                    if parent[w] == -1 and res[a] > thr[a]:
                        parent[w] = a
                        queue.append(w)
            if parent[SINK] == -1:
                l.net_flow_total += total
                return total
            path = []
            v = SINK
            while v != SOURCE:
                a = parent[v]
                path.append(a)
                v = head[a ^ 1]
            f = min(res[a] for a in path)
            for a in path:
                res[a] -= f
                res[a ^ 1] += f
            total += f


def _bfs_levels(l: LocalFlowGraph) -> list[int]:
    adj, head, res, thr = l.adj, l.head, l.res, l.thr
    level = [-1] * len(adj)
    level[SOURCE] = 0
    queue = deque([SOURCE])
    while queue:
        u = queue.popleft()
        nxt = level[u] + 1
        for a in adj[u]:
            w = head[a]
            if level[w] < 0 and res[a] > thr[a]:
                level[w] = nxt
                queue.append(w)
    return level


DEFAULT_SOLVER: MaxFlowSolver = DinicSolver()

SOLVERS: dict[str, MaxFlowSolver] = {
    "dinic": DEFAULT_SOLVER,
    "edmonds-karp": EdmondsKarpSolver(),
}


def solve_max_flow(l: LocalFlowGraph, solver: MaxFlowSolver | None = None) -> float:
    """Augment ``l`` to a maximum flow; return the flow added by this call."""
    return (solver or DEFAULT_SOLVER)(l)


def source_set(l: LocalFlowGraph) -> frozenset:
    """Labels of nodes reachable from the source through usable residual arcs."""
    adj, head, res, thr = l.adj, l.head, l.res, l.thr
    seen = [False] * len(adj)
    seen[SOURCE] = True
    stack = [SOURCE]
    while stack:
        u = stack.pop()
        for a in adj[u]:
            w = head[a]
            if not seen[w] and res[a] > thr[a]:
                seen[w] = True
                stack.append(w)
    labels = l.labels
    return frozenset(labels[i] for i in range(2, len(adj)) if seen[i])


def saturated_sink_nodes(l: LocalFlowGraph, since: frozenset | None = None) -> frozenset:
    """Nodes whose sink arc is saturated now but was not at checkpoint ``since``."""
    now = l.saturated_sinks()
    return now - since if since is not None else now


def cut_capacity(l: LocalFlowGraph, side: frozenset) -> float:
    """Original capacity of arcs leaving ``{SOURCE} | side`` (labels)."""
    inside = [False] * len(l.adj)
    inside[SOURCE] = True
    for x in side:
        inside[l.local_id[x]] = True
    head, cap = l.head, l.cap
    total = 0.0
    for a in range(0, len(head)):
        if inside[head[a ^ 1]] and not inside[head[a]]:
            total += cap[a]
    return total
