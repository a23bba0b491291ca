"""Exact max flow on the modified augmented graph without materializing it.

The local graph starts as the seeds, their neighbors, and the arcs among
them. After each max-flow solve, every node whose sink arc became saturated
is expanded: all its incident edges are added, and each newly touched node
gets its sink arc. Once a solve saturates no new sink arc, the flow is
maximum for the whole augmented graph and the source-reachable set is the
minimum cut.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .augmented import DEFAULT_TOL, AugmentedParams, check_seed
from .errors import InternalError
from .graph_core import Graph, NodeSet
from .maxflow import (
    LocalFlowGraph,
    MaxFlowSolver,
    saturated_sink_nodes,
    solve_max_flow,
    source_set,
)


class AugmentedLocalGraph(LocalFlowGraph):
    """A :class:`LocalFlowGraph` that knows which part of ``graph`` it covers.

    ``expanded`` is the set of non-seed nodes whose incident edges are all
    present; seeds are complete from initialization. Nodes present but
    neither seeds nor expanded form the frontier.

    ``explored_volume`` is the volume of the explored subgraph itself: twice
    the weight of the graph edges present. Seeds and expanded nodes count
    their full degree, frontier nodes only their edges into the complete
    part. ``touched_volume`` sums full degrees of every node present.
    """

    def __init__(self, graph: Graph, seeds: NodeSet, params: AugmentedParams, tol: float = DEFAULT_TOL):
        super().__init__(tol)
        self.graph = graph
        self.seeds = seeds
        self.params = params
        self.expanded: set[int] = set()
        self.explored_volume = 0.0
        self.touched_volume = 0.0

    def add_edge(self, x, y, weight: float) -> int:
        self.explored_volume += 2.0 * weight
        return super().add_edge(x, y, weight)

    def _touch(self, v: int) -> None:
        if v not in self.local_id:
            self.add_node(v)
            d = self.graph.degree(v)
            self.touched_volume += d
            if v not in self.seeds.members:
                self.add_sink_arc(v, self.params.sink_capacity(d))

    def complete(self, v: int) -> bool:
        return v in self.seeds.members or v in self.expanded

    @property
    def frontier(self) -> frozenset[int]:
        return frozenset(v for v in self.local_id if not self.complete(v))


def initialize_local_graph(
    g: Graph, r: NodeSet, p: AugmentedParams, tol: float = DEFAULT_TOL
) -> AugmentedLocalGraph:
    """Seeds plus their neighborhood, with source arcs, seed edges, and frontier sink arcs."""
    r = NodeSet.of(g, r)
    check_seed(g, r)
    local = AugmentedLocalGraph(g, r, p, tol)
    for v in r:
        local._touch(v)
        local.add_source_arc(v, p.source_capacity(g.degree(v)))
    for u in r:
        nbrs, ws = g.neighbors(u)
        for v, w in zip(nbrs, ws):
            if v in r.members:
                if u < v:
                    local.add_edge(u, v, w)
            else:
                local._touch(v)
                local.add_edge(u, v, w)
    return local


def expand(local: AugmentedLocalGraph, x: Iterable[int]) -> AugmentedLocalGraph:
    """Add every missing incident edge (and new endpoint with its sink arc) of each node in ``x``.

    Existing arcs and their flow are left alone.
    """
    g = local.graph
    for u in sorted(x):
        if local.complete(u):
            continue
        if u not in local:
            raise ValueError(f"cannot expand node {u}: not in the local graph")
        nbrs, ws = g.neighbors(u)
        for v, w in zip(nbrs, ws):
            # an edge is already present iff one endpoint is complete
            if local.complete(v):
                continue
            local._touch(v)
            local.add_edge(u, v, w)
        local.expanded.add(u)
    return local


@dataclass(frozen=True)
class ExpansionStep:
    """State after one expand/solve/update round."""

    flow_total: float
    explored_volume: float
    touched_volume: float
    expanded_count: int
    arc_count: int
    newly_saturated: int


@dataclass(frozen=True)
class FlowResult:
    flow_value: float
    source_set: NodeSet
    explored_volume: float
    iterations: int
    expanded: frozenset[int]
    seed_volume: float
    touched_volume: float = 0.0
    history: tuple[ExpansionStep, ...] = ()

    @property
    def saturated_source(self) -> bool:
        """True when all source capacity was routed, i.e. no improving cut exists."""
        return len(self.source_set) == 0


def three_stage_flow(
    g: Graph,
    r: NodeSet,
    p: AugmentedParams,
    solver: MaxFlowSolver | None = None,
    tol: float = DEFAULT_TOL,
    max_iterations: int | None = None,
) -> FlowResult:
    """Alternate expansion, max flow, and saturation checks until no new sink arc saturates."""
    r = NodeSet.of(g, r)
    local = initialize_local_graph(g, r, p, tol)
    cap = max_iterations if max_iterations is not None else g.node_count + 1
    x: frozenset[int] = frozenset()
    iterations = 0
    history = []
    while True:
        if iterations >= cap:
            raise InternalError(f"local flow did not converge within {cap} iterations")
        expand(local, x)
        mark = local.checkpoint()
        solve_max_flow(local, solver)
        iterations += 1
        x = frozenset(v for v in saturated_sink_nodes(local, since=mark) if v not in local.expanded)
        history.append(
            ExpansionStep(
                local.net_flow_total,
                local.explored_volume,
                local.touched_volume,
                len(local.expanded),
                local.arc_count,
                len(x),
            )
        )
        if not x:
            break
    s = source_set(local)
    return FlowResult(
        flow_value=local.net_flow_total,
        source_set=NodeSet.of(g, s),
        explored_volume=local.explored_volume,
        iterations=iterations,
        expanded=frozenset(local.expanded),
        seed_volume=r.volume,
        touched_volume=local.touched_volume,
        history=tuple(history),
    )


def exploration_bound(r: NodeSet, p: AugmentedParams) -> float:
    """Upper bound vol(R) * (1 + 2 / epsilon) + boundary(R) on the explored volume."""
    return r.volume * (1.0 + 2.0 / p.epsilon) + r.boundary
