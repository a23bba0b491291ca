"""Exhaustive references for testing: subset sweeps and cut enumeration.

These deliberately share no code with the algorithms they certify. Subsets
are enumerated as rows of a 0/1 matrix so each sweep is a handful of numpy
operations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .augmented import AugmentedParams
from .graph_core import Graph
from .maxflow import SINK, SOURCE, LocalFlowGraph

MAX_SWEEP_NODES = 20
MAX_FLOW_NODES = 14


class OracleRefused(ValueError):
    """The instance exceeds the oracle's size cap."""


@dataclass(frozen=True)
class SubsetSweepReport:
    best_value: float
    best_sets: list[frozenset[int]]
    evaluated: int

    @property
    def feasible(self) -> bool:
        return bool(self.best_sets)


def _all_subsets(n: int) -> np.ndarray:
    codes = np.arange(2**n, dtype=np.int64)
    return ((codes[:, None] >> np.arange(n)) & 1).astype(np.float64)


def _sweep_terms(g: Graph, r_ids) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    n = g.node_count
    if n > MAX_SWEEP_NODES:
        raise OracleRefused(f"{n} nodes exceeds the sweep cap of {MAX_SWEEP_NODES}")
    x = _all_subsets(n)
    deg = np.zeros(n)
    us, vs, ws = [], [], []
    for u in range(n):
        lo, hi = g.indptr[u], g.indptr[u + 1]
        for v, w in zip(g.indices[lo:hi], g.weights[lo:hi]):
            deg[u] += w
            if u < v:
                us.append(u)
                vs.append(int(v))
                ws.append(float(w))
    in_r = np.zeros(n)
    in_r[list(r_ids)] = 1.0
    cut = np.abs(x[:, us] - x[:, vs]) @ np.asarray(ws) if ws else np.zeros(len(x))
    vol_in = x @ (deg * in_r)
    vol_out = x @ (deg * (1 - in_r))
    return x, cut, vol_in, vol_out


def _report(x: np.ndarray, values: np.ndarray, feasible: np.ndarray, rtol: float) -> SubsetSweepReport:
    if not feasible.any():
        return SubsetSweepReport(float("inf"), [], len(x))
    best = float(values[feasible].min())
    near = feasible & (values <= best + rtol * max(1.0, abs(best)))
    sets = [frozenset(np.flatnonzero(row).tolist()) for row in x[near]]
    return SubsetSweepReport(best, sets, len(x))


def brute_min_cut_objective(g: Graph, r, p: AugmentedParams, rtol: float = 1e-9) -> SubsetSweepReport:
    """Minimum over all S of the modified augmented cut capacity.

    Only ``p.alpha`` and ``p.delta`` are used; f(R) is recomputed here.
    """
    alpha, delta = p.alpha, p.delta
    r_ids = sorted(r)
    x, cut, vol_in, vol_out = _sweep_terms(g, r_ids)
    vol_r = float(vol_in[-1])  # last row is S = V
    f = vol_r / (float(vol_out[-1]))
    values = alpha * vol_r + cut - alpha * vol_in + alpha * (f + delta) * vol_out
    return _report(x, values, np.ones(len(x), dtype=bool), rtol)


def brute_min_quotient(g: Graph, r, epsilon: float, rtol: float = 1e-9) -> SubsetSweepReport:
    """Minimum of boundary(S) / (vol(R & S) - epsilon vol(S - R)) over sets with positive denominator."""
    r_ids = sorted(r)
    x, cut, vol_in, vol_out = _sweep_terms(g, r_ids)
    denom = vol_in - epsilon * vol_out
    vol_r = float(vol_in[-1])
    feasible = denom > 1e-9 * vol_r
    values = np.full(len(x), np.inf)
    values[feasible] = cut[feasible] / denom[feasible]
    return _report(x, values, feasible, rtol)


def materialize_augmented_graph(g: Graph, r, p: AugmentedParams) -> LocalFlowGraph:
    """Build the whole modified augmented graph as a flow network (small graphs only)."""
    alpha, delta = p.alpha, p.delta
    r = frozenset(r)
    deg = [float(sum(g.weights[g.indptr[v]:g.indptr[v + 1]])) for v in range(g.node_count)]
    vol_r = sum(deg[v] for v in r)
    eps = vol_r / (sum(deg) - vol_r) + delta
    net = LocalFlowGraph()
    for v in range(g.node_count):
        net.add_node(v)
    for v in range(g.node_count):
        if v in r:
            net.add_source_arc(v, alpha * deg[v])
        else:
            net.add_sink_arc(v, alpha * eps * deg[v])
    for u in range(g.node_count):
        lo, hi = g.indptr[u], g.indptr[u + 1]
        for v, w in zip(g.indices[lo:hi], g.weights[lo:hi]):
            if u < v:
                net.add_edge(u, int(v), float(w))
    return net


def brute_max_flow(l: LocalFlowGraph) -> float:
    """Max-flow value as the minimum original-capacity cut over all source sides."""
    k = len(l.adj) - 2
    if k > MAX_FLOW_NODES:
        raise OracleRefused(f"{k} nodes exceeds the max-flow cap of {MAX_FLOW_NODES}")
    tails = np.array([l.head[a ^ 1] for a in range(l.arc_count)], dtype=np.int64)
    heads = np.array(l.head, dtype=np.int64)
    caps = np.array(l.cap, dtype=np.float64)
    side = np.zeros((2**k, k + 2))
    side[:, SOURCE] = 1.0
    side[:, SINK] = 0.0
    side[:, 2:] = _all_subsets(k)
    if not len(caps):
        return 0.0
    crossing = side[:, tails] * (1.0 - side[:, heads])
    return float((crossing @ caps).min())


def brute_min_cut_sets(l: LocalFlowGraph, rtol: float = 1e-9) -> SubsetSweepReport:
    """All source sides (as labels) attaining the minimum cut of ``l``."""
    k = len(l.adj) - 2
    if k > MAX_FLOW_NODES:
        raise OracleRefused(f"{k} nodes exceeds the max-flow cap of {MAX_FLOW_NODES}")
    tails = np.array([l.head[a ^ 1] for a in range(l.arc_count)], dtype=np.int64)
    heads = np.array(l.head, dtype=np.int64)
    caps = np.array(l.cap, dtype=np.float64)
    x = _all_subsets(k)
    side = np.concatenate([np.ones((len(x), 1)), np.zeros((len(x), 1)), x], axis=1)
    values = (side[:, tails] * (1.0 - side[:, heads])) @ caps
    labels = l.labels[2:]
    rep = _report(x, values, np.ones(len(x), dtype=bool), rtol)
    return SubsetSweepReport(
        rep.best_value, [frozenset(labels[i] for i in s) for s in rep.best_sets], rep.evaluated
    )

