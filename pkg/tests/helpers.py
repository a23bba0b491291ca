"""Graph builders shared by the test modules."""

from __future__ import annotations

import random
from pathlib import Path

import numpy as np
from scipy.sparse import csgraph, csr_matrix

from simplelocal import Graph

DATA = Path(__file__).parent / "data"


def one(*ids: int) -> set[int]:
    """Translate 1-based node labels (as written in the fixtures) to internal ids."""
    return {i - 1 for i in ids}


def barbell_graph() -> Graph:
    # triangles {1,2,3} and {4,5,6} joined by edge 3-4
    edges = [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (5, 6)]
    return Graph.from_edges(6, [(u - 1, v - 1) for u, v in edges])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def is_connected(n: int, edges) -> bool:
    if n == 1:
        return True
    if not edges:
        return False
    e = np.asarray(edges)
    m = csr_matrix((np.ones(len(e)), (e[:, 0], e[:, 1])), shape=(n, n))
    return csgraph.connected_components(m, directed=False)[0] == 1


def random_connected_graph(rng: random.Random, n: int, weighted: bool = False) -> Graph:
    while True:
        p = rng.uniform(0.25, 0.7)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        if is_connected(n, edges):
            ws = [float(rng.randint(1, 4)) for _ in edges] if weighted else None
            return Graph.from_edges(n, edges, ws)


def random_valid_seed(rng: random.Random, g: Graph) -> set[int]:
    n = g.node_count
    while True:
        k = rng.randint(1, max(1, n // 2))
        r = set(rng.sample(range(n), k))
        vol = float(sum(g.degrees[v] for v in r))
        if 0 < vol <= g.total_volume - vol:
            return r


def random_instances(count: int, seed: int, nmin: int = 5, nmax: int = 10, weighted_every: int = 0):
    """Deterministic family of (graph, seed set) pairs."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(nmin, nmax)
        g = random_connected_graph(rng, n, weighted=bool(weighted_every) and i % weighted_every == 0)
        out.append((g, random_valid_seed(rng, g)))
    return out
