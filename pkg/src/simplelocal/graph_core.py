"""Weighted undirected graphs in CSR form and the set measures built on them.

Node ids are dense integers ``0..n-1``. All set measures (volume, boundary,
neighborhood, conductance) cost time proportional to the volume of the set,
never to the size of the graph, so they are safe to call inside local
algorithms.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from collections.abc import Iterable, Iterator
from pathlib import Path

import numpy as np
import scipy.io
import scipy.sparse as sp

from .errors import InputError, UndefinedConductanceError

logger = logging.getLogger(__name__)


class Graph:
    """Immutable weighted undirected graph.

    Stored as a symmetric CSR matrix: the neighbors of ``v`` are
    ``indices[indptr[v]:indptr[v + 1]]`` with matching ``weights``.
    """

    __slots__ = ("indptr", "indices", "weights", "degrees", "total_volume", "_nbr_cache")

    def __init__(self, indptr: np.ndarray, indices: np.ndarray, weights: np.ndarray):
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices)
        self.weights = np.asarray(weights, dtype=np.float64)
        for arr in (self.indptr, self.indices, self.weights):
            arr.setflags(write=False)
        n = self.node_count
        rows = np.repeat(np.arange(n), np.diff(self.indptr))
        degrees = np.bincount(rows, weights=self.weights, minlength=n).astype(np.float64)
        degrees.setflags(write=False)
        self.degrees = degrees
        self.total_volume = float(degrees.sum())
        self._nbr_cache: dict[int, tuple[list[int], list[float]]] = {}

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]] | np.ndarray,
        weights: Iterable[float] | np.ndarray | None = None,
    ) -> Graph:
        """Build a graph from an undirected edge list.

        Duplicate edges are merged by summing their weights and self-loops are
        dropped with a warning.
        """
        e = np.asarray(edges if not isinstance(edges, Iterator) else list(edges), dtype=np.int64)
        if e.size == 0:
            e = e.reshape(0, 2)
        if e.ndim != 2 or e.shape[1] != 2:
            raise InputError("edges must be pairs (u, v)")
        if weights is None:
            w = np.ones(len(e), dtype=np.float64)
        else:
            w = np.asarray(list(weights) if isinstance(weights, Iterator) else weights, dtype=np.float64)
            if w.shape != (len(e),):
                raise InputError("weights must have one entry per edge")
        if len(e) and (e.min() < 0 or e.max() >= n):
            raise InputError(f"edge endpoint out of range for {n} nodes")
        if np.any(~np.isfinite(w)) or np.any(w <= 0):
            raise InputError("edge weights must be finite and positive")
        loops = e[:, 0] == e[:, 1]
        if loops.any():
            warnings.warn(f"dropping {int(loops.sum())} self-loop(s)", stacklevel=2)
            e, w = e[~loops], w[~loops]
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        idx_dtype = np.int32 if n < 2**31 else np.int64
        mat = sp.csr_matrix(
            (np.concatenate([w, w]), (rows.astype(idx_dtype), cols.astype(idx_dtype))),
            shape=(n, n),
        )
        mat.sum_duplicates()
        mat.sort_indices()
        return cls(mat.indptr, mat.indices.astype(idx_dtype, copy=False), mat.data)

    @property
    def node_count(self) -> int:
        return len(self.indptr) - 1

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    @property
    def is_weighted(self) -> bool:
        return bool(len(self.weights)) and not np.all(self.weights == 1.0)

    def neighbors(self, v: int) -> tuple[list[int], list[float]]:
        """Neighbor ids and edge weights of ``v`` as plain lists.

        Results are memoized; the local algorithms revisit the same nodes
        across many flow problems.
        """
        hit = self._nbr_cache.get(v)
        if hit is None:
            lo, hi = self.indptr[v], self.indptr[v + 1]
            hit = (self.indices[lo:hi].tolist(), self.weights[lo:hi].tolist())
            self._nbr_cache[v] = hit
        return hit

    def degree(self, v: int) -> float:
        return float(self.degrees[v])

    def edges(self) -> Iterator[tuple[int, int, float]]:
        """Each undirected edge once, as ``(u, v, w)`` with ``u < v``."""
        for u in range(self.node_count):
            nbrs, ws = self.neighbors(u)
            for v, w in zip(nbrs, ws):
                if u < v:
                    yield u, v, w

    def check_nodes(self, ids: Iterable[int]) -> None:
        n = self.node_count
        for v in ids:
            if not (0 <= v < n):
                raise InputError(f"node id {v} is not in the graph (0..{n - 1})")

    def node_set(self, ids: Iterable[int]) -> NodeSet:
        return NodeSet.of(self, ids)

    def __repr__(self) -> str:
        return f"Graph(nodes={self.node_count}, edges={self.edge_count}, volume={self.total_volume:g})"


@dataclass(frozen=True)
class NodeSet:
    """A vertex set with its volume and boundary weight cached."""

    members: frozenset[int]
    volume: float
    boundary: float
    _sorted: tuple[int, ...] = field(default=(), repr=False, compare=False)

    @classmethod
    def of(cls, g: Graph, ids: Iterable[int]) -> NodeSet:
        if isinstance(ids, NodeSet):
            return ids
        members = frozenset(int(v) for v in ids)
        g.check_nodes(members)
        return cls(members, _volume(g, members), _boundary(g, members), tuple(sorted(members)))

    def __iter__(self) -> Iterator[int]:
        return iter(self._sorted or sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, v: object) -> bool:
        return v in self.members

    def sorted(self) -> list[int]:
        return list(self)


def _members(g: Graph, s: Iterable[int]) -> frozenset[int]:
    if isinstance(s, NodeSet):
        return s.members
    m = frozenset(int(v) for v in s)
    g.check_nodes(m)
    return m


def _volume(g: Graph, members: frozenset[int]) -> float:
    deg = g.degrees
    return float(sum(deg[v] for v in members))


def _boundary(g: Graph, members: frozenset[int]) -> float:
    total = 0.0
    for u in members:
        nbrs, ws = g.neighbors(u)
        for v, w in zip(nbrs, ws):
            if v not in members:
                total += w
    return total


def volume(g: Graph, s: Iterable[int]) -> float:
    """Sum of weighted degrees over ``s``."""
    if isinstance(s, NodeSet):
        return s.volume
    return _volume(g, _members(g, s))


def boundary(g: Graph, s: Iterable[int]) -> float:
    """Total weight of edges with exactly one endpoint in ``s``."""
    if isinstance(s, NodeSet):
        return s.boundary
    return _boundary(g, _members(g, s))


def neighborhood(g: Graph, s: Iterable[int]) -> NodeSet:
    """Nodes outside ``s`` sharing an edge with some member of ``s``."""
    members = _members(g, s)
    out: set[int] = set()
    for u in members:
        out.update(v for v in g.neighbors(u)[0] if v not in members)
    return NodeSet.of(g, out)


def complement_volume(g: Graph, s: Iterable[int]) -> float:
    return g.total_volume - volume(g, s)


def conductance(g: Graph, s: Iterable[int]) -> float:
    """Boundary weight over the smaller of vol(S) and vol(V \\ S).

    Raises:
        UndefinedConductanceError: if the smaller side has zero volume, which
            covers the empty set and the whole vertex set.
    """
    s = NodeSet.of(g, s)
    denom = min(s.volume, g.total_volume - s.volume)
    if len(s) == 0 or len(s) == g.node_count or denom <= 0:
        raise UndefinedConductanceError(
            f"conductance undefined for a set of {len(s)} node(s) with min-side volume {denom:g}"
        )
    return s.boundary / denom


# --- file formats -----------------------------------------------------------


def read_edgelist(path: str | Path, index_base: int = 0, num_nodes: int | None = None) -> Graph:
    """Read ``u v [w]`` lines; ``#`` starts a comment and a missing w means 1."""
    us: list[int] = []
    vs: list[int] = []
    ws: list[float] = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) not in (2, 3):
                raise InputError(f"{path}:{lineno}: expected 'u v [w]', got {raw.strip()!r}")
            try:
                u, v = int(parts[0]) - index_base, int(parts[1]) - index_base
                w = float(parts[2]) if len(parts) == 3 else 1.0
            except ValueError as exc:
                raise InputError(f"{path}:{lineno}: {exc}") from None
            if u < 0 or v < 0:
                raise InputError(f"{path}:{lineno}: node id below index base {index_base}")
            us.append(u)
            vs.append(v)
            ws.append(w)
    if not us:
        raise InputError(f"{path}: no edges found")
    n = max(max(us), max(vs)) + 1
    if num_nodes is not None:
        if num_nodes < n:
            raise InputError(f"{path}: node id {n - 1} exceeds declared node count {num_nodes}")
        n = num_nodes
    return Graph.from_edges(n, np.column_stack([us, vs]), ws)


def write_edgelist(g: Graph, path: str | Path, index_base: int = 0) -> None:
    with open(path, "w") as fh:
        for u, v, w in g.edges():
            fh.write(f"{u + index_base} {v + index_base} {w!r}\n")


def read_matrix_market(path: str | Path) -> Graph:
    """Read a symmetric Matrix Market coordinate file as an undirected graph."""
    try:
        mat = scipy.io.mmread(str(path))
    except (ValueError, OSError, IndexError) as exc:
        raise InputError(f"{path}: cannot parse Matrix Market file: {exc}") from None
    if not sp.issparse(mat):
        mat = sp.coo_matrix(mat)
    mat = sp.coo_matrix(mat)
    if mat.shape[0] != mat.shape[1]:
        raise InputError(f"{path}: matrix is not square")
    if mat.nnz == 0:
        raise InputError(f"{path}: no edges found")
    csr = mat.tocsr()
    asym = abs(csr - csr.T)
    if asym.nnz and asym.max() > 1e-12 * abs(csr).max():
        raise InputError(f"{path}: matrix is not symmetric")
    # mmread expands symmetric storage to both triangles; keep the upper one.
    keep = mat.row <= mat.col
    rows, cols, data = mat.row[keep], mat.col[keep], mat.data[keep].astype(float)
    if np.any(data < 0):
        raise InputError(f"{path}: negative edge weight")
    nz = data > 0
    return Graph.from_edges(mat.shape[0], np.column_stack([rows[nz], cols[nz]]), data[nz])


def load_graph(path: str | Path, fmt: str = "edgelist", index_base: int = 0) -> Graph:
    if fmt == "edgelist":
        return read_edgelist(path, index_base=index_base)
    if fmt in ("mtx", "matrix-market"):
        return read_matrix_market(path)
    raise InputError(f"unknown graph format {fmt!r}")


def read_seeds(path: str | Path, index_base: int = 0) -> list[int]:
    """One node id per line; ``#`` comments and blank lines are ignored."""
    seeds = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                seeds.extend(int(tok) - index_base for tok in line.split())
            except ValueError:
                raise InputError(f"{path}:{lineno}: bad node id in {raw.strip()!r}") from None
    return seeds
