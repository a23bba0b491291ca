"""Capacities and cut objectives of the (modified) augmented graph.

The augmented graph adds a source wired to every seed ``r`` with capacity
``alpha * d_r`` and a sink wired to every non-seed ``v`` with capacity
``alpha * epsilon * d_v``, where ``epsilon = f(R) + delta`` and
``f(R) = vol(R) / vol(V \\ R)``. ``delta = 0`` gives the unmodified graph.

Nothing here materializes the augmented graph; the local flow code asks for
capacities one node at a time.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .errors import InputError, SeedTooLargeError
from .graph_core import Graph, NodeSet, conductance

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class AugmentedParams:
    alpha: float
    delta: float
    f_ratio: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise InputError(f"alpha must be positive, got {self.alpha}")
        if not self.delta >= 0:
            raise InputError(f"delta must be nonnegative, got {self.delta}")
        if not 0 < self.f_ratio <= 1:
            raise SeedTooLargeError(f"f(R) must lie in (0, 1], got {self.f_ratio}")

    @property
    def epsilon(self) -> float:
        return self.f_ratio + self.delta

    @classmethod
    def for_seed(cls, g: Graph, r: NodeSet, alpha: float, delta: float = 0.0) -> AugmentedParams:
        return cls(alpha, delta, seed_ratio(g, r))

    def with_alpha(self, alpha: float) -> AugmentedParams:
        return AugmentedParams(alpha, self.delta, self.f_ratio)

    def source_capacity(self, degree: float) -> float:
        return self.alpha * degree

    def sink_capacity(self, degree: float) -> float:
        return self.alpha * self.epsilon * degree


def check_seed(g: Graph, r: NodeSet) -> None:
    """Raise unless ``r`` is nonempty with positive volume at most vol(V \\ R)."""
    if len(r) == 0:
        raise InputError("seed set is empty")
    if r.volume <= 0:
        raise InputError("seed set has zero volume (isolated nodes only)")
    rest = g.total_volume - r.volume
    if r.volume > rest:
        raise SeedTooLargeError(
            f"seed volume {r.volume:g} exceeds complement volume {rest:g}; need vol(R) <= vol(V\\R)"
        )


def seed_ratio(g: Graph, r: NodeSet) -> float:
    """f(R) = vol(R) / vol(V \\ R), after validating the seed."""
    check_seed(g, r)
    return r.volume / (g.total_volume - r.volume)


def _split_volumes(g: Graph, r: NodeSet, s: Iterable[int]) -> tuple[NodeSet, float, float]:
    s = NodeSet.of(g, s)
    deg = g.degrees
    inside = sum(deg[v] for v in s.members & r.members)
    return s, float(inside), s.volume - float(inside)


def cut_objective(g: Graph, r: NodeSet, p: AugmentedParams, s: Iterable[int]) -> float:
    """Capacity of the s-t cut with ``s`` on the source side of the modified augmented graph."""
    check_seed(g, r)
    s, vin, vout = _split_volumes(g, r, s)
    a = p.alpha
    return a * r.volume + s.boundary - a * vin + a * p.f_ratio * vout + a * p.delta * vout


def l1_objective(g: Graph, r: NodeSet, beta: float, kappa: float, s: Iterable[int]) -> float:
    """Unmodified augmented cut objective at ``beta`` plus the penalty ``kappa * vol(S)``."""
    check_seed(g, r)
    f = r.volume / (g.total_volume - r.volume)
    s, vin, vout = _split_volumes(g, r, s)
    return beta * r.volume + s.boundary - beta * vin + beta * f * vout + kappa * s.volume


def convert_to_l1(p: AugmentedParams) -> tuple[float, float]:
    """Return ``(beta, kappa)`` such that the l1-penalized objective has the same minimizers.

    ``kappa = alpha * delta / (1 + f(R))`` and ``beta = alpha + kappa``.
    """
    kappa = p.alpha * p.delta / (1.0 + p.f_ratio)
    return p.alpha + kappa, kappa


def conductance_certificate(
    g: Graph,
    r: NodeSet,
    p: AugmentedParams,
    s: Iterable[int],
    cut_value: float,
    tol: float = DEFAULT_TOL,
) -> float | None:
    """Conductance of ``s`` when its cut beats the trivial cut ``alpha * vol(R)``.

    A cut below ``alpha * vol(R)`` forces ``phi(S) < alpha``; a violation
    means the caller computed the cut incorrectly and raises AssertionError.
    Returns None when the cut is not smaller than the trivial one.
    """
    trivial = p.alpha * r.volume
    if not cut_value < trivial * (1.0 - tol):
        return None
    phi = conductance(g, s)
    if not phi < p.alpha:
        raise AssertionError(
            f"cut {cut_value:.12g} < alpha*vol(R) = {trivial:.12g} but phi(S) = {phi:.12g} >= alpha"
        )
    return phi
