"""Cut improvement by a decreasing sequence of local max-flow problems."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

from .augmented import DEFAULT_TOL, AugmentedParams, check_seed, seed_ratio
from .errors import GuaranteeNotApplicable, InputError, InternalError, UndefinedScoreError
from .graph_core import Graph, NodeSet, conductance, neighborhood
from .local_flow import FlowResult, exploration_bound, three_stage_flow
from .maxflow import MaxFlowSolver


def _quotient(g: Graph, r: NodeSet, s: Iterable[int], eps: float, tol: float) -> float:
    s = NodeSet.of(g, s)
    deg = g.degrees
    vin = float(sum(deg[v] for v in s.members & r.members))
    denom = vin - eps * (s.volume - vin)
    if denom <= tol * r.volume:
        raise UndefinedScoreError(f"quotient denominator {denom:g} is not positive")
    return s.boundary / denom


def relative_quotient(g: Graph, r: NodeSet, s: Iterable[int], tol: float = DEFAULT_TOL) -> float:
    """boundary(S) / (vol(R & S) - f(R) vol(S - R))."""
    r = NodeSet.of(g, r)
    return _quotient(g, r, s, seed_ratio(g, r), tol)


def modified_quotient(
    g: Graph, r: NodeSet, p: AugmentedParams, s: Iterable[int], tol: float = DEFAULT_TOL
) -> float:
    """boundary(S) / (vol(R & S) - epsilon vol(S - R)); ``p.alpha`` is ignored."""
    return _quotient(g, NodeSet.of(g, r), s, p.epsilon, tol)


@dataclass(frozen=True)
class IterationRecord:
    alpha: float
    flow: float
    size: int
    conductance: float | None
    explored_volume: float
    flow_iterations: int


@dataclass
class ImprovementResult:
    best_set: NodeSet
    best_conductance: float
    alpha_trace: list[float]
    flow_calls: int
    explored_volume: float
    exploration_bound: float
    delta: float
    seed: NodeSet
    touched_volume: float = 0.0
    per_iteration: list[IterationRecord] = field(default_factory=list)

    @property
    def locality_guaranteed(self) -> bool:
        return self.delta > 0


ALPHA_UPDATES = ("quotient", "conductance")


def simple_local(
    g: Graph,
    r: Iterable[int],
    delta: float,
    solver: MaxFlowSolver | None = None,
    tol: float = DEFAULT_TOL,
    max_iterations: int | None = None,
    alpha_update: str = "quotient",
) -> ImprovementResult:
    """Find a set near ``r`` minimizing the modified quotient score.

    Starts from ``alpha = phi(R)`` and, while the max flow of the augmented
    graph is below ``alpha * vol(R)``, accepts the minimum-cut set ``S`` and
    lowers ``alpha``. With ``alpha_update="quotient"`` the new alpha is the
    modified quotient score of ``S``, so the returned set minimizes that
    score; ``"conductance"`` uses ``phi(S)`` instead, which can stop early
    at a set with conductance below the optimum score but a larger score.

    Raises:
        InputError: empty seed, seed volume above half the total, or bad delta.
    """
    if alpha_update not in ALPHA_UPDATES:
        raise InputError(f"alpha_update must be one of {ALPHA_UPDATES}")
    if not delta >= 0:
        raise InputError(f"delta must be nonnegative, got {delta}")
    r = NodeSet.of(g, r)
    check_seed(g, r)
    phi_r = conductance(g, r)
    if phi_r == 0:
        # nothing beats a disconnected seed; no flow problem to solve
        eps = seed_ratio(g, r) + delta
        return ImprovementResult(r, 0.0, [0.0], 0, 0.0, r.volume * (1 + 2 / eps), delta, r)
    params = AugmentedParams.for_seed(g, r, phi_r, delta)
    cap = max_iterations if max_iterations is not None else g.node_count + 1

    best = r
    best_phi = params.alpha
    trace = [params.alpha]
    records: list[IterationRecord] = []
    max_explored = 0.0
    max_touched = 0.0

    def run(alpha: float) -> FlowResult:
        nonlocal max_explored, max_touched
        res = three_stage_flow(g, r, params.with_alpha(alpha), solver=solver, tol=tol)
        s = res.source_set
        phi = conductance(g, s) if 0 < len(s) < g.node_count else None
        records.append(IterationRecord(alpha, res.flow_value, len(s), phi, res.explored_volume, res.iterations))
        max_explored = max(max_explored, res.explored_volume)
        max_touched = max(max_touched, res.touched_volume)
        return res

    alpha = params.alpha
    res = run(alpha)
    while res.flow_value < alpha * r.volume * (1.0 - tol) and len(res.source_set) > 0:
        if len(trace) > cap:
            raise InternalError(f"alpha loop did not terminate within {cap} iterations")
        s = res.source_set
        phi = conductance(g, s)
        new_alpha = modified_quotient(g, r, params, s, tol) if alpha_update == "quotient" else phi
        if not new_alpha < alpha:
            raise InternalError(f"alpha did not decrease ({new_alpha!r} >= {alpha!r})")
        best, best_phi, alpha = s, phi, new_alpha
        trace.append(alpha)
        res = run(alpha)

    return ImprovementResult(
        best_set=best,
        best_conductance=best_phi,
        alpha_trace=trace,
        flow_calls=len(records),
        explored_volume=max_explored,
        exploration_bound=exploration_bound(r, params),
        delta=delta,
        seed=r,
        touched_volume=max_touched,
        per_iteration=records,
    )


def refine(g: Graph, prior: Iterable[int], delta: float, **kwargs) -> ImprovementResult:
    """Re-run :func:`simple_local` seeded with ``prior`` grown by its neighborhood."""
    prior = NodeSet.of(g, prior)
    if len(prior) == 0:
        raise InputError("refine needs a nonempty prior set")
    grown = NodeSet.of(g, prior.members | neighborhood(g, prior).members)
    return simple_local(g, grown, delta, **kwargs)


def max_admissible_gamma(g: Graph, r: Iterable[int], c: Iterable[int]) -> float:
    """Largest gamma with vol(R & C)/vol(C) >= vol(R)/vol(V) + gamma vol(V - R)/vol(V)."""
    r, c = NodeSet.of(g, r), NodeSet.of(g, c)
    if c.volume <= 0:
        raise GuaranteeNotApplicable("comparison set has zero volume")
    deg = g.degrees
    overlap = float(sum(deg[v] for v in r.members & c.members))
    total = g.total_volume
    return (overlap / c.volume - r.volume / total) * total / (total - r.volume)


def check_quality_guarantee(
    g: Graph,
    r: Iterable[int],
    delta: float,
    s_star: Iterable[int],
    c: Iterable[int],
    gamma: float | None = None,
    tol: float = DEFAULT_TOL,
) -> bool:
    """Check the cut-quality guarantee of a returned set against a comparison set ``c``.

    If ``c`` is inside the seed, phi(S*) <= phi(C) must hold. Otherwise a
    ``gamma > delta`` meeting the overlap condition is required and the check
    is phi(S*) <= phi(C) / (gamma - delta).

    Raises:
        GuaranteeNotApplicable: ``c`` is not inside the seed and ``gamma`` is
            missing, not above ``delta``, or violates the overlap condition.
    """
    r, c = NodeSet.of(g, r), NodeSet.of(g, c)
    phi_star = conductance(g, s_star)
    phi_c = conductance(g, c)
    if c.members <= r.members:
        return phi_star <= phi_c + tol
    if gamma is None:
        raise GuaranteeNotApplicable("comparison set leaves the seed; a gamma is required")
    if not gamma > delta:
        raise GuaranteeNotApplicable(f"gamma={gamma} must exceed delta={delta}")
    if gamma > max_admissible_gamma(g, r, c) + tol:
        raise GuaranteeNotApplicable(f"gamma={gamma} violates the overlap condition")
    return phi_star <= phi_c / (gamma - delta) + tol
