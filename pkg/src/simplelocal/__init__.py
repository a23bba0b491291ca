"""Strongly-local flow-based cut improvement."""

from .augmented import (
    AugmentedParams,
    conductance_certificate,
    convert_to_l1,
    cut_objective,
    l1_objective,
)
from .errors import (
    GuaranteeNotApplicable,
    InputError,
    InternalError,
    SeedTooLargeError,
    UndefinedConductanceError,
    UndefinedScoreError,
)
from .graph_core import (
    Graph,
    NodeSet,
    boundary,
    conductance,
    load_graph,
    neighborhood,
    read_edgelist,
    read_matrix_market,
    volume,
)
from .local_flow import FlowResult, exploration_bound, three_stage_flow
from .maxflow import DinicSolver, EdmondsKarpSolver, LocalFlowGraph
from .simple_local import (
    ImprovementResult,
    check_quality_guarantee,
    modified_quotient,
    refine,
    relative_quotient,
    simple_local,
)

__all__ = [
    "AugmentedParams",
    "DinicSolver",
    "EdmondsKarpSolver",
    "FlowResult",
    "Graph",
    "GuaranteeNotApplicable",
    "ImprovementResult",
    "InputError",
    "InternalError",
    "LocalFlowGraph",
    "NodeSet",
    "SeedTooLargeError",
    "UndefinedConductanceError",
    "UndefinedScoreError",
    "boundary",
    "check_quality_guarantee",
    "conductance",
    "conductance_certificate",
    "convert_to_l1",
    "cut_objective",
    "exploration_bound",
    "l1_objective",
    "load_graph",
    "modified_quotient",
    "neighborhood",
    "read_edgelist",
    "read_matrix_market",
    "refine",
    "relative_quotient",
    "simple_local",
    "three_stage_flow",
    "volume",
]
