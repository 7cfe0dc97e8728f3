"""Minimal p-cohesion regions and decentralized private k-clique counting."""

from ._core import (
    BudgetError,
    CliqueCounts,
    CohesionResult,
    ContractError,
    ExperimentConfig,
    ExperimentResult,
    Graph,
    ParseError,
    PerturbedResponse,
    Phase1Outcome,
    PrivacyParams,
    RegionMethod,
    RunRecord,
    count_cliques_at,
    elv,
    expand,
    is_p_cohesion,
    lambda_for_k4,
    load_config,
    load_edge_list,
    minimal_p_cohesion,
    phase1,
    phase2,
    run_experiment,
    sample_laplace,
    shrink,
    split_counts,
)

__all__ = [name for name in dir() if not name.startswith("_")]
