"""Transiso graphs of finite groups."""

from ._transiso import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    Error,
    Graph,
    Group,
    InvalidArgument,
    OrderLimitExceeded,
    Subgroup,
    abelian_sylow_criterion,
    adjacency,
    all_nrts_generate,
    build_graph,
    complete_for_all_divisors,
    is_complete,
    isomorphic,
    loop_class_set,
    nrt_count,
    pgroup_gamma_p_criterion,
    run_cli,
    subgroup,
    subgroups_of_order,
)

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExceeded",
    "Error",
    "Graph",
    "Group",
    "InvalidArgument",
    "OrderLimitExceeded",
    "Subgroup",
    "abelian_sylow_criterion",
    "adjacency",
    "all_nrts_generate",
    "build_graph",
    "complete_for_all_divisors",
    "is_complete",
    "isomorphic",
    "loop_class_set",
    "nrt_count",
    "pgroup_gamma_p_criterion",
    "run_cli",
    "subgroup",
    "subgroups_of_order",
]
