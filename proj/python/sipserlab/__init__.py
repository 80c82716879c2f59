"""Skewed Sipser formulas, random projections, switching-lemma machinery,
and small-distance connectivity circuits, exposed from the C++ core."""

from sipserlab._core import (
    AddressSpace,
    Circuit,
    Dnf,
    Formula,
    SipserParams,
    SPGraph,
    bad_set,
    bfs_oracle,
    build_cnf_sipser,
    build_dagger,
    build_power_circuit,
    build_skewed_sipser,
    build_squaring_circuit,
    canonical_dt_depth,
    demorgan_convert,
    enumerate_support,
    expand_restriction,
    formula_to_graph,
    is_subfunction,
    optimal_dt_depth,
    preservation_probability_exact,
    project_dnf,
    psl_monte_carlo,
    random_dnf,
    reduction_params,
    restriction_weight,
    size_budget,
)

__all__ = [
    "AddressSpace",
    "Circuit",
    "Dnf",
    "Formula",
    "SipserParams",
    "SPGraph",
    "bad_set",
    "bfs_oracle",
    "build_cnf_sipser",
    "build_dagger",
    "build_power_circuit",
    "build_skewed_sipser",
    "build_squaring_circuit",
    "canonical_dt_depth",
    "demorgan_convert",
    "enumerate_support",
    "expand_restriction",
    "formula_to_graph",
    "is_subfunction",
    "optimal_dt_depth",
    "preservation_probability_exact",
    "project_dnf",
    "psl_monte_carlo",
    "random_dnf",
    "reduction_params",
    "restriction_weight",
    "size_budget",
]
