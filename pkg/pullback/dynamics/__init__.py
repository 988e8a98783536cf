"""Postcritical dynamics: functional graphs, constancy filters, enumeration."""

from pullback.dynamics.enumerate import (
    BudgetExceeded,
    enumerate_portraits,
    graph_class,
    unicritical_portrait,
)
from pullback.dynamics.filters import (
    FILTERS,
    FilterOptions,
    FilterReport,
    FilterResult,
    TooFewMarked,
    constant_pullback_filter,
    register_filter,
)
from pullback.dynamics.graph import (
    CharacterizationMismatch,
    Component,
    FunctionalGraph,
    HypothesisViolated,
    NotDynamical,
    NotPostcriticallyClosed,
    PostcriticalBound,
    Tree,
    build_graph,
    check_hypothesis,
    decompose,
    enumerate_graphs,
    postcritical_bound,
)

__all__ = [
    "FILTERS",
    "BudgetExceeded",
    "CharacterizationMismatch",
    "Component",
    "FilterOptions",
    "FilterReport",
    "FilterResult",
    "FunctionalGraph",
    "HypothesisViolated",
    "NotDynamical",
    "NotPostcriticallyClosed",
    "PostcriticalBound",
    "TooFewMarked",
    "Tree",
    "build_graph",
    "check_hypothesis",
    "constant_pullback_filter",
    "decompose",
    "enumerate_graphs",
    "enumerate_portraits",
    "graph_class",
    "postcritical_bound",
    "register_filter",
    "unicritical_portrait",
]
