"""Functional graphs: decomposition and the bound |P| <= 2|V| with its equality case.

Run:
    pytest evals/tasks/dynamics/test_graph.py -v
    pytest evals/tasks/dynamics/test_graph.py -v -m "not slow"
"""

from __future__ import annotations

import pytest

from evals.conftest import load_portrait_fixture
from pullback.dynamics import (
    FunctionalGraph,
    HypothesisViolated,
    NotDynamical,
    NotPostcriticallyClosed,
    build_graph,
    decompose,
    enumerate_graphs,
    postcritical_bound,
)


def test_lattes_graph() -> None:
    g = build_graph(load_portrait_fixture("lattes_quartic"))
    assert g.edge == {"v1": "p", "v2": "p", "v3": "p", "p": "p"}
    assert g.marks == frozenset({"v1", "v2", "v3"})

    (component,) = decompose(g)
    assert component.cycle == ("p",)
    (tree,) = component.trees
    assert tree.root == "p"
    assert set(tree.leaves) == {"v1", "v2", "v3"}

    bound = postcritical_bound(g)
    assert bound.bound_holds
    assert not bound.equality


def test_equality_case() -> None:
    # v -> a -> a: the fixed point a has the two preimages v and a
    g = FunctionalGraph.from_edges({"v": "a", "a": "a"}, marks={"v"})
    bound = postcritical_bound(g)
    assert bound.size == 2 * bound.marked
    assert bound.by_cardinality and bound.by_structure and bound.by_orbits


def test_marked_cycle_breaks_equality() -> None:
    g = FunctionalGraph.from_edges({"v": "w", "w": "v"}, marks={"v", "w"})
    bound = postcritical_bound(g)
    assert bound.bound_holds and not bound.equality


def test_hypothesis_violation() -> None:
    # b = -i has the single marked preimage -1 + i
    g = build_graph(load_portrait_fixture("z2_plus_i"))
    with pytest.raises(HypothesisViolated):
        postcritical_bound(g)


def test_closure_and_dynamical_checks() -> None:
    with pytest.raises(NotPostcriticallyClosed):
        FunctionalGraph.from_edges({"v": "v", "x": "x"}, marks={"v"})
    with pytest.raises(NotDynamical):
        build_graph(load_portrait_fixture("z2_minus_1_extended"))


def test_two_components() -> None:
    g = FunctionalGraph.from_edges(
        {"v1": "a", "a": "a", "v2": "b", "b": "c", "c": "b"}, marks={"v1", "v2"}
    )
    components = decompose(g)
    assert [c.cycle for c in components] == [("a",), ("b", "c")]
    assert sorted(len(c.vertices) for c in components) == [2, 3]


@pytest.mark.slow
@pytest.mark.parametrize("n", range(1, 7))
def test_exhaustive_bound(n: int) -> None:
    """No graph on n vertices breaks the bound; the three equality tests agree
    (postcritical_bound raises CharacterizationMismatch otherwise)."""
    checked = 0
    for g in enumerate_graphs(n):
        bound = postcritical_bound(g)
        assert bound.bound_holds, str(g)
        checked += 1
    assert checked > 0
