"""Portrait enumeration and the committed table fixtures.

Run:
    pytest evals/tasks/dynamics/test_enumerate.py -v
"""

from __future__ import annotations

import pytest
from pydantic import ValidationError

from pullback.config import get_settings
from pullback.dynamics import (
    BudgetExceeded,
    FunctionalGraph,
    build_graph,
    enumerate_portraits,
    graph_class,
)
from pullback.portrait import require_valid
from pullback.schemas import EnumSpec
from pullback.tables import bicritical_table, cubic_table, load_fixture, unicritical_table


def test_riemann_hurwitz_consistent_profile() -> None:
    spec = EnumSpec(degree=3, critical_profile=[[3], [2], [2]], num_postcritical=4)
    portraits = enumerate_portraits(spec)
    assert portraits
    for p in portraits:
        require_valid(p)


def test_inconsistent_profile_is_empty() -> None:
    spec = EnumSpec(degree=3, critical_profile=[[3], [3], [2]], num_postcritical=4)
    assert enumerate_portraits(spec) == []


def test_spec_validation() -> None:
    with pytest.raises(ValidationError):
        EnumSpec(degree=3, critical_profile=[[1]], num_postcritical=3)
    with pytest.raises(ValidationError):
        EnumSpec(degree=3, critical_profile=[[2], [3]], num_postcritical=3, swap_classes=[["v1", "v2"]])
    with pytest.raises(ValidationError):
        EnumSpec(degree=3, critical_profile=[[3]], num_postcritical=3, colour="red")


def test_budget(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("PULLBACK_ENUM_BUDGET", "10")
    get_settings.cache_clear()
    spec = EnumSpec(degree=3, critical_profile=[[2], [2], [3]], num_postcritical=4)
    with pytest.raises(BudgetExceeded):
        enumerate_portraits(spec)


def test_swap_classes_merge_mirror_graphs() -> None:
    spec = EnumSpec(
        degree=3,
        critical_profile=[[2], [2], [3]],
        num_postcritical=4,
        swap_classes=[["v1", "v2"]],
    )
    a = FunctionalGraph(("v1", "v2", "v3", "t"), {"v1": "t", "v2": "v2", "v3": "t", "t": "t"}, {"v1", "v2", "v3"})
    b = FunctionalGraph(("v1", "v2", "v3", "t"), {"v2": "t", "v1": "v1", "v3": "t", "t": "t"}, {"v1", "v2", "v3"})
    assert graph_class(a, spec) == graph_class(b, spec)
    plain = spec.model_copy(update={"swap_classes": []})
    assert graph_class(a, plain) != graph_class(b, plain)


def test_group_by_portrait_keeps_placements() -> None:
    base = dict(degree=3, critical_profile=[[2], [2], [3]], num_postcritical=4)
    by_graph = enumerate_portraits(EnumSpec(**base))
    by_portrait = enumerate_portraits(EnumSpec(**base, group_by="portrait"))
    assert len(by_portrait) >= len(by_graph)
    graphs = {build_graph(p) for p in by_portrait}
    assert len(graphs) == len({build_graph(p) for p in by_graph})


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------

def test_unicritical_table() -> None:
    diff = unicritical_table()
    assert diff.ok, diff.to_dict()
    assert [row["bound"] for row in diff.details["rows"]] == [
        row["size"] - 3 for row in diff.details["rows"]
    ]


def test_bicritical_table() -> None:
    diff = bicritical_table()
    assert diff.ok, diff.to_dict()
    assert diff.found == 2
    assert diff.details["unrestricted"]["found"] == 3


@pytest.mark.slow
def test_cubic_table() -> None:
    diff = cubic_table()
    assert diff.ok, diff.to_dict()
    assert diff.found == len(load_fixture("cubic_three_values")["graphs"]) == 7
    assert diff.details["all_not_constant"]
    for row in diff.details["deck_obstruction"]:
        assert row["triples"] >= 1
        assert set(row["deck_orders"]) == {1}


@pytest.mark.slow
def test_cubic_portraits_never_return_to_the_full_branch_value() -> None:
    spec = EnumSpec(**load_fixture("cubic_three_values")["spec"])
    for p in enumerate_portraits(spec):
        g = build_graph(p)
        assert g.indegree("v3") == 0, str(g)
        assert g.edge["v3"] in ("t", "v1", "v2")
