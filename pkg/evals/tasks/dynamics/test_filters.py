"""Constancy filter pipeline.

Run:
    pytest evals/tasks/dynamics/test_filters.py -v
"""

from __future__ import annotations

import pytest

from evals.conftest import load_portrait_fixture
from pullback.dynamics import (
    FILTERS,
    FilterOptions,
    TooFewMarked,
    constant_pullback_filter,
    unicritical_portrait,
)
from pullback.dynamics.filters import FilterSpec
from pullback.validation import VerdictStatus

PROVED = [
    "rank-bound",
    "marked-count",
    "simple-critical-fiber",
    "postcritical-pairing",
    "postcritical-fiber-pairs",
    "postcritical-size",
    "preperiodic-critical-value",
    "periodic-critical-values",
    "unicritical-polynomial",
    "immersion",
    "submersion",
]


def _verdicts(report) -> dict[str, str]:
    return {r.filter: r.verdict for r in report.results}


def test_registration_order() -> None:
    assert [t for t, s in FILTERS.items() if not s.optional] == PROVED
    assert FilterOptions.with_unproved().enabled == frozenset(
        {"critical-value-excess", "polynomial-postcritical"}
    )


def test_lattes_quartic_passes_everything() -> None:
    report = constant_pullback_filter(load_portrait_fixture("lattes_quartic"))
    assert report.verdict == VerdictStatus.UNOBSTRUCTED
    assert report.failed == []
    assert [r.filter for r in report.results] == PROVED


def test_z2_plus_i_fails() -> None:
    report = constant_pullback_filter(load_portrait_fixture("z2_plus_i"))
    assert report.verdict == VerdictStatus.NOT_CONSTANT
    verdicts = _verdicts(report)
    assert verdicts["rank-bound"] == "fail"
    assert verdicts["postcritical-fiber-pairs"] == "fail"
    assert verdicts["unicritical-polynomial"] == "fail"
    assert "rank-bound" in report.as_verdict().citations


def test_unproved_filters_are_labeled() -> None:
    report = constant_pullback_filter(
        load_portrait_fixture("lattes_quartic"), FilterOptions.with_unproved()
    )
    extra = [r for r in report.results if not r.proved]
    assert [r.filter for r in extra] == ["critical-value-excess", "polynomial-postcritical"]
    assert all("stated without proof" in r.detail for r in extra)
    # |P| = 4 = |V| + 1
    assert _verdicts(report)["critical-value-excess"] == "pass"


def test_crashing_filter_becomes_error_entry(monkeypatch: pytest.MonkeyPatch) -> None:
    def boom(p, g):
        raise RuntimeError("kaput")

    monkeypatch.setitem(FILTERS, "boom", FilterSpec("boom", "always crashes", boom))
    report = constant_pullback_filter(load_portrait_fixture("lattes_quartic"))
    entry = report.results[-1]
    assert entry.filter == "boom"
    assert entry.verdict == "error"
    assert "kaput" in entry.detail
    assert report.verdict == VerdictStatus.UNOBSTRUCTED


def test_too_few_marked() -> None:
    with pytest.raises(TooFewMarked):
        constant_pullback_filter(unicritical_portrait(2, 0, 2))


@pytest.mark.parametrize("d, preperiod, period", [(2, 0, 3), (2, 1, 2), (3, 0, 4), (3, 2, 1)])
def test_unicritical_shapes_not_constant(d: int, preperiod: int, period: int) -> None:
    report = constant_pullback_filter(unicritical_portrait(d, preperiod, period))
    assert report.verdict == VerdictStatus.NOT_CONSTANT
    assert _verdicts(report)["unicritical-polynomial"] == "fail"
