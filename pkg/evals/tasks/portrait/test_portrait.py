"""Portrait suite: admissibility, rank counts, rank-zero verdicts, composition.

The YAML cases go through the CLI exactly as `python -m evals` replays them.

Run:
    pytest evals/tasks/portrait/ -v
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

import pytest
import yaml

from evals.conftest import load_portrait_fixture
from evals.runner import grade_cli_case, run_cli_case
from pullback.dynamics import unicritical_portrait
from pullback.portrait import (
    FiberSlot,
    InvalidPortrait,
    MarkingMismatch,
    Portrait,
    canonical,
    compose_portraits,
    composition_rank_cap,
    ell1,
    ell2,
    immersion_criterion,
    passport,
    postcritical_preimages,
    rank_lower_bound,
    rank_zero_admissible,
    relabel,
    require_valid,
    submersion_criterion,
    validate_portrait,
)
from pullback.validation import VerdictStatus

CASES_PATH = Path(__file__).parent / "cases.yaml"


def _load_cases() -> list[dict[str, Any]]:
    with open(CASES_PATH) as f:
        return yaml.safe_load(f)


_CASES = _load_cases()


def _case_id(case: dict[str, Any]) -> str:
    return case["id"]


@pytest.mark.parametrize("case", _CASES, ids=_case_id)
def test_analyze_case(case: dict[str, Any]) -> None:
    status, report = run_cli_case(case)
    grade = grade_cli_case(case, status, report)
    assert grade["passed"], grade["errors"]


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def _z2() -> Portrait:
    return load_portrait_fixture("z2_three_points")


class TestValidation:
    def test_fixtures_are_valid(self) -> None:
        for name in ("lattes_quartic", "z2_plus_i", "z2_minus_1_extended", "z2_three_points"):
            result = validate_portrait(load_portrait_fixture(name))
            assert result.ok, result.to_dict()

    def test_failures_are_entries_not_exceptions(self) -> None:
        result = validate_portrait(load_portrait_fixture("bad_riemann_hurwitz"))
        assert not result.ok
        assert result.failed == ["riemann-hurwitz"]
        with pytest.raises(InvalidPortrait):
            require_valid(load_portrait_fixture("bad_riemann_hurwitz"))

    def test_label_used_twice(self) -> None:
        p = Portrait(
            degree=2,
            A=("0", "1", "inf"),
            B=("0", "1", "inf"),
            fibers={
                "0": [FiberSlot(2, "0")],
                "1": [FiberSlot(1, "1"), FiberSlot(1, "1")],
                "inf": [FiberSlot(2, "inf")],
            },
        )
        assert "labels" in validate_portrait(p).failed

    def test_dynamical_needs_closure(self) -> None:
        # 1 is fixed but never reached from the critical values 0 and inf
        p = Portrait(
            degree=2,
            A=("0", "1", "inf"),
            B=("0", "1", "inf"),
            fibers={
                "0": [FiberSlot(2, "0")],
                "1": [FiberSlot(1, "1"), FiberSlot(1)],
                "inf": [FiberSlot(2, "inf")],
            },
            dynamical=True,
        )
        assert validate_portrait(p).failed == ["postcritical-closure"]

    def test_degree_one_is_a_warning(self) -> None:
        p = Portrait(1, ("0", "1", "inf"), ("0", "1", "inf"), {
            "0": [FiberSlot(1, "0")],
            "1": [FiberSlot(1, "1")],
            "inf": [FiberSlot(1, "inf")],
        })
        result = validate_portrait(p)
        assert result.ok
        assert result.status == "warnings"
        assert [w["check"] for w in result.to_dict()["warnings"]] == ["degree"]

    def test_slot_order_is_canonical(self) -> None:
        a = Portrait(2, ("0", "1", "inf"), ("0", "1", "inf"), {
            "0": [FiberSlot(2, "0")],
            "1": [FiberSlot(1), FiberSlot(1, "1")],
            "inf": [FiberSlot(2, "inf")],
        })
        assert a == _z2()
        assert canonical(a) == a


# ---------------------------------------------------------------------------
# Counts
# ---------------------------------------------------------------------------

class TestCounts:
    def test_lattes_quartic(self) -> None:
        p = load_portrait_fixture("lattes_quartic")
        assert (ell1(p), ell2(p), rank_lower_bound(p)) == (0, 0, 0)
        assert postcritical_preimages(p) == 0
        assert passport(p) == [[3, 1], [3, 1], [3, 1]]
        assert rank_zero_admissible(p).status == VerdictStatus.POSSIBLE

    def test_z2_plus_i(self) -> None:
        p = load_portrait_fixture("z2_plus_i")
        assert (ell1(p), ell2(p), rank_lower_bound(p)) == (1, 1, 1)
        verdict = rank_zero_admissible(p)
        assert verdict.status == VerdictStatus.BLOCKED
        assert "rank-bound" in verdict.citations
        assert "simple-critical-fiber" in verdict.citations

    def test_three_point_target_is_informational(self) -> None:
        verdict = rank_zero_admissible(_z2())
        assert verdict.status == VerdictStatus.POSSIBLE
        assert verdict.citations == []
        assert [r.citation for r in verdict.reasons] == ["three-point-target"]

    @pytest.mark.parametrize("d, preperiod, period", [(2, 0, 3), (2, 1, 2), (3, 0, 4), (3, 2, 1)])
    def test_unicritical_bound_is_full(self, d: int, preperiod: int, period: int) -> None:
        p = unicritical_portrait(d, preperiod, period)
        require_valid(p)
        assert rank_lower_bound(p) == len(p.A) - 3

    def test_immersion_and_submersion(self) -> None:
        p = load_portrait_fixture("z2_minus_1_extended")
        # f|A is injective and only 0 and inf lie over critical values
        assert submersion_criterion(p) == 1
        # two critical values only
        assert immersion_criterion(p) is None


# ---------------------------------------------------------------------------
# Transformations
# ---------------------------------------------------------------------------

class TestComposition:
    def test_z4_from_z2(self) -> None:
        f = _z2()
        composite = compose_portraits(f, f)
        assert composite.degree == 4
        assert composite.fiber("0") == (FiberSlot(4, "0"),)
        assert composite.fiber("inf") == (FiberSlot(4, "inf"),)
        assert sorted(s.mult for s in composite.fiber("1")) == [1, 1, 1, 1]
        assert composition_rank_cap(f, f) == 0

    def test_marking_mismatch(self) -> None:
        f = _z2()
        g = relabel(_z2(), {"1": "one"})
        with pytest.raises(MarkingMismatch):
            compose_portraits(f, g)

    def test_relabel_round_trip(self) -> None:
        p = load_portrait_fixture("z2_plus_i")
        q = relabel(relabel(p, {"a": "x", "b": "y"}), {"x": "a", "y": "b"})
        assert q == p
