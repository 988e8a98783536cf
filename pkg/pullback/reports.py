"""Report assembly and rendering for the command line.

JSON and text output carry the same dictionary: text is its YAML dump.
"""

from __future__ import annotations

import json
import logging
from typing import Any

import yaml
from pydantic_core import to_jsonable_python

from pullback.dynamics import (
    FilterOptions,
    HypothesisViolated,
    build_graph,
    constant_pullback_filter,
    decompose,
    postcritical_bound,
)
from pullback.portrait import (
    Portrait,
    ell1,
    ell2,
    immersion_criterion,
    passport,
    rank_lower_bound,
    rank_zero_admissible,
    require_valid,
    submersion_criterion,
    validate_portrait,
)
from pullback.schemas import ReportModel
from pullback.validation import Verdict

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_INVARIANT = 3


def make_report(
    command: str,
    results: dict[str, Any],
    citations: list[str] | None = None,
    exit_status: int = EXIT_OK,
) -> ReportModel:
    return ReportModel(
        command=command,
        results=results,
        citations=sorted(set(citations or [])),
        exit_status=exit_status,
    )


def render(report: ReportModel, as_json: bool = False) -> str:
    # field elements and polynomials fall back to their printed form
    data = to_jsonable_python(report.model_dump(), fallback=str)
    if as_json:
        return json.dumps(data, indent=2)
    return yaml.safe_dump(data, sort_keys=False, allow_unicode=True)


def verdict_exit(verdict: Verdict) -> int:
    return EXIT_NEGATIVE if verdict.negative else EXIT_OK


# ---------------------------------------------------------------------------
# Portrait analysis
# ---------------------------------------------------------------------------

def analyze_portrait(p: Portrait, options: FilterOptions | None = None) -> ReportModel:
    """Rank counts, rank-zero verdict, graph data and the constancy filters."""
    require_valid(p)
    rank_zero = rank_zero_admissible(p)
    results: dict[str, Any] = {
        "portrait": p.name or str(p),
        "validation": validate_portrait(p).to_dict(),
        "ell1": ell1(p),
        "ell2": ell2(p),
        "rank_lower_bound": rank_lower_bound(p),
        "passport": passport(p),
        "rank_zero": rank_zero.to_dict(),
        "immersion_rank": immersion_criterion(p),
        "submersion_rank": submersion_criterion(p),
    }
    citations = list(rank_zero.citations)
    verdict = rank_zero

    if p.dynamical:
        graph = build_graph(p)
        results["graph"] = graph.to_dict()
        results["components"] = [c.to_dict() for c in decompose(graph)]
        try:
            results["postcritical_bound"] = postcritical_bound(graph).to_dict()
        except HypothesisViolated as e:
            results["postcritical_bound"] = {"skipped": str(e)}
        if len(p.A) >= 4:
            report = constant_pullback_filter(p, options)
            results["filters"] = report.to_dict()
            verdict = report.as_verdict()
            citations += verdict.citations

    results["verdict"] = verdict.status.value
    logger.debug("analyze %s: %s", p.name, verdict.status.value)
    return make_report("analyze", results, citations, verdict_exit(verdict))
