"""Regenerate the portrait tables and diff them against the committed fixtures.

Fixtures store functional graphs rather than portraits: the enumeration
keeps one slot placement per graph and the tables are about graphs.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from pullback.dynamics import (
    FilterOptions,
    FunctionalGraph,
    build_graph,
    constant_pullback_filter,
    enumerate_portraits,
    graph_class,
    unicritical_portrait,
)
from pullback.monodromy import belyi_obstruction, deck_group, enumerate_triples
from pullback.portrait import passport, rank_lower_bound, rank_zero_admissible
from pullback.schemas import EnumSpec, portrait_to_dict
from pullback.validation import VerdictStatus

logger = logging.getLogger(__name__)

RESOURCES_DIR = Path(__file__).parent / "resources"


def load_fixture(name: str) -> dict[str, Any]:
    with open(RESOURCES_DIR / f"{name}.json") as f:
        return json.load(f)


@dataclass
class TableDiff:
    name: str
    expected: int
    found: int
    missing: list[dict[str, str]] = field(default_factory=list)
    extra: list[dict[str, str]] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.missing and not self.extra and self.expected == self.found

    def to_dict(self) -> dict[str, Any]:
        return {
            "table": self.name,
            "expected": self.expected,
            "found": self.found,
            "ok": self.ok,
            "missing": self.missing,
            "extra": self.extra,
            **self.details,
        }


def _diff(name: str, spec: EnumSpec, graphs: list[dict[str, str]]) -> tuple[TableDiff, list]:
    portraits = enumerate_portraits(spec)
    marks = spec.value_names()
    found = {graph_class(build_graph(p), spec): p for p in portraits}
    wanted = {
        graph_class(FunctionalGraph(tuple(edge), edge, frozenset(marks)), spec): edge
        for edge in graphs
    }
    diff = TableDiff(
        name,
        expected=len(graphs),
        found=len(portraits),
        missing=[wanted[k] for k in sorted(set(wanted) - set(found))],
        extra=[build_graph(found[k]).edge for k in sorted(set(found) - set(wanted))],
    )
    return diff, portraits


def unicritical_table() -> TableDiff:
    """Each shape must have rank lower bound ``|P| - 3``."""
    fixture = load_fixture("unicritical")
    rows, wrong = [], []
    for shape in fixture["shapes"]:
        p = unicritical_portrait(shape["degree"], shape["preperiod"], shape["period"])
        bound = rank_lower_bound(p)
        row = {**shape, "size": len(p.A), "bound": bound,
               "verdict": rank_zero_admissible(p).status.value}
        rows.append(row)
        if bound != len(p.A) - 3:
            wrong.append({"shape": p.name, "bound": str(bound)})
    return TableDiff("unicritical", len(rows), len(rows) - len(wrong), extra=wrong,
                     details={"rows": rows})


def bicritical_table() -> TableDiff:
    fixture = load_fixture("bicritical_cubic")
    spec = EnumSpec(**fixture["spec"])
    diff, portraits = _diff("bicritical_cubic", spec, fixture["graphs"])
    loose = spec.model_copy(update={"max_preperiod": None})
    loose_diff, _ = _diff("bicritical_cubic-unrestricted", loose, fixture["unrestricted_graphs"])
    diff.details = {
        "portraits": [portrait_to_dict(p) for p in portraits],
        "unrestricted": loose_diff.to_dict(),
    }
    if not loose_diff.ok:
        diff.extra.append({"unrestricted": "mismatch"})
    return diff


def cubic_table(with_unproved: bool = False) -> TableDiff:
    """Cubic portraits with the deck obstruction run on every row."""
    fixture = load_fixture("cubic_three_values")
    spec = EnumSpec(**fixture["spec"])
    diff, portraits = _diff("cubic_three_values", spec, fixture["graphs"])

    verdicts = []
    for p in portraits:
        triples = enumerate_triples(p.degree, passport(p))
        verdict = belyi_obstruction(p, triples)
        verdicts.append({
            "graph": build_graph(p).edge,
            "triples": len(triples),
            "deck_orders": [len(deck_group(t)) for t in triples],
            "verdict": verdict.to_dict(),
        })
    diff.details = {
        "portraits": [portrait_to_dict(p) for p in portraits],
        "deck_obstruction": verdicts,
        "all_not_constant": all(
            v["verdict"]["status"] == VerdictStatus.NOT_CONSTANT.value for v in verdicts
        ),
    }
    if with_unproved:
        options = FilterOptions.with_unproved()
        survivors = [
            build_graph(p).edge for p in portraits
            if constant_pullback_filter(p, options).verdict == VerdictStatus.UNOBSTRUCTED
        ]
        diff.details["unproved_filter_subset"] = {
            "label": "subset left by filters stated without proof",
            "count": len(survivors),
            "graphs": survivors,
        }
    return diff


def reproduce_tables(with_unproved: bool = False) -> list[TableDiff]:
    diffs = [unicritical_table(), bicritical_table(), cubic_table(with_unproved)]
    for d in diffs:
        logger.info("%s: expected %d, found %d", d.name, d.expected, d.found)
    return diffs
