"""Necessary conditions for a constant pullback, run as an ordered pipeline.

Each filter looks at a dynamical portrait (and its functional graph) and
answers ``pass``, ``fail`` or ``skip``. A failure proves the pullback is
not constant. Filters are registered with :func:`register_filter`; the
pipeline never raises for a crashing filter, it records an ``error`` entry.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable

from pullback.dynamics.graph import FunctionalGraph, build_graph
from pullback.errors import InvariantError
from pullback.portrait import (
    Portrait,
    critical_slots,
    critical_values,
    ell1,
    ell2,
    immersion_criterion,
    rank_lower_bound,
    require_valid,
    submersion_criterion,
)
from pullback.schemas import FilterResultModel
from pullback.validation import Reason, Verdict, VerdictStatus

logger = logging.getLogger(__name__)


class TooFewMarked(InvariantError):
    """Fewer than four postcritical points."""


PASS, FAIL, SKIP, ERROR = "pass", "fail", "skip", "error"

FilterFn = Callable[[Portrait, FunctionalGraph], tuple[str, str]]


@dataclass(frozen=True)
class FilterSpec:
    tag: str
    citation: str
    fn: FilterFn
    optional: bool = False


FILTERS: dict[str, FilterSpec] = {}


def register_filter(tag: str, citation: str, optional: bool = False):
    """Decorator: append a filter to the pipeline under *tag*."""
    def _wrap(fn: FilterFn) -> FilterFn:
        FILTERS[tag] = FilterSpec(tag, citation, fn, optional)
        return fn
    return _wrap


@dataclass(frozen=True)
class FilterOptions:
    """Optional filters to run besides the proved ones (off by default)."""

    enabled: frozenset[str] = frozenset()

    @classmethod
    def with_unproved(cls) -> FilterOptions:
        return cls(frozenset(t for t, s in FILTERS.items() if s.optional))


@dataclass(frozen=True)
class FilterResult:
    filter: str
    citation: str
    verdict: str
    detail: str
    proved: bool = True

    def to_dict(self) -> dict[str, Any]:
        return FilterResultModel(
            filter=self.filter,
            citation=self.citation,
            verdict=self.verdict,
            detail=self.detail,
            proved=self.proved,
        ).model_dump()


@dataclass(frozen=True)
class FilterReport:
    verdict: VerdictStatus
    results: tuple[FilterResult, ...] = field(default_factory=tuple)

    @property
    def failed(self) -> list[str]:
        return [r.filter for r in self.results if r.verdict == FAIL]

    def as_verdict(self) -> Verdict:
        return Verdict(
            self.verdict,
            tuple(Reason(r.filter, r.detail) for r in self.results if r.verdict == FAIL),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "results": [r.to_dict() for r in self.results],
        }


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

def constant_pullback_filter(
    p: Portrait, options: FilterOptions | None = None
) -> FilterReport:
    """Run the pipeline; ``NotConstant`` as soon as any filter fails."""
    options = options or FilterOptions()
    require_valid(p)
    g = build_graph(p)
    if len(g.vertices) < 4:
        raise TooFewMarked(f"|P| = {len(g.vertices)} < 4; the pullback is trivially constant")

    results: list[FilterResult] = []
    for spec in FILTERS.values():
        if spec.optional and spec.tag not in options.enabled:
            continue
        try:
            verdict, detail = spec.fn(p, g)
        except Exception as e:
            logger.exception("filter %s failed on %s", spec.tag, p.name or p)
            verdict, detail = ERROR, f"{type(e).__name__}: {e}"
        if spec.optional:
            detail = f"{detail} (stated without proof)"
        results.append(FilterResult(spec.tag, spec.citation, verdict, detail, not spec.optional))

    status = (
        VerdictStatus.NOT_CONSTANT
        if any(r.verdict == FAIL for r in results)
        else VerdictStatus.UNOBSTRUCTED
    )
    return FilterReport(status, tuple(results))


def _topological_polynomial_point(p: Portrait) -> str | None:
    """A totally ramified fixed point, if there is one."""
    for b in p.B:
        slots = p.fiber(b)
        if len(slots) == 1 and slots[0].label == b:
            return b
    return None


# ---------------------------------------------------------------------------
# Proved filters
# ---------------------------------------------------------------------------

@register_filter("rank-bound", "rank lower bound min(l1 + l2, |P| - 3)")
def _rank_bound(p: Portrait, g: FunctionalGraph) -> tuple[str, str]:
    bound = rank_lower_bound(p)
    detail = f"l1={ell1(p)}, l2={ell2(p)}, bound={bound}"
    return (FAIL if bound > 0 else PASS), detail


@register_filter("marked-count", "rank zero needs |A| <= d + 2")
def _marked_count(p: Portrait, g: FunctionalGraph) -> tuple[str, str]:
    ok = len(p.A) <= p.degree + 2
    return (PASS if ok else FAIL), f"|P|={len(p.A)}, d+2={p.degree + 2}"


@register_filter(
    "simple-critical-fiber",
    "unmarked fiber of simple critical points: |A| <= #critical points + 2",
)
def _simple_critical_fiber(p: Portrait, g: FunctionalGraph) -> tuple[str, str]:
    applicable = False
    for b in critical_values(p):
        slots = p.fiber(b)
        crit = [s for s in slots if s.critical]
        if any(s.label for s in slots) or any(s.mult != 2 for s in crit):
            continue
        applicable = True
        if len(p.A) > len(crit) + 2:
            return FAIL, f"over {b}: |P|={len(p.A)} > {len(crit)} + 2"
    if not applicable:
        return SKIP, "no critical value with an unmarked fiber of simple critical points"
    return PASS, "improved marked-point bound holds"


@register_filter(
    "postcritical-pairing",
    "rank zero: every f(a) is a critical value or has a second marked preimage",
)
def _postcritical_pairing(p: Portrait, g: FunctionalGraph) -> tuple[str, str]:
    crit = set(critical_values(p))
    lonely = [
        a for a in p.A
        if g.edge[a] not in crit and g.indegree(g.edge[a]) < 2
    ]
    if lonely:
        return FAIL, f"f(a) is a regular value with a single marked preimage for a in {lonely}"
    return PASS, "every regular image has two marked preimages"


@register_filter(
    "postcritical-fiber-pairs",
    "rank zero: |f^-1(p) ∩ P| >= 2 for p in P - V",
)
def _postcritical_fiber_pairs(p: Portrait, g: FunctionalGraph) -> tuple[str, str]:
    short = [v for v in g.vertices if v not in g.marks and g.indegree(v) < 2]
    if short:
        return FAIL, f"non-critical postcritical points with < 2 preimages: {short}"
    return PASS, "all non-critical postcritical points have >= 2 preimages"


@register_filter("postcritical-size", "rank zero: |P| <= min(2|V|, d + 2)")
def _postcritical_size(p: Portrait, g: FunctionalGraph) -> tuple[str, str]:
    size, marks = len(g.vertices), len(g.marks)
    cap = min(2 * marks, p.degree + 2)
    detail = f"|P|={size}, 2|V|={2 * marks}, d+2={p.degree + 2}"
    return (PASS if size <= cap else FAIL), detail


@register_filter(
    "preperiodic-critical-value",
    "strictly preperiodic critical value off f(P) over one simple critical point",
)
def _preperiodic_critical_value(p: Portrait, g: FunctionalGraph) -> tuple[str, str]:
    image = set(g.edge.values())
    for v in sorted(g.marks):
        if v in image or g.is_periodic(v):
            continue
        crit = [s for s in p.fiber(v) if s.critical]
        if len(crit) == 1 and crit[0].mult == 2:
            return FAIL, f"{v} is strictly preperiodic, not in f(P), over one simple critical point"
    return PASS, "no such critical value"


@register_filter(
    "periodic-critical-values",
    "all critical values periodic and |V| >= 3: rank >= |P| - |V|",
)
def _periodic_critical_values(p: Portrait, g: FunctionalGraph) -> tuple[str, str]:
    if len(g.marks) < 3 or not all(g.is_periodic(v) for v in g.marks):
        return SKIP, "needs at least three critical values, all periodic"
    excess = len(g.vertices) - len(g.marks)
    return (FAIL if excess > 0 else PASS), f"rank >= |P| - |V| = {excess}"


@register_filter(
    "unicritical-polynomial",
    "unicritical topological polynomial: pullback is a local isomorphism",
)
def _unicritical_polynomial(p: Portrait, g: FunctionalGraph) -> tuple[str, str]:
    fixed = _topological_polynomial_point(p)
    if fixed is None or len(critical_slots(p)) != 2:
        return SKIP, "not a unicritical topological polynomial"
    return FAIL, f"rank = |P| - 3 = {len(p.A) - 3} (totally ramified fixed point {fixed})"


@register_filter(
    "immersion", "three critical values, f(P) = P, no regular fiber meets P twice"
)
def _immersion(p: Portrait, g: FunctionalGraph) -> tuple[str, str]:
    rank = immersion_criterion(p)
    if rank is None:
        return SKIP, "immersion criterion does not apply"
    return (FAIL if rank > 0 else PASS), f"pullback is an immersion, rank = {rank}"


@register_filter(
    "submersion", "f injective on P with at most three marked points in critical fibers"
)
def _submersion(p: Portrait, g: FunctionalGraph) -> tuple[str, str]:
    rank = submersion_criterion(p)
    if rank is None:
        return SKIP, "submersion criterion does not apply"
    return (FAIL if rank > 0 else PASS), f"pullback is a submersion, rank = {rank}"


# ---------------------------------------------------------------------------
# Optional filters
# ---------------------------------------------------------------------------

@register_filter("critical-value-excess", "constant pullback: |P| <= |V| + 1", optional=True)
def _critical_value_excess(p: Portrait, g: FunctionalGraph) -> tuple[str, str]:
    size, marks = len(g.vertices), len(g.marks)
    return (PASS if size <= marks + 1 else FAIL), f"|P|={size}, |V|+1={marks + 1}"


@register_filter(
    "polynomial-postcritical",
    "topological polynomial: |P| <= 2 * #finite critical values - 1",
    optional=True,
)
def _polynomial_postcritical(p: Portrait, g: FunctionalGraph) -> tuple[str, str]:
    fixed = _topological_polynomial_point(p)
    if fixed is None:
        return SKIP, "not a topological polynomial"
    finite = len(g.marks - {fixed})
    cap = 2 * finite - 1
    return (PASS if len(g.vertices) <= cap else FAIL), f"|P|={len(g.vertices)}, cap={cap}"
