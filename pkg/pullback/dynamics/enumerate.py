"""Exhaustive enumeration of small dynamical portraits.

Candidates are functions ``P -> P`` on the named postcritical points. A
function survives when every fiber has room for its marked preimages, the
critical values reach everything and (optionally) the constancy filters
leave it unobstructed. Marked preimages are then placed on slots in every
inequivalent way, and the results are deduplicated up to renaming the
non-critical points and permuting each swap class.
"""

from __future__ import annotations

import logging
from collections import Counter
from itertools import permutations, product
from typing import Iterator

from pullback.config import get_settings
from pullback.dynamics.filters import constant_pullback_filter
from pullback.dynamics.graph import FunctionalGraph
from pullback.errors import InvariantError
from pullback.portrait import FiberSlot, Portrait, relabel
from pullback.schemas import EnumSpec
from pullback.validation import VerdictStatus

logger = logging.getLogger(__name__)


class BudgetExceeded(InvariantError):
    """Search space larger than the configured enumeration budget."""


def enumerate_portraits(spec: EnumSpec) -> list[Portrait]:
    """All dynamical portraits matching *spec*, one per equivalence class.

    With ``group_by="graph"`` one representative is kept per marked
    functional graph; with ``"portrait"`` every inequivalent slot placement
    is kept. Output is sorted by canonical key.
    """
    d = spec.degree
    values = spec.value_names()
    extras = spec.extra_names()
    names = values + extras
    n = len(names)

    ramification = sum(m - 1 for entry in spec.critical_profile for m in entry)
    if ramification != 2 * d - 2:
        logger.info("profile %s violates Riemann-Hurwitz for d=%d", spec.critical_profile, d)
        return []
    if any(sum(entry) > d for entry in spec.critical_profile):
        logger.info("profile %s does not fit in degree %d", spec.critical_profile, d)
        return []
    if n < max(3, len(values)):
        return []

    budget = get_settings().enum_budget
    if n**n > budget:
        raise BudgetExceeded(f"{n}^{n} candidate maps exceed the budget of {budget}")

    slot_mults: dict[str, list[int]] = {b: [1] * d for b in names}
    for v, entry in zip(values, spec.critical_profile):
        slot_mults[v] = list(entry) + [1] * (d - sum(entry))

    relabelings = _relabelings(spec, extras)
    classes: dict[tuple, Portrait] = {}
    scanned = 0
    for images in product(range(n), repeat=n):
        edge = {names[i]: names[j] for i, j in enumerate(images)}
        indeg = Counter(edge.values())
        if any(indeg[b] > len(slot_mults[b]) for b in names):
            continue
        graph = FunctionalGraph(tuple(names), edge, frozenset(values))
        if graph.forward_closure(values) != set(names):
            continue
        if spec.max_preperiod is not None and any(
            graph.preperiod(v) > spec.max_preperiod for v in values
        ):
            continue
        graph_key = _graph_class(graph, relabelings)
        if spec.group_by == "graph" and graph_key in classes:
            continue

        for p in _portraits_on(graph, slot_mults, d, names):
            scanned += 1
            if spec.apply_filters and n >= 4:
                report = constant_pullback_filter(p)
                if report.verdict != VerdictStatus.UNOBSTRUCTED:
                    continue
            if spec.group_by == "graph":
                classes[graph_key] = p
                break
            key = min(_portrait_key(relabel(p, r)) for r in relabelings)
            classes.setdefault(key, p)

    logger.debug("enumeration scanned %d portraits, kept %d classes", scanned, len(classes))
    return [classes[k] for k in sorted(classes)]


def graph_class(graph: FunctionalGraph, spec: EnumSpec) -> tuple:
    """Key of *graph* up to the renamings *spec* treats as equivalent."""
    return _graph_class(graph, _relabelings(spec, spec.extra_names()))


def _graph_class(graph: FunctionalGraph, relabelings: list[dict[str, str]]) -> tuple:
    return min(graph.relabel(r).key() for r in relabelings)


def _relabelings(spec: EnumSpec, extras: list[str]) -> list[dict[str, str]]:
    groups = [extras] + [list(c) for c in spec.swap_classes]
    out = []
    for perms in product(*(permutations(g) for g in groups)):
        mapping: dict[str, str] = {}
        for group, perm in zip(groups, perms):
            mapping.update(zip(group, perm))
        out.append(mapping)
    return out


def _portraits_on(
    graph: FunctionalGraph, slot_mults: dict[str, list[int]], d: int, names: list[str]
) -> Iterator[Portrait]:
    per_fiber = [
        list(_placements(slot_mults[b], graph.preimages(b))) for b in names
    ]
    for choice in product(*per_fiber):
        yield Portrait(
            degree=d,
            A=tuple(names),
            B=tuple(names),
            fibers=dict(zip(names, choice)),
            dynamical=True,
        )


def _placements(mults: list[int], labels: list[str]) -> Iterator[tuple[FiberSlot, ...]]:
    """Assign each label a slot; slots of equal multiplicity are interchangeable."""
    free = Counter(mults)
    chosen: list[FiberSlot] = []

    def rec(i: int) -> Iterator[tuple[FiberSlot, ...]]:
        if i == len(labels):
            rest = sorted(free.elements(), reverse=True)
            yield tuple(chosen) + tuple(FiberSlot(m) for m in rest)
            return
        for m in sorted(free, reverse=True):
            if free[m] <= 0:
                continue
            free[m] -= 1
            chosen.append(FiberSlot(m, labels[i]))
            yield from rec(i + 1)
            chosen.pop()
            free[m] += 1

    yield from rec(0)


def _portrait_key(p: Portrait) -> tuple:
    return tuple(
        (b, tuple((s.mult, s.label or "") for s in p.fiber(b))) for b in sorted(p.B)
    )


# ---------------------------------------------------------------------------
# Unicritical polynomial shapes
# ---------------------------------------------------------------------------

def unicritical_portrait(d: int, preperiod: int, period: int) -> Portrait:
    """Portrait of a unicritical polynomial with the given critical orbit.

    The critical value is ``v``, its forward orbit ``p1, p2, ...`` and the
    totally ramified fixed point ``inf``. With ``preperiod == 0`` the
    critical point is the last orbit point; otherwise it is unmarked and
    the cycle entry has two marked preimages.
    """
    if d < 2 or preperiod < 0 or period < 1:
        raise InvariantError(
            f"need d >= 2, preperiod >= 0, period >= 1 (got {d}, {preperiod}, {period})"
        )
    length = preperiod + period
    if length + 1 < 3:
        raise InvariantError("the postcritical set needs at least three points")
    orbit = ["v"] + [f"p{i}" for i in range(1, length)]
    succ = {orbit[i]: orbit[i + 1] for i in range(length - 1)}
    succ[orbit[-1]] = orbit[preperiod]

    fibers: dict[str, list[FiberSlot]] = {"inf": [FiberSlot(d, "inf")]}
    for b in orbit:
        pre = [a for a in orbit if succ[a] == b]
        if b == "v":
            fibers[b] = [FiberSlot(d, pre[0] if pre else None)]
        else:
            fibers[b] = [FiberSlot(1, a) for a in pre] + [FiberSlot(1)] * (d - len(pre))

    points = tuple(orbit) + ("inf",)
    return Portrait(
        degree=d,
        A=points,
        B=points,
        fibers=fibers,
        dynamical=True,
        name=f"unicritical d={d} preperiod={preperiod} period={period}",
    )
