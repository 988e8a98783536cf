"""Combinatorial portraits of marked branched covers and their rank bounds.

A portrait records, for every target marked point ``b``, the full fiber of
the cover over ``b`` as slots ``(mult, label)``. Fibers over unmarked
points are implicit: all slots regular and unlabeled. Admissibility puts
every critical value in ``B``, so every critical point sits in a stored
fiber and the counts below see all of them.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from pullback.errors import InvariantError
from pullback.validation import (
    Reason,
    ValidationResult,
    Verdict,
    VerdictStatus,
)

logger = logging.getLogger(__name__)


class InvalidPortrait(InvariantError):
    """Portrait fails an admissibility check."""


class MarkingMismatch(InvariantError):
    """Middle marked sets of a composition differ."""


class CompositionIncomplete(InvariantError):
    """Inner cover has no fiber data over a labeled point of the outer one."""


# ---------------------------------------------------------------------------
# Data model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiberSlot:
    """One preimage point: local multiplicity and optional marked label."""

    mult: int
    label: str | None = None

    @property
    def critical(self) -> bool:
        return self.mult >= 2

    def sort_key(self) -> tuple:
        return (-self.mult, self.label is None, self.label or "")


def _slots(raw: Iterable[FiberSlot | tuple | Mapping]) -> tuple[FiberSlot, ...]:
    out = []
    for s in raw:
        if isinstance(s, FiberSlot):
            out.append(s)
        elif isinstance(s, Mapping):
            out.append(FiberSlot(int(s["mult"]), s.get("label")))
        else:
            out.append(FiberSlot(*s))
    return tuple(sorted(out, key=FiberSlot.sort_key))


@dataclass(frozen=True, eq=False)
class Portrait:
    """Degree, marked sets and fibers of an admissible cover ``(S^2,A) -> (S^2,B)``.

    Slots are kept in canonical order (multiplicity descending, labeled
    first, then by label), so equal portraits compare equal.
    """

    degree: int
    A: tuple[str, ...]
    B: tuple[str, ...]
    fibers: Mapping[str, tuple[FiberSlot, ...]]
    dynamical: bool = False
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "A", tuple(self.A))
        object.__setattr__(self, "B", tuple(self.B))
        object.__setattr__(
            self, "fibers", {b: _slots(slots) for b, slots in self.fibers.items()}
        )

    def key(self) -> tuple:
        return (
            self.degree,
            frozenset(self.A),
            frozenset(self.B),
            tuple(sorted(self.fibers.items())),
            self.dynamical,
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Portrait) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def fiber(self, b: str) -> tuple[FiberSlot, ...]:
        return self.fibers.get(b, ())

    def image(self, a: str) -> str:
        """The target point whose fiber carries the label *a*."""
        for b, slots in self.fibers.items():
            if any(s.label == a for s in slots):
                return b
        raise InvalidPortrait(f"marked point {a!r} labels no slot")

    def as_map(self) -> dict[str, str]:
        return {s.label: b for b, slots in self.fibers.items() for s in slots if s.label}

    def __str__(self) -> str:
        parts = []
        for b in self.B:
            slots = ", ".join(
                f"{s.mult}{':' + s.label if s.label else ''}" for s in self.fiber(b)
            )
            parts.append(f"{b}<-[{slots}]")
        return f"d={self.degree} " + " ".join(parts)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate_portrait(p: Portrait) -> ValidationResult:
    """Run every admissibility check; failures are report entries."""
    result = ValidationResult(p.name or "portrait")

    if p.degree > 1:
        result.add_valid("degree")
    elif p.degree == 1:
        result.add_warning("degree", "degree 1: a Mobius map, the pullback is an isomorphism")
    else:
        result.add_error("degree", f"degree must be positive, got {p.degree}")

    if len(set(p.A)) != len(p.A) or len(set(p.B)) != len(p.B):
        result.add_error("distinct-markings", "A and B must not repeat symbols")
    else:
        result.add_valid("distinct-markings")

    if len(set(p.A)) >= 3 and len(set(p.B)) >= 3:
        result.add_valid("marked-sizes")
    else:
        result.add_error(
            "marked-sizes", f"|A|={len(set(p.A))}, |B|={len(set(p.B))}; both must be >= 3"
        )

    if set(p.fibers) == set(p.B):
        result.add_valid("fiber-keys")
    else:
        missing = sorted(set(p.B) - set(p.fibers))
        extra = sorted(set(p.fibers) - set(p.B))
        result.add_error("fiber-keys", f"missing fibers {missing}, extra fibers {extra}")

    bad_sums = {
        b: sum(s.mult for s in slots)
        for b, slots in p.fibers.items()
        if sum(s.mult for s in slots) != p.degree or any(s.mult < 1 for s in slots)
    }
    if bad_sums:
        result.add_error(
            "fiber-sum",
            f"fibers not summing to d={p.degree} (or with a slot of mult < 1): {bad_sums}",
        )
    else:
        result.add_valid("fiber-sum")

    labels = Counter(s.label for slots in p.fibers.values() for s in slots if s.label)
    problems = []
    for a in p.A:
        if labels[a] != 1:
            problems.append(f"{a} labels {labels[a]} slots")
    for a in labels:
        if a not in p.A:
            problems.append(f"{a} is not in A")
    if problems:
        result.add_error("labels", "; ".join(problems))
    else:
        result.add_valid("labels")

    ramification = sum(s.mult - 1 for slots in p.fibers.values() for s in slots)
    if ramification == 2 * p.degree - 2:
        result.add_valid("riemann-hurwitz")
    else:
        result.add_error(
            "riemann-hurwitz",
            f"sum of (mult - 1) is {ramification}, expected {2 * p.degree - 2}",
        )

    if p.dynamical:
        if set(p.A) != set(p.B):
            result.add_error("dynamical", "dynamical portrait needs A == B")
        elif result.ok:
            result.add_valid("dynamical")
            _check_closure(p, result)
    return result


def _check_closure(p: Portrait, result: ValidationResult) -> None:
    f = p.as_map()
    reached: set[str] = set()
    frontier = list(critical_values(p))
    while frontier:
        x = frontier.pop()
        if x in reached:
            continue
        reached.add(x)
        frontier.append(f[x])
    if reached == set(p.A):
        result.add_valid("postcritical-closure")
    else:
        result.add_error(
            "postcritical-closure",
            f"not in the forward orbit of a critical value: {sorted(set(p.A) - reached)}",
        )


def require_valid(p: Portrait) -> None:
    result = validate_portrait(p)
    if not result.ok:
        raise InvalidPortrait(
            f"invalid portrait ({', '.join(result.failed)}): "
            + "; ".join(i.message for i in result.issues if i.severity == "error")
        )


# ---------------------------------------------------------------------------
# Fiber statistics
# ---------------------------------------------------------------------------

def critical_values(p: Portrait) -> list[str]:
    return [b for b in p.B if any(s.critical for s in p.fiber(b))]


def critical_slots(p: Portrait) -> list[tuple[str, FiberSlot]]:
    return [(b, s) for b in p.B for s in p.fiber(b) if s.critical]


def passport(p: Portrait) -> list[list[int]]:
    """Multiplicities over each critical value, descending."""
    return [[s.mult for s in p.fiber(b)] for b in critical_values(p)]


def postcritical_preimages(p: Portrait) -> int:
    """``|A ∩ f^-1(V)|``: labeled slots lying over critical values."""
    return sum(1 for b in critical_values(p) for s in p.fiber(b) if s.label)


def ell1(p: Portrait) -> int:
    """Regular values in B with exactly one marked preimage."""
    require_valid(p)
    count = 0
    for b in p.B:
        slots = p.fiber(b)
        if all(s.mult == 1 for s in slots) and sum(1 for s in slots if s.label) == 1:
            count += 1
    return count


def ell2(p: Portrait) -> int:
    """Unmarked simple critical points alone in an unmarked fiber."""
    require_valid(p)
    count = 0
    for b in p.B:
        slots = p.fiber(b)
        if any(s.label for s in slots):
            continue
        crit = [s for s in slots if s.critical]
        if len(crit) == 1 and crit[0].mult == 2:
            count += 1
    return count


def rank_lower_bound(p: Portrait) -> int:
    return min(ell1(p) + ell2(p), len(p.A) - 3)


def rank_zero_admissible(p: Portrait) -> Verdict:
    """Can the derivative of the pullback map vanish somewhere?"""
    require_valid(p)
    reasons: list[Reason] = []
    bound = rank_lower_bound(p)
    if bound > 0:
        reasons.append(
            Reason("rank-bound", f"rank >= min(l1 + l2, |A| - 3) = {bound} everywhere")
        )
    if len(p.A) > p.degree + 2:
        reasons.append(
            Reason("marked-count", f"|A| = {len(p.A)} exceeds d + 2 = {p.degree + 2}")
        )
    for b in critical_values(p):
        slots = p.fiber(b)
        crit = [s for s in slots if s.critical]
        if any(s.label for s in slots) or any(s.mult != 2 for s in crit):
            continue
        if len(p.A) > len(crit) + 2:
            reasons.append(
                Reason(
                    "simple-critical-fiber",
                    f"{len(crit)} simple critical points over unmarked-fiber value {b}; "
                    f"|A| = {len(p.A)} > {len(crit) + 2}",
                )
            )
    if len(p.B) == 3:
        reasons.append(
            Reason(
                "three-point-target",
                "target Teichmuller space is a point; the pullback is constant "
                f"and |A| <= |f^-1(B)| = d + 2 = {p.degree + 2}",
                informational=True,
            )
        )
    blocked = any(not r.informational for r in reasons)
    return Verdict(VerdictStatus.BLOCKED if blocked else VerdictStatus.POSSIBLE, tuple(reasons))


def immersion_criterion(p: Portrait) -> int | None:
    """Forced rank ``|B| - 3`` when the pullback must be an immersion.

    Requires exactly three critical values, ``f(A) == B`` and no regular
    fiber meeting ``A`` twice.
    """
    require_valid(p)
    if len(critical_values(p)) != 3:
        return None
    if set(p.as_map().values()) != set(p.B):
        return None
    for b in p.B:
        slots = p.fiber(b)
        if all(s.mult == 1 for s in slots) and sum(1 for s in slots if s.label) > 1:
            return None
    return len(p.B) - 3


def submersion_criterion(p: Portrait) -> int | None:
    """Forced rank ``|A| - 3`` when ``f|A`` is injective and at most three
    marked points lie in critical fibers."""
    require_valid(p)
    if any(sum(1 for s in p.fiber(b) if s.label) > 1 for b in p.B):
        return None
    if postcritical_preimages(p) > 3:
        return None
    return len(p.A) - 3


# ---------------------------------------------------------------------------
# Transformations
# ---------------------------------------------------------------------------

def relabel(p: Portrait, mapping: Mapping[str, str]) -> Portrait:
    """Rename marked symbols; symbols absent from *mapping* are kept."""
    def r(x: str | None) -> str | None:
        return None if x is None else mapping.get(x, x)

    return Portrait(
        degree=p.degree,
        A=tuple(r(a) for a in p.A),
        B=tuple(r(b) for b in p.B),
        fibers={
            r(b): tuple(FiberSlot(s.mult, r(s.label)) for s in slots)
            for b, slots in p.fibers.items()
        },
        dynamical=p.dynamical,
        name=p.name,
    )


def canonical(p: Portrait) -> Portrait:
    """Same portrait with A and B in sorted order."""
    return Portrait(p.degree, tuple(sorted(p.A)), tuple(sorted(p.B)), p.fibers, p.dynamical, p.name)


def compose_portraits(f: Portrait, g: Portrait) -> Portrait:
    """Portrait of ``g o f`` for ``f: (A, C) -> ...`` and ``g: (C, B) -> ...``.

    A slot of g labeled ``c`` lifts through the stored fiber of f over
    ``c``; an unlabeled slot lies over a regular value of f and lifts to
    ``deg f`` unlabeled slots of the same multiplicity.
    """
    if set(f.B) != set(g.A):
        raise MarkingMismatch(
            f"inner target {sorted(f.B)} differs from outer source {sorted(g.A)}"
        )
    require_valid(f)
    require_valid(g)
    fibers: dict[str, list[FiberSlot]] = {}
    for b in g.B:
        lifted: list[FiberSlot] = []
        for s in g.fiber(b):
            if s.label is None:
                lifted.extend(FiberSlot(s.mult) for _ in range(f.degree))
                continue
            if s.label not in f.fibers:
                raise CompositionIncomplete(f"no fiber of the inner cover over {s.label!r}")
            lifted.extend(FiberSlot(t.mult * s.mult, t.label) for t in f.fiber(s.label))
        fibers[b] = lifted
    composite = Portrait(
        degree=f.degree * g.degree,
        A=f.A,
        B=g.B,
        fibers=fibers,
        dynamical=False,
    )
    require_valid(composite)
    return composite


def composition_rank_cap(f: Portrait, g: Portrait) -> int:
    """``|C| - 3``: the composite pullback factors through T(S^2, C)."""
    return len(set(f.B)) - 3
