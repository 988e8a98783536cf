"""Permutation monodromy of covers branched over three points.

Permutations act on ``{0, ..., d-1}`` internally; cycle notation on the
way in and out is 1-based with fixed points omitted, as in ``(1 2 3)(4 5)``.
Composition reads right to left: ``(s * t)(x) == s(t(x))``.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from itertools import permutations
from typing import Any, Iterable, Sequence

from pullback.config import get_settings
from pullback.errors import InputError, InvariantError
from pullback.portrait import (
    Portrait,
    critical_values,
    passport,
    postcritical_preimages,
    require_valid,
)
from pullback.validation import Reason, Verdict, VerdictStatus

logger = logging.getLogger(__name__)


class CycleSyntaxError(InputError):
    """Cycle notation that cannot be read."""


class InvalidTriple(InvariantError):
    """Permutations of the wrong degree, or a triple outside a check's hypotheses."""


class NotTransitive(InvariantError):
    """The monodromy group does not act transitively: the cover is disconnected."""


class DegreeTooLarge(InvariantError):
    """Brute-force search requested above the configured degree cap."""


class HypothesesUnmet(InvariantError):
    """Portrait outside the three-critical-value setting of the deck obstruction."""


# ---------------------------------------------------------------------------
# Permutations
# ---------------------------------------------------------------------------

class Permutation:
    """A permutation of ``{0, ..., d-1}`` stored as its image list."""

    __slots__ = ("_images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise InvalidTriple(f"{list(images)} is not a permutation")
        self._images = images

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        """Build from 1-based cycles; points in no cycle are fixed."""
        res = list(range(degree))
        seen: set[int] = set()
        for c in cycles:
            for x in c:
                if not 1 <= x <= degree:
                    raise InvalidTriple(f"cycle value {x} out of range 1..{degree}")
                if x in seen:
                    raise InvalidTriple(f"{x} appears twice in {list(cycles)}")
                seen.add(x)
            for j in range(len(c)):
                res[c[j] - 1] = c[(j + 1) % len(c)] - 1
        return cls(res)

    @classmethod
    def parse(cls, text: str, degree: int) -> Permutation:
        """Read ``(1 2 3)(4 5)`` (commas allowed, ``()`` or ``id`` for the identity)."""
        s = text.strip()
        if s in ("", "()", "id", "1"):
            return cls.identity(degree)
        if not re.fullmatch(r"(\(\s*\d+(\s*,?\s*\d+)*\s*\)\s*)+", s):
            raise CycleSyntaxError(f"cannot read cycle notation {text!r}")
        cycles = [
            [int(x) for x in re.split(r"[\s,]+", body.strip())]
            for body in re.findall(r"\(([^)]*)\)", s)
        ]
        return cls.from_cycles(degree, cycles)

    @property
    def degree(self) -> int:
        return len(self._images)

    @property
    def images(self) -> tuple[int, ...]:
        return self._images

    def __call__(self, i: int) -> int:
        return self._images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise InvalidTriple("cannot compose permutations of different degrees")
        return Permutation(self._images[j] for j in other._images)

    def inverse(self) -> Permutation:
        res = [0] * self.degree
        for i, j in enumerate(self._images):
            res[j] = i
        return Permutation(res)

    def conjugate(self, by: Permutation) -> Permutation:
        """``by * self * by^-1``: the same permutation on relabeled points."""
        res = [0] * self.degree
        for i, j in enumerate(self._images):
            res[by(i)] = by(j)
        return Permutation(res)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self._images))

    def orbits(self) -> list[list[int]]:
        """All cycles, 0-based, fixed points included."""
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            c = []
            j = i
            while not seen[j]:
                seen[j] = True
                c.append(j)
                j = self._images[j]
            out.append(c)
        return out

    def cycles(self) -> list[list[int]]:
        """Nontrivial cycles, 1-based, each starting at its least element."""
        return [[x + 1 for x in c] for c in self.orbits() if len(c) > 1]

    def cycle_type(self) -> list[int]:
        return sorted((len(c) for c in self.orbits()), reverse=True)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._images == other._images

    def __hash__(self) -> int:
        return hash(self._images)

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation({self})"


def are_transitive(perms: Sequence[Permutation]) -> bool:
    """Does the group generated by *perms* have a single orbit?"""
    n = perms[0].degree
    seen = [False] * n
    seen[0] = True
    todo = [0]
    while todo:
        j = todo.pop()
        for p in perms:
            k = p(j)
            if not seen[k]:
                seen[k] = True
                todo.append(k)
    return all(seen)


def _with_type(degree: int, ctype: Sequence[int]) -> list[Permutation]:
    target = sorted(ctype, reverse=True)
    return [
        p for p in (Permutation(im) for im in permutations(range(degree)))
        if p.cycle_type() == target
    ]


# ---------------------------------------------------------------------------
# Triples
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PermutationTriple:
    degree: int
    sigma0: Permutation
    sigma1: Permutation
    sigma_inf: Permutation

    def __post_init__(self) -> None:
        for name in ("sigma0", "sigma1", "sigma_inf"):
            if getattr(self, name).degree != self.degree:
                raise InvalidTriple(
                    f"{name} acts on {getattr(self, name).degree} points, expected {self.degree}"
                )

    @property
    def perms(self) -> tuple[Permutation, Permutation, Permutation]:
        return self.sigma0, self.sigma1, self.sigma_inf

    def product_is_identity(self) -> bool:
        return (self.sigma0 * self.sigma1 * self.sigma_inf).is_identity()

    def is_transitive(self) -> bool:
        return are_transitive(self.perms)

    def conjugate(self, by: Permutation) -> PermutationTriple:
        return PermutationTriple(self.degree, *(s.conjugate(by) for s in self.perms))

    def key(self) -> tuple:
        return tuple(s.images for s in self.perms)

    def canonical(self) -> PermutationTriple:
        """Lexicographically least triple under simultaneous relabeling."""
        best = self
        for im in permutations(range(self.degree)):
            cand = self.conjugate(Permutation(im))
            if cand.key() < best.key():
                best = cand
        return best

    def __str__(self) -> str:
        return f"d={self.degree} s0={self.sigma0} s1={self.sigma1} sinf={self.sigma_inf}"


@dataclass(frozen=True)
class TripleReport:
    product_identity: bool
    transitive: bool
    genus: int | None
    passport: list[list[int]]

    @property
    def ok(self) -> bool:
        return self.product_identity and self.transitive and self.genus == 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "product_identity": self.product_identity,
            "transitive": self.transitive,
            "genus": self.genus,
            "passport": self.passport,
            "ok": self.ok,
        }


def passport_genus(d: int, passport: Sequence[Sequence[int]]) -> int | None:
    """Riemann-Hurwitz genus of a connected cover with this branching,
    or ``None`` when the total ramification has the wrong parity."""
    total = sum(d - len(ct) for ct in passport)
    twice = total - 2 * d + 2
    if twice % 2 or twice < 0:
        return None
    return twice // 2


def genus(t: PermutationTriple) -> int | None:
    return passport_genus(t.degree, [s.cycle_type() for s in t.perms])


def validate_triple(t: PermutationTriple) -> TripleReport:
    report = TripleReport(
        product_identity=t.product_is_identity(),
        transitive=t.is_transitive(),
        genus=genus(t),
        passport=[s.cycle_type() for s in t.perms],
    )
    logger.debug("triple %s: %s", t, report)
    return report


def _require_cover(t: PermutationTriple) -> None:
    if not t.product_is_identity():
        raise InvalidTriple(f"s0 s1 sinf != id for {t}")
    if not t.is_transitive():
        raise NotTransitive(f"{t} generates an intransitive group")


def deck_group(t: PermutationTriple) -> list[Permutation]:
    """Centralizer of ``<s0, s1>`` in the full symmetric group."""
    _require_cover(t)
    cap = get_settings().deck_max_degree
    if t.degree > cap:
        raise DegreeTooLarge(f"deck group search is capped at degree {cap}, got {t.degree}")
    out = []
    for im in permutations(range(t.degree)):
        c = Permutation(im)
        if c * t.sigma0 == t.sigma0 * c and c * t.sigma1 == t.sigma1 * c:
            out.append(c)
    return out


def enumerate_triples(d: int, passport: Sequence[Sequence[int]]) -> list[PermutationTriple]:
    """All connected covers with this branching, one per conjugacy class.

    ``s0`` is fixed to one permutation of its cycle type, ``s1`` runs over
    its class and ``sinf`` is forced by the product relation.
    """
    cap = get_settings().triple_max_degree
    if d > cap:
        raise DegreeTooLarge(f"triple enumeration is capped at degree {cap}, got {d}")
    if len(passport) != 3:
        raise InvalidTriple(f"a passport lists three cycle types, got {len(passport)}")
    for ct in passport:
        if sum(ct) != d or any(m < 1 for m in ct):
            raise InvalidTriple(f"cycle type {list(ct)} is not a partition of {d}")
    if passport_genus(d, passport) is None:
        return []

    s0 = _with_type(d, passport[0])[0]
    target_inf = sorted(passport[2], reverse=True)
    classes: dict[tuple, PermutationTriple] = {}
    scanned = 0
    for s1 in _with_type(d, passport[1]):
        scanned += 1
        s_inf = (s0 * s1).inverse()
        if s_inf.cycle_type() != target_inf:
            continue
        t = PermutationTriple(d, s0, s1, s_inf)
        if not t.is_transitive():
            continue
        c = t.canonical()
        classes.setdefault(c.key(), c)
    logger.debug("passport %s: %d candidates, %d classes", passport, scanned, len(classes))
    return [classes[k] for k in sorted(classes)]


def shared_cycle_check(t: PermutationTriple, pts: Sequence[int]) -> bool:
    """Does each of ``s0, s1, sinf`` have a cycle holding three of the four labels?"""
    _require_cover(t)
    if genus(t) != 0:
        raise InvalidTriple(f"{t} is not a genus-zero cover")
    labels = set(pts)
    if len(pts) != 4 or len(labels) != 4 or not all(1 <= x <= t.degree for x in labels):
        raise InvalidTriple(f"need four distinct labels in 1..{t.degree}, got {list(pts)}")
    return all(
        any(len(labels.intersection(c)) >= 3 for c in s.cycles()) for s in t.perms
    )


# ---------------------------------------------------------------------------
# Deck obstruction
# ---------------------------------------------------------------------------

def belyi_obstruction(
    p: Portrait, triples: Sequence[PermutationTriple] | None = None
) -> Verdict:
    """Constancy obstruction for covers with exactly three critical values.

    Constant pullback forces fewer than three marked points over the
    critical values and, at exactly two, a nontrivial deck transformation.
    *triples* defaults to every monodromy realizing the portrait's passport.
    """
    require_valid(p)
    values = critical_values(p)
    if len(values) != 3:
        raise HypothesesUnmet(f"needs exactly three critical values, found {len(values)}")
    if len(p.A) < 4:
        raise HypothesesUnmet(f"needs |A| >= 4, got {len(p.A)}")
    if set(p.as_map().values()) <= set(values):
        raise HypothesesUnmet("every marked point maps to a critical value")

    count = postcritical_preimages(p)
    if count >= 3:
        return Verdict(
            VerdictStatus.NOT_CONSTANT,
            (Reason("postcritical-preimages", f"{count} marked points lie over critical values"),),
        )
    if count < 2:
        return Verdict(
            VerdictStatus.UNOBSTRUCTED,
            (Reason("postcritical-preimages",
                    f"only {count} marked points over critical values", informational=True),),
        )

    if triples is None:
        triples = enumerate_triples(p.degree, passport(p))
    if not triples:
        return Verdict(
            VerdictStatus.UNOBSTRUCTED,
            (Reason("deck-trivial", "no monodromy realizes the passport", informational=True),),
        )
    nontrivial = [t for t in triples if len(deck_group(t)) > 1]
    if not nontrivial:
        return Verdict(
            VerdictStatus.NOT_CONSTANT,
            (Reason(
                "deck-trivial",
                f"two marked points over critical values and all {len(triples)} "
                "monodromy classes have trivial deck group",
            ),),
        )
    return Verdict(
        VerdictStatus.UNOBSTRUCTED,
        (Reason("deck-trivial",
                f"{len(nontrivial)} monodromy classes admit deck transformations",
                informational=True),),
    )
