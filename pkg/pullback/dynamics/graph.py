"""Functional graph of the postcritical dynamics and the ``|P| <= 2|V|`` bound."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Iterator, Mapping

from pullback.errors import InvariantError
from pullback.portrait import (
    InvalidPortrait,
    Portrait,
    critical_values,
    validate_portrait,
)

logger = logging.getLogger(__name__)


class NotDynamical(InvariantError):
    """Portrait is not a self-cover of the postcritical set."""


class NotPostcriticallyClosed(InvariantError):
    """Some vertex is not in the forward orbit of a marked vertex."""


class HypothesisViolated(InvariantError):
    """An unmarked vertex has fewer than two preimages."""


class CharacterizationMismatch(InvariantError):
    """The equality tests for the postcritical bound disagree."""


# ---------------------------------------------------------------------------
# Graph
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FunctionalGraph:
    """``f`` restricted to the postcritical set; marks are the critical values."""

    vertices: tuple[str, ...]
    edge: Mapping[str, str]
    marks: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edge", dict(self.edge))
        object.__setattr__(self, "marks", frozenset(self.marks))

    @classmethod
    def from_edges(cls, edge: Mapping[str, str], marks, vertices=None) -> FunctionalGraph:
        """Build and check outdegree one plus postcritical closure."""
        verts = tuple(vertices) if vertices is not None else tuple(edge)
        if set(edge) != set(verts) or not set(edge.values()) <= set(verts):
            raise InvariantError("every vertex needs exactly one outgoing edge inside the graph")
        if not set(marks) <= set(verts):
            raise InvariantError(f"marks {sorted(set(marks) - set(verts))} are not vertices")
        g = cls(verts, edge, frozenset(marks))
        unreached = set(verts) - g.forward_closure(g.marks)
        if unreached:
            raise NotPostcriticallyClosed(
                f"not reached from a critical value: {sorted(unreached)}"
            )
        return g

    def key(self) -> tuple:
        return (tuple(sorted(self.edge.items())), tuple(sorted(self.marks)))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FunctionalGraph) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def preimages(self, v: str) -> list[str]:
        return [u for u in self.vertices if self.edge[u] == v]

    def indegree(self, v: str) -> int:
        return sum(1 for u in self.vertices if self.edge[u] == v)

    def forward_closure(self, start) -> set[str]:
        seen: set[str] = set()
        frontier = list(start)
        while frontier:
            x = frontier.pop()
            if x not in seen:
                seen.add(x)
                frontier.append(self.edge[x])
        return seen

    def orbit(self, v: str) -> list[str]:
        """``f(v), f^2(v), ...`` up to the first repetition."""
        out: list[str] = []
        x = self.edge[v]
        while x not in out:
            out.append(x)
            x = self.edge[x]
        return out

    def is_periodic(self, v: str) -> bool:
        return v in self.orbit(v)

    def preperiod(self, v: str) -> int:
        """Steps from *v* to its cycle."""
        n, x = 0, v
        while not self.is_periodic(x):
            x = self.edge[x]
            n += 1
        return n

    def relabel(self, mapping: Mapping[str, str]) -> FunctionalGraph:
        r = lambda x: mapping.get(x, x)  # noqa: E731
        return FunctionalGraph(
            tuple(r(v) for v in self.vertices),
            {r(u): r(v) for u, v in self.edge.items()},
            frozenset(r(m) for m in self.marks),
        )

    def edges(self) -> list[tuple[str, str]]:
        return [(u, self.edge[u]) for u in self.vertices]

    def to_dict(self) -> dict[str, Any]:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges()],
            "critical_values": [v for v in self.vertices if v in self.marks],
        }

    def __str__(self) -> str:
        return ", ".join(
            f"{'*' if u in self.marks else ''}{u}->{v}" for u, v in self.edges()
        )


def build_graph(p: Portrait) -> FunctionalGraph:
    """Edge ``a -> b`` iff ``a`` labels a slot over ``b``; marks are the critical values."""
    if not p.dynamical or set(p.A) != set(p.B):
        raise NotDynamical(f"portrait {p.name or ''} is not dynamical (A must equal B)")
    report = validate_portrait(p)
    if not report.ok:
        if report.failed == ["postcritical-closure"]:
            raise NotPostcriticallyClosed(
                "; ".join(i.message for i in report.issues if i.severity == "error")
            )
        raise InvalidPortrait(f"invalid portrait: {', '.join(report.failed)}")
    return FunctionalGraph(p.A, p.as_map(), frozenset(critical_values(p)))


# ---------------------------------------------------------------------------
# Cycle / tree decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Tree:
    """Non-cycle vertices entering the cycle at ``root``."""

    root: str
    members: tuple[str, ...]
    leaves: tuple[str, ...]

    def to_dict(self) -> dict[str, Any]:
        return {"root": self.root, "members": list(self.members), "leaves": list(self.leaves)}


@dataclass(frozen=True)
class Component:
    cycle: tuple[str, ...]
    trees: tuple[Tree, ...] = field(default_factory=tuple)

    @property
    def vertices(self) -> list[str]:
        return list(self.cycle) + [m for t in self.trees for m in t.members]

    def to_dict(self) -> dict[str, Any]:
        return {"cycle": list(self.cycle), "trees": [t.to_dict() for t in self.trees]}


def decompose(g: FunctionalGraph) -> list[Component]:
    """Split the graph into components, each a cycle with rooted trees on it."""
    order = {v: i for i, v in enumerate(g.vertices)}
    cycle_of: dict[str, tuple[str, ...]] = {}
    for v in g.vertices:
        if v in cycle_of or not g.is_periodic(v):
            continue
        orbit = g.orbit(v)
        start = min(orbit, key=order.__getitem__)
        k = orbit.index(start)
        cycle = tuple(orbit[k:] + orbit[:k])
        for x in cycle:
            cycle_of[x] = cycle

    entry: dict[str, str] = {}
    for v in g.vertices:
        if v in cycle_of:
            continue
        x = v
        while x not in cycle_of:
            x = g.edge[x]
        entry[v] = x

    components = []
    for cycle in sorted(set(cycle_of.values()), key=lambda c: order[c[0]]):
        trees = []
        for root in cycle:
            members = tuple(v for v in g.vertices if entry.get(v) == root)
            if members:
                leaves = tuple(m for m in members if g.indegree(m) == 0)
                trees.append(Tree(root, members, leaves))
        components.append(Component(cycle, tuple(trees)))
    return components


# ---------------------------------------------------------------------------
# |P| <= 2|V|
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PostcriticalBound:
    size: int
    marked: int
    bound_holds: bool
    equality: bool
    by_cardinality: bool
    by_structure: bool
    by_orbits: bool
    components: tuple[Component, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "size": self.size,
            "marked": self.marked,
            "bound_holds": self.bound_holds,
            "equality": self.equality,
            "by_cardinality": self.by_cardinality,
            "by_structure": self.by_structure,
            "by_orbits": self.by_orbits,
            "components": [c.to_dict() for c in self.components],
        }


def check_hypothesis(g: FunctionalGraph) -> list[str]:
    """Unmarked vertices with fewer than two preimages."""
    return [v for v in g.vertices if v not in g.marks and g.indegree(v) < 2]


def postcritical_bound(g: FunctionalGraph) -> PostcriticalBound:
    """Check ``|P| <= 2|V|`` and decide equality three ways.

    Equality by cardinality, by the shape of the components (no marked
    vertex on a cycle; each tree feeds its root once, its leaves are
    exactly its marked vertices and every other member has two
    preimages), and along critical orbits (``f^n(v)`` never marked and
    always with two preimages). The three answers must agree.
    """
    bad = check_hypothesis(g)
    if bad:
        raise HypothesisViolated(f"unmarked vertices with indegree < 2: {bad}")
    components = decompose(g)
    size, marked = len(g.vertices), len(g.marks)
    by_cardinality = size == 2 * marked
    by_structure = _equality_by_structure(g, components)
    by_orbits = all(
        x not in g.marks and g.indegree(x) == 2 for v in g.marks for x in g.orbit(v)
    )
    if not by_cardinality == by_structure == by_orbits:
        raise CharacterizationMismatch(
            f"{g}: cardinality={by_cardinality}, structure={by_structure}, "
            f"orbits={by_orbits}"
        )
    return PostcriticalBound(
        size=size,
        marked=marked,
        bound_holds=size <= 2 * marked,
        equality=by_cardinality,
        by_cardinality=by_cardinality,
        by_structure=by_structure,
        by_orbits=by_orbits,
        components=tuple(components),
    )


def _equality_by_structure(g: FunctionalGraph, components: list[Component]) -> bool:
    for comp in components:
        if any(v in g.marks for v in comp.cycle):
            return False
        for tree in comp.trees:
            members = set(tree.members)
            if sum(1 for u in g.preimages(tree.root) if u in members) != 1:
                return False
            for m in tree.members:
                indeg = g.indegree(m)
                if (m in g.marks) != (indeg == 0):
                    return False
                if indeg and indeg != 2:
                    return False
    return True


# ---------------------------------------------------------------------------
# Exhaustive family
# ---------------------------------------------------------------------------

def enumerate_graphs(n: int) -> Iterator[FunctionalGraph]:
    """Every closed marked functional graph on ``n`` labeled vertices
    satisfying the indegree hypothesis.

    Vertices of indegree at most one are forced to be marked; the others
    may or may not be.
    """
    verts = tuple(f"p{i}" for i in range(n))
    for images in product(range(n), repeat=n):
        edge = {verts[i]: verts[j] for i, j in enumerate(images)}
        indeg = [images.count(j) for j in range(n)]
        forced = {verts[j] for j in range(n) if indeg[j] <= 1}
        optional = [verts[j] for j in range(n) if indeg[j] >= 2]
        for choice in product((False, True), repeat=len(optional)):
            marks = forced | {v for v, on in zip(optional, choice) if on}
            if not marks:
                continue
            g = FunctionalGraph(verts, edge, frozenset(marks))
            if g.forward_closure(marks) == set(verts):
                yield g
