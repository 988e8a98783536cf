"""Permutation triples: validation, deck groups, enumeration by passport and
the obstruction for covers with three critical values.

Run:
    pytest evals/tasks/monodromy/test_monodromy.py -v
"""

from __future__ import annotations

from itertools import product

import pytest

from evals.conftest import FIXTURES_DIR, load_portrait_fixture
from pullback.config import get_settings
from pullback.monodromy import (
    CycleSyntaxError,
    DegreeTooLarge,
    HypothesesUnmet,
    InvalidTriple,
    NotTransitive,
    Permutation,
    PermutationTriple,
    belyi_obstruction,
    deck_group,
    enumerate_triples,
    genus,
    passport_genus,
    shared_cycle_check,
    validate_triple,
)
from pullback.portrait import FiberSlot, Portrait
from pullback.schemas import TripleModel
from pullback.validation import VerdictStatus


def _triple(name: str) -> PermutationTriple:
    return TripleModel.model_validate_json((FIXTURES_DIR / f"{name}.json").read_text()).to_triple()


# ---------------------------------------------------------------------------
# Permutations
# ---------------------------------------------------------------------------

def test_parse_cycles() -> None:
    p = Permutation.parse("(1 2 3)(4 5)", 5)
    assert p.cycles() == [[1, 2, 3], [4, 5]]
    assert p.cycle_type() == [3, 2]
    assert Permutation.parse("(1, 2)", 3) == Permutation.from_cycles(3, [[1, 2]])
    assert Permutation.parse("id", 4).is_identity()
    assert str(Permutation.parse("()", 2)) == "()"


def test_composition_applies_right_factor_first() -> None:
    a = Permutation.parse("(1 2)", 3)
    b = Permutation.parse("(2 3)", 3)
    # 1 -> 1 under b, then 1 -> 2 under a
    assert (a * b)(0) == 1
    assert (a * b) * (a * b).inverse() == Permutation.identity(3)


@pytest.mark.parametrize("text", ["(1 2", "1 2 3", "(a b)"])
def test_bad_cycle_syntax(text: str) -> None:
    with pytest.raises(CycleSyntaxError):
        Permutation.parse(text, 3)


def test_bad_cycle_values() -> None:
    with pytest.raises(InvalidTriple):
        Permutation.parse("(1 6)", 5)
    with pytest.raises(InvalidTriple):
        Permutation.parse("(1 2)(2 3)", 3)


# ---------------------------------------------------------------------------
# Triples
# ---------------------------------------------------------------------------

def test_tetrahedral_triple() -> None:
    t = _triple("tetrahedral_triple")
    report = validate_triple(t)
    assert report.product_identity
    assert report.transitive
    assert report.genus == 0
    assert report.passport == [[3, 1], [3, 1], [3, 1]]
    assert report.ok
    assert deck_group(t) == [Permutation.identity(4)]
    assert shared_cycle_check(t, [1, 2, 3, 4])


def test_genus_one_triple() -> None:
    t = _triple("genus_one_triple")
    assert genus(t) == 1
    report = validate_triple(t)
    assert report.product_identity and report.transitive
    assert not report.ok
    with pytest.raises(InvalidTriple):
        shared_cycle_check(t, [1, 2, 3, 1])


def test_bad_product() -> None:
    t = _triple("bad_product_triple")
    assert not validate_triple(t).product_identity
    with pytest.raises(InvalidTriple):
        deck_group(t)


def test_intransitive() -> None:
    s = Permutation.parse("(1 2)", 4)
    t = PermutationTriple(4, s, s, Permutation.identity(4))
    assert t.product_is_identity()
    with pytest.raises(NotTransitive):
        deck_group(t)


def test_degree_mismatch() -> None:
    with pytest.raises(InvalidTriple):
        PermutationTriple(3, Permutation.identity(3), Permutation.identity(4), Permutation.identity(3))


def test_passport_genus() -> None:
    assert passport_genus(4, [[3, 1], [3, 1], [3, 1]]) == 0
    assert passport_genus(3, [[3], [3], [3]]) == 1
    # odd total ramification
    assert passport_genus(3, [[2, 1], [1, 1, 1], [1, 1, 1]]) is None


def test_cyclic_cover_has_full_deck_group() -> None:
    t = PermutationTriple(
        3,
        Permutation.parse("(1 2 3)", 3),
        Permutation.identity(3),
        Permutation.parse("(1 3 2)", 3),
    )
    assert len(deck_group(t)) == 3


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def test_quadratic_passport() -> None:
    (t,) = enumerate_triples(2, [[2], [2], [1, 1]])
    assert validate_triple(t).ok


def test_cubic_passport_has_trivial_deck_group() -> None:
    triples = enumerate_triples(3, [[2, 1], [2, 1], [3]])
    assert len(triples) == 1
    assert [len(deck_group(t)) for t in triples] == [1]


@pytest.mark.parametrize("passport", list(product([[3], [2, 1]], repeat=3)), ids=str)
def test_cubic_covers_with_three_branch_points(passport) -> None:
    # only the cyclic cover has a nontrivial deck group
    triples = enumerate_triples(3, list(passport))
    for t in triples:
        assert not any(s.is_identity() for s in t.perms)
        expected = 3 if list(passport) == [[3], [3], [3]] else 1
        assert len(deck_group(t)) == expected


def test_tetrahedral_passport() -> None:
    triples = enumerate_triples(4, [[3, 1], [3, 1], [3, 1]])
    assert triples
    for t in triples:
        assert validate_triple(t).ok
        assert t == t.canonical()
    assert len({t.key() for t in triples}) == len(triples)


def test_impossible_passport_is_empty() -> None:
    assert enumerate_triples(3, [[2, 1], [1, 1, 1], [1, 1, 1]]) == []


def test_enumeration_preconditions(monkeypatch: pytest.MonkeyPatch) -> None:
    with pytest.raises(InvalidTriple):
        enumerate_triples(3, [[2, 1], [3]])
    with pytest.raises(InvalidTriple):
        enumerate_triples(3, [[2, 2], [3], [3]])
    monkeypatch.setenv("PULLBACK_TRIPLE_MAX_DEGREE", "3")
    get_settings.cache_clear()
    with pytest.raises(DegreeTooLarge):
        enumerate_triples(4, [[3, 1], [3, 1], [3, 1]])


# ---------------------------------------------------------------------------
# Deck obstruction
# ---------------------------------------------------------------------------

def _two_over_critical() -> Portrait:
    return Portrait(
        degree=3,
        A=("a", "b", "c", "e"),
        B=("v1", "v2", "v3", "t"),
        fibers={
            "v1": [FiberSlot(2), FiberSlot(1, "a")],
            "v2": [FiberSlot(2), FiberSlot(1, "b")],
            "v3": [FiberSlot(3)],
            "t": [FiberSlot(1, "c"), FiberSlot(1, "e"), FiberSlot(1)],
        },
    )


def test_lattes_quartic_is_unobstructed() -> None:
    verdict = belyi_obstruction(load_portrait_fixture("lattes_quartic"))
    assert verdict.status == VerdictStatus.UNOBSTRUCTED
    assert verdict.citations == []


def test_trivial_deck_group_rules_out_constancy() -> None:
    verdict = belyi_obstruction(_two_over_critical())
    assert verdict.status == VerdictStatus.NOT_CONSTANT
    assert verdict.citations == ["deck-trivial"]


def test_no_triples_is_informational() -> None:
    verdict = belyi_obstruction(_two_over_critical(), triples=[])
    assert verdict.status == VerdictStatus.UNOBSTRUCTED
    assert [r.citation for r in verdict.reasons] == ["deck-trivial"]
    assert verdict.reasons[0].informational


def test_hypotheses() -> None:
    with pytest.raises(HypothesesUnmet):
        belyi_obstruction(load_portrait_fixture("z2_three_points"))
