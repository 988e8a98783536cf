"""Bicritical normal forms: curve fibers over t', exact normal-form checks
and nonconstancy witnesses.

Run:
    pytest evals/tasks/bicritical/test_bicritical.py -v
    pytest evals/tasks/bicritical/test_bicritical.py -v -m "not slow"
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import islice

import pytest

from pullback.bicritical import (
    BicriticalClass,
    Case,
    CurvePoint,
    DegenerateParameter,
    TrivialRoot,
    bicritical_classes,
    bicritical_portrait,
    curve_components,
    curve_fiber,
    discriminant,
    map_t,
    nonconstancy_witness,
    normal_form,
    normal_form_check,
    normal_form_markings,
    witness_sequence,
)
from pullback.dynamics import FunctionalGraph, build_graph
from pullback.errors import InvariantError
from pullback.portrait import require_valid
from pullback.pushforward import coderivative_rank
from pullback.tables import load_fixture


@pytest.fixture()
def quadratic_split() -> BicriticalClass:
    return BicriticalClass(2, 1, 1, Case.SPLIT_FIXED)


def test_classes() -> None:
    classes = list(bicritical_classes(3))
    assert len(classes) == 2 + 8
    assert {c.case for c in classes} == {Case.SPLIT_FIXED, Case.TWO_CYCLE}
    assert BicriticalClass(3, 1, 2, "cycle").case is Case.TWO_CYCLE


def test_trivial_roots() -> None:
    with pytest.raises(TrivialRoot):
        BicriticalClass(2, 0, 1)
    with pytest.raises(TrivialRoot):
        BicriticalClass(3, 1, 3)
    with pytest.raises(InvariantError):
        BicriticalClass(1, 1, 1)


def test_fiber_over_minus_three(quadratic_split: BicriticalClass) -> None:
    assert discriminant(quadratic_split, Fraction(-3)) == 64
    points = curve_fiber(quadratic_split, Fraction(-3))
    assert {(p.x, p.y) for p in points} == {(-3, 1), (1, -3)}
    assert {map_t(p, 2) for p in points} == {9, Fraction(1, 9)}


@pytest.mark.parametrize("t_prime", [0, 1])
def test_degenerate_parameter(quadratic_split: BicriticalClass, t_prime: int) -> None:
    with pytest.raises(DegenerateParameter):
        curve_fiber(quadratic_split, Fraction(t_prime))


def test_irrational_fiber_adjoins_a_root(quadratic_split: BicriticalClass) -> None:
    # disc = 16 (1 - t') = 48 at t' = -2
    points = curve_fiber(quadratic_split, Fraction(-2))
    assert len(points) == 2
    for p in points:
        assert p.field.degree == 2
        assert normal_form_check(p, quadratic_split).ok


def test_normal_form(quadratic_split: BicriticalClass) -> None:
    p = CurvePoint(Fraction(1), Fraction(-3), Fraction(-3))
    g = normal_form(p, 2)
    assert g(Fraction(0)) == Fraction(1, 9)
    assert g(Fraction(-3)) == Fraction(1, 9)
    assert g(Fraction(1)) == 1
    result = normal_form_check(p, quadratic_split)
    assert result.ok
    assert set(result.to_dict()["passed"]) >= {"critical-points", "infinity-to-one", "one-fixed"}


def test_normal_form_check_rejects_wrong_case(quadratic_split: BicriticalClass) -> None:
    p = CurvePoint(Fraction(1), Fraction(-3), Fraction(-3))
    with pytest.raises(InvariantError):
        normal_form_check(p, BicriticalClass(2, 1, 1, Case.TWO_CYCLE))


def test_curve_is_irreducible_for_quadratics(quadratic_split: BicriticalClass) -> None:
    comps = curve_components(quadratic_split)
    assert not comps.reducible
    assert comps.branches == ()
    assert comps.discriminant(Fraction(-3)) == 64


def test_portrait(quadratic_split: BicriticalClass) -> None:
    (p, *_) = curve_fiber(quadratic_split, Fraction(-3))
    portrait = bicritical_portrait(quadratic_split, p)
    require_valid(portrait)
    assert portrait.dynamical
    assert set(portrait.A) == {"v1", "v2", "t1", "t2"}


def _graph_of(case: Case) -> dict[str, str]:
    """Split fixes 1 and t; the cycle swaps them. Critical values land on them."""
    graphs = load_fixture("bicritical_cubic")["graphs"]
    return graphs[0] if case is Case.SPLIT_FIXED else graphs[1]


_SMALL_CLASSES = list(bicritical_classes(3))


@pytest.mark.parametrize("c", _SMALL_CLASSES, ids=str)
def test_portrait_matches_bicritical_graph(c: BicriticalClass) -> None:
    w = nonconstancy_witness(c)
    expected = _graph_of(c.case)
    for fib in w.fibers:
        for p in fib:
            portrait = bicritical_portrait(c, p)
            assert portrait.as_map() == expected
            assert build_graph(portrait) == FunctionalGraph.from_edges(expected, {"v1", "v2"})


def test_two_cycle_graph() -> None:
    c = BicriticalClass(2, 1, 1, Case.TWO_CYCLE)
    (p, *_) = nonconstancy_witness(c).fibers[-1]
    graph = build_graph(bicritical_portrait(c, p))
    assert graph.edge["t1"] == "t2"
    assert graph.edge["t2"] == "t1"
    assert graph.marks == {"v1", "v2"}


def _sample_tprime(rng: random.Random, c: BicriticalClass) -> Fraction:
    while True:
        tp = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
        if tp not in (0, 1) and discriminant(c, tp):
            return tp


@pytest.mark.parametrize("seed", range(3))
@pytest.mark.parametrize("c", _SMALL_CLASSES, ids=str)
def test_sampled_fibers(c: BicriticalClass, seed: int) -> None:
    tp = _sample_tprime(random.Random(seed), c)
    points = curve_fiber(c, tp)
    assert len(points) in (1, 2)
    assert len({map_t(p, c.d) for p in points}) == len(points)
    for p in points:
        assert normal_form_check(p, c).ok


def test_markings_give_rank_one(quadratic_split: BicriticalClass) -> None:
    p = CurvePoint(Fraction(1), Fraction(-3), Fraction(-3))
    g, A, B = normal_form_markings(p, quadratic_split)
    r, _ = coderivative_rank(g, A, B)
    assert r == 1


# ---------------------------------------------------------------------------
# Witnesses
# ---------------------------------------------------------------------------

def test_witness_sequence() -> None:
    assert list(islice(witness_sequence(), 8)) == [-3, -2, 2, 3, -4, 4, -5, 5]


def test_quadratic_witness(quadratic_split: BicriticalClass) -> None:
    w = nonconstancy_witness(quadratic_split)
    assert w.t_primes == (-3, -2)
    assert any(len(f) == 2 for f in w.fibers)
    assert set(w.t_values[0]) == {9, Fraction(1, 9)}
    assert w.to_dict()["tprime"] == ["-3", "-2"]


@pytest.mark.slow
@pytest.mark.parametrize("c", list(bicritical_classes(5)), ids=str)
def test_every_class_has_a_witness(c: BicriticalClass) -> None:
    w = nonconstancy_witness(c)
    assert len(w.t_primes) == 2
    assert w.t_primes[0] != w.t_primes[1]
    assert any(len(f) == 2 for f in w.fibers)
    for fib in w.fibers:
        for p in fib:
            assert normal_form_check(p, c).ok, p
            assert bicritical_portrait(c, p).as_map() == _graph_of(c.case)
