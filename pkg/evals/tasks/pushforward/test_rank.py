"""Coderivative matrices and their rank at explicit markings.

Run:
    pytest evals/tasks/pushforward/test_rank.py -v
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from evals.conftest import load_portrait_fixture
from pullback.algebra import INF, ProjPoint, parse_field_tower, parse_points, parse_ratfunc
from pullback.portrait import rank_lower_bound
from pullback.pushforward import (
    AdmissibilityViolated,
    DuplicatePoint,
    TooFewPoints,
    coderivative_rank,
    critical_value_locus,
    expand_in_basis,
    qd_basis,
)

LATTES = "-z*(z^3+2)/(2*z^3+1)"


def test_lattes_quartic_rank_zero(omega_cbrt2) -> None:
    g = parse_ratfunc(LATTES, omega_cbrt2)
    A = parse_points("0, -s, -s*w, -s*w^2", omega_cbrt2)
    B = parse_points("0, -1, -w, -w^2", omega_cbrt2)
    r, matrix = coderivative_rank(g, A, B)
    assert r == 0
    assert matrix.shape == (1, 1)
    assert not any(x for row in matrix.entries for x in row)


def test_lattes_quartic_with_equal_markings(omega) -> None:
    g = parse_ratfunc(LATTES, omega)
    A = parse_points("0, -1, -w, -w^2", omega)
    r, _ = coderivative_rank(g, A, A)
    assert r == 1


def test_z2_plus_i_matches_the_bound() -> None:
    field = parse_field_tower(["w^2+1"])
    g = parse_ratfunc("z^2 + w", field)
    A = parse_points("w, w - 1, -w, inf", field)
    r, matrix = coderivative_rank(g, A, A)
    assert r == 1
    assert r >= rank_lower_bound(load_portrait_fixture("z2_plus_i"))
    assert matrix.to_dict()["shape"] == [1, 1]


def test_fewer_than_four_points_is_rank_zero() -> None:
    g = parse_ratfunc("z^2")
    A = [ProjPoint(Fraction(0)), ProjPoint(Fraction(1)), INF]
    r, matrix = coderivative_rank(g, A, A)
    assert r == 0
    assert matrix.shape == (0, 0)


def test_squaring_map_with_extra_points() -> None:
    # A = {0, 1, -1, 2, inf} over B = {0, 1, 4, inf}: dim Q(A) = 2, dim Q(B) = 1
    g = parse_ratfunc("z^2")
    A = parse_points("0, 1, -1, 2, inf")
    B = parse_points("0, 1, 4, inf")
    r, matrix = coderivative_rank(g, A, B)
    assert matrix.shape == (1, 2)
    assert r == 1


def test_admissibility() -> None:
    g = parse_ratfunc("z^2")
    with pytest.raises(AdmissibilityViolated):
        coderivative_rank(g, parse_points("0, 1, 2, inf"), parse_points("0, 1, -1, inf"))
    h = parse_ratfunc("z^2 + 1")
    # 1 is a critical value but not marked
    with pytest.raises(AdmissibilityViolated):
        coderivative_rank(h, parse_points("1, -1, inf, 2"), parse_points("2, inf, 5, 7"))


def test_critical_value_locus() -> None:
    locus = critical_value_locus(parse_ratfunc(LATTES))
    # the finite critical values are the cube roots of -1; 0 has four simple preimages
    assert locus(Fraction(-1)) == 0
    assert locus(Fraction(0)) != 0
    assert locus(Fraction(1)) != 0
    assert locus.degree == 3


# ---------------------------------------------------------------------------
# Bases
# ---------------------------------------------------------------------------

def test_basis_with_infinity() -> None:
    marked = parse_points("0, 1, -1, 2, inf")
    basis = qd_basis(marked)
    assert len(basis) == 2
    for i, q in enumerate(basis):
        coords = expand_in_basis(q, marked)
        assert coords == [1 if j == i else 0 for j in range(2)]


def test_basis_without_infinity() -> None:
    marked = parse_points("0, 1, -1, 2, 3")
    basis = qd_basis(marked)
    assert len(basis) == 2
    total = basis[0] * 3 + basis[1] * Fraction(-1, 2)
    assert expand_in_basis(total, marked) == [3, Fraction(-1, 2)]


def test_outside_span() -> None:
    marked = parse_points("0, 1, -1, inf")
    q = qd_basis(parse_points("0, 1, 2, inf"))[0]
    with pytest.raises(AdmissibilityViolated):
        expand_in_basis(q, marked)


def test_basis_preconditions() -> None:
    with pytest.raises(TooFewPoints):
        qd_basis(parse_points("0, 1, inf"))
    with pytest.raises(DuplicatePoint):
        qd_basis(parse_points("0, 1, 1, inf"))
