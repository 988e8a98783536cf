"""Exact elimination against sympy.

Run:
    pytest evals/tasks/algebra/test_linalg.py -v
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from pullback.algebra import determinant, rank, solve
from pullback.algebra.linalg import SingularSystem


def _matrix(rng: random.Random, rows: int, cols: int, rank_cap: int | None = None) -> list[list[Fraction]]:
    if rank_cap is None:
        return [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(cols)] for _ in range(rows)]
    left = _matrix(rng, rows, rank_cap)
    right = _matrix(rng, rank_cap, cols)
    return [
        [sum((left[i][k] * right[k][j] for k in range(rank_cap)), Fraction(0)) for j in range(cols)]
        for i in range(rows)
    ]


def _sympy(m: list[list[Fraction]]) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m])


@pytest.mark.parametrize("seed", range(30))
def test_rank_and_determinant_match_sympy(seed: int) -> None:
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    m = _matrix(rng, n, n, rank_cap=rng.choice([None, max(1, n - 1)]))
    ref = _sympy(m)
    assert rank(m) == ref.rank()
    det = ref.det()
    assert determinant(m) == Fraction(int(det.p), int(det.q))


def test_rank_over_number_field(omega) -> None:
    w = omega.gen
    m = [[1, w], [w * w, w**3]]     # second row is w^2 times the first
    assert rank(m) == 1
    assert determinant([[1, w], [w, 1]]) == 1 - w * w


def test_solve() -> None:
    m = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
    assert solve(m, [Fraction(3), Fraction(5)]) == [Fraction(4, 5), Fraction(7, 5)]
    with pytest.raises(SingularSystem):
        solve([[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]], [Fraction(1), Fraction(3)])
