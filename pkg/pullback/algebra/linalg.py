"""Exact Gaussian elimination over any tower field.

Matrices are lists of rows. Nothing is modified in place.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Any, Sequence

from pullback.errors import InvariantError

logger = logging.getLogger(__name__)

Matrix = list[list[Any]]


class SingularSystem(InvariantError):
    """Linear system has no solution or is not square-solvable."""


def row_echelon(m: Sequence[Sequence[Any]], rhs: Sequence[Any] | None = None):
    """Reduce a copy of *m* (and *rhs*) to row echelon form.

    Returns ``(echelon, rhs, pivots, swaps)``; ``pivots`` lists the pivot
    column of each nonzero row.
    """
    rows = [[_exact(x) for x in r] for r in m]
    t = None if rhs is None else [_exact(x) for x in rhs]
    pivots: list[int] = []
    swaps = 0
    if not rows:
        return rows, t, pivots, swaps
    n_rows, n_cols = len(rows), len(rows[0])
    piv_r = 0
    for piv_c in range(n_cols):
        for i in range(piv_r, n_rows):
            if rows[i][piv_c]:
                break
        else:
            continue
        if i != piv_r:
            rows[piv_r], rows[i] = rows[i], rows[piv_r]
            if t is not None:
                t[piv_r], t[i] = t[i], t[piv_r]
            swaps += 1
        fp = rows[piv_r][piv_c]
        for r in range(piv_r + 1, n_rows):
            fr = rows[r][piv_c]
            if not fr:
                continue
            q = fr / fp
            for c in range(piv_c, n_cols):
                rows[r][c] = rows[r][c] - rows[piv_r][c] * q
            if t is not None:
                t[r] = t[r] - t[piv_r] * q
        pivots.append(piv_c)
        piv_r += 1
        if piv_r == n_rows:
            break
    return rows, t, pivots, swaps


def _exact(x: Any) -> Any:
    return Fraction(x) if isinstance(x, int) else x


def rank(m: Sequence[Sequence[Any]]) -> int:
    return len(row_echelon(m)[2])


def determinant(m: Sequence[Sequence[Any]]) -> Any:
    n = len(m)
    if any(len(r) != n for r in m):
        raise InvariantError("determinant of a non-square matrix")
    if n == 0:
        return 1
    rows, _, pivots, swaps = row_echelon(m)
    if len(pivots) < n:
        return rows[0][0] * 0
    det = rows[0][0]
    for k in range(1, n):
        det = det * rows[k][k]
    return -det if swaps % 2 else det


def solve(m: Sequence[Sequence[Any]], rhs: Sequence[Any]) -> list[Any]:
    """The unique solution of ``m x = rhs``.

    Raises :class:`SingularSystem` when the system is inconsistent or
    underdetermined.
    """
    if not m:
        return []
    n_cols = len(m[0])
    rows, t, pivots, _ = row_echelon(m, rhs)
    assert t is not None
    for r in range(len(pivots), len(rows)):
        if t[r]:
            raise SingularSystem("inconsistent linear system")
    if len(pivots) < n_cols:
        raise SingularSystem(
            f"underdetermined linear system (rank {len(pivots)} < {n_cols})"
        )
    sol: list[Any] = [None] * n_cols
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        s = t[r]
        for k in range(c + 1, n_cols):
            s = s - rows[r][k] * sol[k]
        sol[c] = s / rows[r][c]
    return sol
