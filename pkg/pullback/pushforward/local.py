"""Local models: Laurent pushforward under ``z -> z^m`` and the Cauchy-like determinant."""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import combinations
from typing import Any, Mapping, Sequence

from pullback.algebra.linalg import determinant
from pullback.errors import InvariantError

logger = logging.getLogger(__name__)


class DegenerateInput(InvariantError):
    """Points that must be distinct coincide, or too few points were given."""


def laurent_local_pushforward(
    m: int, a: Mapping[int, Any], j_max: int
) -> dict[int, Any]:
    """Pushforward of ``sum a_k w^k dw^2`` under ``w -> w^m``.

    Only the exponents ``k = m(j+2) - 2`` survive the sum over the ``m``
    branches, giving ``b_j = a_{m(j+2)-2} / m``.
    """
    if m < 2:
        raise InvariantError(f"local degree must be at least 2, got {m}")
    if any(k < -1 for k in a):
        raise InvariantError("Laurent coefficients start at index -1")
    out: dict[int, Any] = {}
    for j in range(-1, j_max + 1):
        c = a.get(m * (j + 2) - 2, 0)
        out[j] = (Fraction(c) if isinstance(c, int) else c) / m
    return out


def _distinct(w: Sequence[Any], u: Sequence[Any]) -> None:
    pts = list(w) + list(u)
    for x, y in combinations(pts, 2):
        if x == y:
            raise DegenerateInput(f"{x} is repeated among the points")


def cauchy_like_matrix(w: Sequence[Any], u: Sequence[Any]) -> list[list[Any]]:
    m = len(w)
    u1, u2 = u[0], u[1]
    return [
        [Fraction(1) / ((wj - u1) * (wj - u2) * (wj - u[t])) for t in range(2, m + 2)]
        for wj in w
    ]


def cauchy_closed_form(w: Sequence[Any], u: Sequence[Any]) -> Any:
    """Diagonal factor times the classical Cauchy determinant in ``w`` and ``u3..``."""
    m = len(w)
    y = list(u[2:m + 2])
    value: Any = Fraction(1)
    for wj in w:
        value = value / ((wj - u[0]) * (wj - u[1]))
    for i in range(m):
        for j in range(i + 1, m):
            value = value * (w[j] - w[i]) * (y[i] - y[j])
    for wi in w:
        for yj in y:
            value = value / (wi - yj)
    return value


def cauchy_like_det(w: Sequence[Any], u: Sequence[Any]) -> Any:
    """``det[1/((w_j-u_1)(w_j-u_2)(w_j-u_t))]`` for ``3 <= t <= m+2``.

    Computed by elimination and by the product formula; the two must agree
    and the value is never zero.
    """
    m = len(w)
    if m < 1 or len(u) < m + 2:
        raise DegenerateInput(f"need m >= 1 and at least m + 2 points u (m={m}, |u|={len(u)})")
    _distinct(w, u[:m + 2])
    direct = determinant(cauchy_like_matrix(w, u))
    closed = cauchy_closed_form(w, u)
    if direct != closed:
        raise InvariantError(f"Cauchy determinant mismatch: {direct} != {closed}")
    if not direct:
        raise InvariantError("Cauchy-like determinant vanished on distinct points")
    return direct
