"""Exact square roots and quadratic extensions.

Over number fields a square root is found by splitting
``K[s]/(s^2 - a)``: ``a`` is a square exactly when that algebra is not a
field, which sympy decides by factoring the characteristic polynomial of a
primitive element over Q.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import count
from math import isqrt
from typing import Any

import sympy

from pullback.algebra.base import QQ, Field, parent_of
from pullback.algebra.fields import NFElement, NumberField
from pullback.algebra.poly import Poly
from pullback.algebra.ratfunc import FunctionField, RationalFunction
from pullback.errors import InvariantError

logger = logging.getLogger(__name__)


class UnsupportedField(InvariantError):
    """Square roots are not implemented over this kind of tower."""


def field_sqrt(a: Any) -> Any | None:
    """A square root of *a* in its own field, or ``None`` if there is none."""
    field = parent_of(a)
    if not a:
        return field.zero()
    if field == QQ:
        return _rational_sqrt(Fraction(a))
    if isinstance(field, FunctionField):
        return _ratfunc_sqrt(a)
    if isinstance(field, NumberField) and _is_absolute(field):
        return _number_field_sqrt(a)
    raise UnsupportedField(f"square roots over {field} are not supported")


def adjoin_sqrt(a: Any, name: str | None = None) -> tuple[Field, Any]:
    """``(field, root)`` with ``root**2 == a``.

    The field is the parent of *a* when *a* is already a square there,
    otherwise ``K[name]/(name^2 - a)``.
    """
    field = parent_of(a)
    try:
        root = field_sqrt(a)
    except UnsupportedField:
        root = None
    if root is not None:
        return field, root
    name = name or _fresh_name(field)
    ext = NumberField(field, [-a, 0, 1], name)
    logger.debug("adjoined sqrt(%s) as %s", a, name)
    return ext, ext.gen


def _fresh_name(field: Field) -> str:
    taken = set()
    for layer in field.tower():
        taken.add(getattr(layer, "name", None) or getattr(layer, "var", None))
    if "s" not in taken:
        return "s"
    return next(f"s{k}" for k in count(1) if f"s{k}" not in taken)


def _is_absolute(field: Field) -> bool:
    return all(isinstance(layer, NumberField) for layer in field.tower()[:-1])


# ---------------------------------------------------------------------------
# Rationals and rational functions
# ---------------------------------------------------------------------------

def _rational_sqrt(a: Fraction) -> Fraction | None:
    if a < 0:
        return None
    n, d = isqrt(a.numerator), isqrt(a.denominator)
    if n * n == a.numerator and d * d == a.denominator:
        return Fraction(n, d)
    return None


def poly_sqrt(p: Poly) -> Poly | None:
    """``r`` with ``r*r == p``, or ``None``."""
    if p.is_zero():
        return p
    if p.degree % 2:
        return None
    lead = field_sqrt(p.lc)
    if lead is None:
        return None
    m = p.degree // 2
    r: list[Any] = [p.field.zero()] * (m + 1)
    r[m] = p.field(lead)
    two_lead = 2 * r[m]
    for k in range(1, m + 1):
        acc = p.coeff(2 * m - k)
        for i in range(1, k):
            acc = acc - r[m - i] * r[m - k + i]
        r[m - k] = acc / two_lead
    root = Poly(p.field, r, p.var)
    return root if root * root == p else None


def _ratfunc_sqrt(f: RationalFunction) -> RationalFunction | None:
    num = poly_sqrt(f.num)
    den = poly_sqrt(f.den)
    if num is None or den is None:
        return None
    return f.parent.fraction(num, den)


# ---------------------------------------------------------------------------
# Number fields over Q
# ---------------------------------------------------------------------------

def _basis(field: Field) -> list[Any]:
    if field == QQ:
        return [Fraction(1)]
    lower = _basis(field.base)
    return [field(b) * field.gen ** k for k in range(field.degree) for b in lower]


def _coordinates(x: Any, field: Field) -> list[Fraction]:
    if field == QQ:
        return [Fraction(x)]
    x = field(x)
    out: list[Fraction] = []
    for k in range(field.degree):
        out.extend(_coordinates(x.poly.coeff(k), field.base))
    return out


def _charpoly(theta: NFElement, sym: sympy.Symbol) -> sympy.Poly:
    field = theta.parent
    cols = [_coordinates(theta * b, field) for b in _basis(field)]
    n = len(cols)
    matrix = sympy.Matrix(
        n, n, lambda i, j: sympy.Rational(cols[j][i].numerator, cols[j][i].denominator)
    )
    return matrix.charpoly(sym)


def _number_field_sqrt(a: NFElement) -> NFElement | None:
    field = a.parent
    ext = NumberField(field, [-a, 0, 1], _fresh_name(field))
    gens = [ext(layer.gen) for layer in field.tower()[:-1]]
    x = sympy.Symbol("x")
    for k in count():
        theta = ext.gen + sum((k ** (i + 1) * g for i, g in enumerate(gens)), ext.zero())
        cp = _charpoly(theta, x)
        if sympy.Poly(cp.as_expr(), x).is_sqf:
            break
    _, factors = sympy.factor_list(cp.as_expr(), x)
    if len(factors) == 1 and factors[0][1] == 1:
        return None
    factor = sympy.Poly(factors[0][0], x)
    z = ext.zero()
    for c in factor.all_coeffs():
        z = z * theta + Fraction(int(c.p), int(c.q))
    lo, hi = z.poly.coeff(0), z.poly.coeff(1)
    if not hi:
        raise InvariantError(f"zero divisor {z} of {ext} has no generator part")
    root = field(-lo / hi)
    if root * root != a:
        raise InvariantError(f"split of {ext} did not produce a square root of {a}")
    return root
