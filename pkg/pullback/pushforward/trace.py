"""Exact pushforward of quadratic differentials by the trace method.

For ``g = P/Q`` the fiber of ``g`` over a generic ``z`` is the root set of
``F(w) = P(w) - z Q(w)`` over the field ``K(z)``. The pushforward

    (g_* q)(z) = sum over g(w) = z of q(w) / g'(w)^2

is then the trace of multiplication by ``h = q / g'^2`` on
``K(z)[w] / (F)``: reduce ``h`` modulo ``F`` (inverting its denominator by
extended Euclid) and pair its coefficients with the power sums of the
roots of ``F``.
"""

from __future__ import annotations

import logging
from typing import Any

from pullback.algebra.base import NonInvertible, descend
from pullback.algebra.poly import Poly
from pullback.algebra.ratfunc import FunctionField, RationalFunction
from pullback.errors import InvariantError
from pullback.pushforward.qd import QuadraticDifferential

logger = logging.getLogger(__name__)


class ConstantMap(InvariantError):
    """The map has degree zero."""


class InternalNonInvertible(NonInvertible):
    """The denominator of ``q / g'^2`` shares a root with the fiber polynomial."""


def _split(g: RationalFunction, q: RationalFunction):
    """``P, Q, qn, qd`` in the variable ``w`` over the lowest common field."""
    parts = [g.num, g.den, q.num, q.den]
    sizes = [len(p.coeffs) for p in parts]
    field, flat = descend([c for p in parts for c in p.coeffs])
    out, i = [], 0
    for n in sizes:
        out.append(Poly(field, flat[i:i + n], "w"))
        i += n
    return field, out


def power_sums(f: Poly, count: int) -> list[Any]:
    """``p_0 .. p_{count-1}`` for the roots of the monic polynomial *f* (Newton)."""
    n = f.degree
    c = f.coeffs
    p = [f.field(n)]
    for k in range(1, count):
        acc = f.field.zero()
        if k <= n:
            acc = acc + k * c[n - k]
        for i in range(1, min(k, n + 1)):
            acc = acc + c[n - i] * p[k - i]
        p.append(-acc)
    return p


def fiber_polynomial(P: Poly, Q: Poly, var: str = "z") -> Poly:
    """``P(w) - z Q(w)`` as a polynomial in ``w`` over ``K(z)`` (not monic)."""
    kz = FunctionField(P.field, var)
    z = kz.gen
    n = max(P.degree, Q.degree)
    return Poly(kz, [kz(P.coeff(k)) - z * Q.coeff(k) for k in range(n + 1)], "w")


def pushforward(
    g: RationalFunction, q: QuadraticDifferential | RationalFunction, check: bool = True
) -> QuadraticDifferential:
    """Coefficient of ``g_*(q dz^2)`` as an exact rational function in ``z``."""
    if isinstance(q, RationalFunction):
        q = QuadraticDifferential(q)
    if g.is_constant():
        raise ConstantMap(f"cannot push forward by the constant map {g}")
    var = g.var
    field, (P, Q, qn, qd) = _split(g, q.coeff)
    logger.debug("pushforward: degree %d over %s", g.degree, field)
    if q.is_zero():
        return QuadraticDifferential(FunctionField(field, var).zero())

    F = fiber_polynomial(P, Q, var)
    kz = F.field
    F = F.monic()
    W = P.derivative() * Q - P * Q.derivative()
    num = (qn * Q**4).lift(kz) % F
    den = (qd * W * W).lift(kz) % F
    gcd, s, _ = den.ext_euclid(F)
    if gcd.degree > 0:
        raise InternalNonInvertible(f"denominator of q/g'^2 is not invertible modulo {F}")
    h = (num * s) % F

    sums = power_sums(F, F.degree)
    trace = kz.zero()
    for k, hk in enumerate(h.coeffs):
        trace = trace + hk * sums[k]

    result = QuadraticDifferential(trace)
    if check and not result.is_zero():
        _check_poles(P, Q, qd, W, result)
    return result


def pole_locus(g: RationalFunction, q: QuadraticDifferential | RationalFunction) -> Poly:
    """Monic polynomial in ``z`` vanishing at the finite images of the poles
    of *q*, of the critical points of *g* and of infinity."""
    coeff = q.coeff if isinstance(q, QuadraticDifferential) else q
    _, (P, Q, _, qd) = _split(g, coeff)
    W = P.derivative() * Q - P * Q.derivative()
    return _locus(P, Q, qd * W, g.var)


def _locus(P: Poly, Q: Poly, D: Poly, var: str) -> Poly:
    F = fiber_polynomial(P, Q, var)
    res = F.resultant(D.lift(F.field))
    if not isinstance(res, RationalFunction):
        res = F.field(res)
    locus = res.num.monic()
    if P.degree <= Q.degree:
        # g(inf) is finite
        at_inf = P.coeff(Q.degree) / Q.lc
        locus = locus * Poly(P.field, [-at_inf, 1], var)
    return locus


def _check_poles(P: Poly, Q: Poly, qd: Poly, W: Poly, result: QuadraticDifferential) -> None:
    locus = _locus(P, Q, qd * W, result.var)
    den = result.coeff.den
    if not (locus.squarefree_part().lift(den.field) % den).is_zero():
        raise InvariantError(
            f"pushforward {result} has poles off the critical and pole images"
        )
