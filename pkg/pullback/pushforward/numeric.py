"""Floating-point kernel: fiber sums and the asymptotic constant near a critical point.

Everything runs under ``mpmath.workprec(bits)``; the global mpmath
precision is never changed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

import mpmath

from pullback.algebra.base import QQ, lowest, parent_of
from pullback.algebra.poly import Poly
from pullback.algebra.ratfunc import RationalFunction
from pullback.algebra.roots import UnsupportedField
from pullback.errors import InvariantError
from pullback.pushforward.local import DegenerateInput
from pullback.pushforward.qd import QuadraticDifferential

logger = logging.getLogger(__name__)


class NotSimpleCritical(InvariantError):
    """``g'(c) != 0`` or ``g''(c) == 0``."""


class NumericFailure(InvariantError):
    """Root finding did not converge."""


def to_mp(x: Any) -> mpmath.mpf:
    x = lowest(x)
    if parent_of(x) != QQ:
        raise UnsupportedField(f"numeric evaluation needs rational coefficients, got {x}")
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


def _mp_coeffs(p: Poly) -> list:
    """Highest degree first, as :func:`mpmath.polyroots` wants them."""
    return [to_mp(c) for c in reversed(p.coeffs)]


def _eval(p: Poly, x):
    return mpmath.polyval(_mp_coeffs(p), x) if p.coeffs else mpmath.mpf(0)


def _roots(p: Poly, bits: int) -> list:
    try:
        return list(mpmath.polyroots(_mp_coeffs(p), maxsteps=400, extraprec=bits))
    except mpmath.libmp.NoConvergence as e:
        raise NumericFailure(f"roots of {p} did not converge: {e}") from e


def _derivative_at(g: RationalFunction, w):
    P, Q = g.num, g.den
    W = P.derivative() * Q - P * Q.derivative()
    return _eval(W, w) / _eval(Q, w) ** 2


def fiber_sum(g: RationalFunction, q: QuadraticDifferential | RationalFunction, z0: Any, bits: int = 256):
    """``sum q(w) / g'(w)^2`` over the roots of ``g(w) = z0``."""
    coeff = q.coeff if isinstance(q, QuadraticDifferential) else q
    with mpmath.workprec(bits):
        F = g.num - g.den * z0
        if F.degree < g.degree:
            raise DegenerateInput(f"{z0} is the image of infinity; the fiber is not all finite")
        total = mpmath.mpc(0)
        for w in _roots(F, bits):
            dg = _derivative_at(g, w)
            if dg == 0:
                raise DegenerateInput(f"{z0} is a critical value of {g}")
            total += _eval(coeff.num, w) / _eval(coeff.den, w) / dg**2
        return total


@dataclass(frozen=True)
class AsymptoticFit:
    c_fitted: complex
    c_closed: complex
    rel_err: float
    samples: tuple[tuple[float, complex], ...] = ()

    def to_dict(self) -> dict[str, Any]:
        def pair(c: complex) -> list[float]:
            return [c.real, c.imag]

        return {
            "C_fitted": pair(self.c_fitted),
            "C_closed": pair(self.c_closed),
            "rel_err": self.rel_err,
            "samples": [[t, pair(s)] for t, s in self.samples],
        }


def asymptotic_constant(
    g: RationalFunction,
    c_star: Any,
    u: Sequence[Any],
    t_samples: Sequence[Any],
    precision_bits: int = 256,
) -> AsymptoticFit:
    """Fit ``t * S(t) -> C`` where ``S(t)`` sums ``1/(prod(w - u_i) g'(w)^2)``
    over the two preimages of ``v* + t`` near the simple critical point ``c*``.

    The closed form is ``C = 1 / (prod(c* - u_i) g''(c*))``.
    """
    d1 = g.derivative()
    d2 = d1.derivative()
    if g.den(c_star) == 0:
        raise DegenerateInput(f"{c_star} is a pole of {g}")
    if d1(c_star) != 0 or d2(c_star) == 0:
        raise NotSimpleCritical(f"{c_star} is not a simple critical point of {g}")
    if any(c_star == ui for ui in u):
        raise DegenerateInput(f"c* = {c_star} is one of the marked points")
    if not t_samples:
        raise DegenerateInput("no sample values of t")
    v_star = g(c_star)

    prod: Any = Fraction(1)
    for ui in u:
        prod = prod * (c_star - ui)
    closed_exact = 1 / (prod * d2(c_star))

    with mpmath.workprec(precision_bits):
        c = to_mp(c_star)
        us = [to_mp(ui) for ui in u]
        samples = []
        for t in t_samples:
            tm = to_mp(t)
            F = g.num - g.den * (v_star + t)
            near = sorted(_roots(F, precision_bits), key=lambda w: abs(w - c))[:2]
            s = mpmath.mpc(0)
            for w in near:
                s += 1 / (mpmath.fprod(w - x for x in us) * _derivative_at(g, w) ** 2)
            samples.append((tm, tm * s))
        c_fit = _extrapolate(samples)
        c_closed = mpmath.mpc(to_mp(closed_exact))
        rel_err = abs(c_fit - c_closed) / abs(c_closed)
        logger.debug("asymptotic fit %s vs closed %s (rel %s)", c_fit, c_closed, rel_err)
        return AsymptoticFit(
            complex(c_fit),
            complex(c_closed),
            float(rel_err),
            tuple((float(t), complex(y)) for t, y in samples),
        )


def _extrapolate(samples: list) -> Any:
    """Value at ``t = 0`` of the least-squares line through ``(t, t S(t))``."""
    if len(samples) == 1:
        return samples[0][1]
    n = len(samples)
    tbar = mpmath.fsum(t for t, _ in samples) / n
    ybar = mpmath.fsum(y for _, y in samples) / n
    sxx = mpmath.fsum((t - tbar) ** 2 for t, _ in samples)
    sxy = mpmath.fsum((t - tbar) * (y - ybar) for t, y in samples)
    if sxx == 0:
        return ybar
    return ybar - (sxy / sxx) * tbar
