"""Integrable quadratic differentials on the marked sphere and their bases."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Sequence

from pullback.algebra.base import QQ, Field, common_field, parent_of
from pullback.algebra.poly import Poly
from pullback.algebra.projective import INF, ProjPoint
from pullback.algebra.ratfunc import FunctionField, RationalFunction
from pullback.errors import InvariantError

logger = logging.getLogger(__name__)


class NonIntegrable(InvariantError):
    """Pole of order two or more, or a pole outside the declared set."""


class TooFewPoints(InvariantError):
    """Fewer than four marked points: the cotangent space is zero."""


class DuplicatePoint(InvariantError):
    """A marked point is listed twice."""


class AdmissibilityViolated(InvariantError):
    """A pushforward has poles outside the target markings, or the map is not admissible."""


@dataclass(frozen=True, eq=False)
class QuadraticDifferential:
    """``coeff(z) dz^2`` with at worst simple poles.

    At infinity the order of the pole is ``4 - (deg den - deg num)``, so
    integrability needs a gap of at least three; with a gap of exactly
    three, infinity must be among the declared poles.
    """

    coeff: RationalFunction
    poles: tuple[ProjPoint, ...] | None = None

    def __post_init__(self) -> None:
        if self.poles is not None:
            object.__setattr__(self, "poles", tuple(self.poles))
        if self.coeff.is_zero():
            return
        num, den = self.coeff.num, self.coeff.den
        if not den.is_squarefree():
            raise NonIntegrable(f"{self}: finite pole of order >= 2")
        gap = den.degree - num.degree
        if gap < 3:
            raise NonIntegrable(f"{self}: pole of order {4 - gap} at infinity")
        if self.poles is None:
            return
        finite = [p.value for p in self.poles if not p.is_infinity]
        allowed = Poly.from_roots(den.field, finite, den.var)
        if not (allowed % den).is_zero():
            raise NonIntegrable(
                f"{self}: poles outside {', '.join(str(p) for p in self.poles)}"
            )
        if gap == 3 and INF not in self.poles:
            raise NonIntegrable(f"{self}: simple pole at infinity is not declared")

    @property
    def field(self) -> Field:
        return self.coeff.parent.base

    @property
    def var(self) -> str:
        return self.coeff.var

    def is_zero(self) -> bool:
        return self.coeff.is_zero()

    def __add__(self, other: QuadraticDifferential) -> QuadraticDifferential:
        return QuadraticDifferential(self.coeff + other.coeff, _merge(self.poles, other.poles))

    def __mul__(self, c: Any) -> QuadraticDifferential:
        return QuadraticDifferential(self.coeff * c, self.poles)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuadraticDifferential):
            return NotImplemented
        return self.coeff == other.coeff

    def __hash__(self) -> int:
        return hash(self.coeff)

    def __str__(self) -> str:
        c = str(self.coeff)
        if " " in c and "/" not in c:
            c = f"({c})"
        return f"{c} d{self.var}^2"


def _merge(a, b):
    if a is None or b is None:
        return None
    return tuple(a) + tuple(p for p in b if p not in a)


# ---------------------------------------------------------------------------
# Bases of Q^1(sphere minus marked points)
# ---------------------------------------------------------------------------

def marked_field(points: Sequence[ProjPoint]) -> Field:
    field: Field = QQ
    for p in points:
        if not p.is_infinity:
            field = common_field(field, parent_of(p.value))
    return field


def _check_marked(marked: Sequence[ProjPoint]) -> None:
    if len(marked) < 4:
        raise TooFewPoints(f"{len(marked)} marked points; need at least 4")
    for a, b in combinations(marked, 2):
        if a == b:
            raise DuplicatePoint(f"marked point {a} is listed twice")


def qd_basis(marked: Sequence[ProjPoint], var: str = "z") -> list[QuadraticDifferential]:
    """Basis of the integrable differentials with poles in *marked*.

    With infinity marked and finite points ``u1..um`` the basis is
    ``1/((z-u1)(z-u2)(z-ut)) dz^2`` for ``t = 3..m``; otherwise it is
    ``z^k / prod(z-ui) dz^2`` for ``k = 0..n-4``.
    """
    _check_marked(marked)
    field = marked_field(marked)
    ff = FunctionField(field, var)
    finite = [p.value for p in marked if not p.is_infinity]
    poles = tuple(marked)
    basis: list[QuadraticDifferential] = []
    if len(finite) < len(marked):
        u1, u2 = finite[0], finite[1]
        for ut in finite[2:]:
            den = Poly.from_roots(field, [u1, u2, ut], var)
            basis.append(QuadraticDifferential(ff.fraction(Poly.constant(field, 1, var), den), poles))
    else:
        den = Poly.from_roots(field, finite, var)
        for k in range(len(finite) - 3):
            basis.append(QuadraticDifferential(ff.fraction(Poly.monomial(field, k, 1, var), den), poles))
    return basis


def residue(q: QuadraticDifferential, u: Any) -> Any:
    """Residue of the coefficient at a finite point (zero off the poles)."""
    den = q.coeff.den
    if den(u):
        return parent_of(u).zero()
    return q.coeff.num(u) / den.derivative()(u)


def expand_in_basis(
    q: QuadraticDifferential, marked: Sequence[ProjPoint]
) -> list[Any]:
    """Coordinates of *q* in :func:`qd_basis` of *marked*.

    Raises :class:`AdmissibilityViolated` when *q* does not lie in the span,
    i.e. it has a pole off the marked set.
    """
    basis = qd_basis(marked, q.var)
    finite = [p.value for p in marked if not p.is_infinity]
    field = common_field(marked_field(marked), q.field)
    if q.is_zero():
        return [field.zero() for _ in basis]

    if len(finite) < len(marked):
        u1, u2 = finite[0], finite[1]
        coords = [field(residue(q, ut) * (ut - u1) * (ut - u2)) for ut in finite[2:]]
    else:
        prod = Poly.from_roots(field, finite, q.var)
        ff = FunctionField(field, q.var)
        r = ff(q.coeff) * ff(prod)
        if r.den.degree > 0 or r.num.degree > len(finite) - 4:
            raise AdmissibilityViolated(
                f"{q} has poles outside {', '.join(str(p) for p in marked)}"
            )
        return [r.num.coeff(k) for k in range(len(basis))]

    rest = q.coeff
    for c, e in zip(coords, basis):
        rest = rest - e.coeff * c
    if not rest.is_zero():
        raise AdmissibilityViolated(
            f"{q} has poles outside {', '.join(str(p) for p in marked)}"
        )
    return coords
