"""Points of the projective line, Mobius maps and the cross-ratio."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Any

from pullback.algebra.base import QQ, Field, common_field, parent_of
from pullback.algebra.poly import Poly
from pullback.algebra.ratfunc import FunctionField, RationalFunction
from pullback.errors import InvariantError

logger = logging.getLogger(__name__)


class DegenerateTuple(InvariantError):
    """Two of the points passed to the cross-ratio coincide."""


class SingularMobius(InvariantError):
    """``ad - bc == 0``."""


@dataclass(frozen=True)
class ProjPoint:
    """A point of the sphere: a field element, or ``None`` for infinity."""

    value: Any = None

    @classmethod
    def infinity(cls) -> ProjPoint:
        return cls(None)

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    @property
    def field(self) -> Field:
        return QQ if self.value is None else parent_of(self.value)

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)


INF = ProjPoint.infinity()


def image(g: RationalFunction, p: ProjPoint) -> ProjPoint:
    """``g(p)`` on the sphere."""
    if p.is_infinity:
        dn, dd = g.num.degree, g.den.degree
        if dn > dd:
            return INF
        if dn < dd:
            return ProjPoint(g.parent.base.zero())
        return ProjPoint(g.num.lc / g.den.lc)
    den = g.den(p.value)
    if not den:
        return INF
    return ProjPoint(g.num(p.value) / den)


def _distinct(points: list[ProjPoint]) -> None:
    for (i, a), (j, b) in combinations(enumerate(points), 2):
        if a == b:
            raise DegenerateTuple(f"points {i + 1} and {j + 1} coincide ({a})")


def cross_ratio(z1: ProjPoint, z2: ProjPoint, z3: ProjPoint, z4: ProjPoint) -> Any:
    """``(z1-z2)(z3-z4) / ((z1-z3)(z2-z4))``.

    A point at infinity cancels the two factors that contain it.
    """
    _distinct([z1, z2, z3, z4])
    a, b, c, d = (p.value for p in (z1, z2, z3, z4))
    if a is None:
        return (c - d) / (b - d)
    if b is None:
        return (c - d) / (c - a)
    if c is None:
        return (a - b) / (d - b)
    if d is None:
        return (a - b) / (a - c)
    return (a - b) * (c - d) / ((a - c) * (b - d))


@dataclass(frozen=True)
class Mobius:
    """``z -> (a z + b) / (c z + d)``."""

    a: Any
    b: Any
    c: Any
    d: Any

    def __post_init__(self) -> None:
        if not (self.a * self.d - self.b * self.c):
            raise SingularMobius(f"singular Mobius map {self}")

    @classmethod
    def identity(cls) -> Mobius:
        return cls(1, 0, 0, 1)

    @property
    def field(self) -> Field:
        field: Field = QQ
        for x in (self.a, self.b, self.c, self.d):
            field = common_field(field, parent_of(x))
        return field

    def apply(self, p: ProjPoint) -> ProjPoint:
        if p.is_infinity:
            if not self.c:
                return INF
            return ProjPoint(self.field(self.a) / self.c)
        den = self.c * p.value + self.d
        if not den:
            return INF
        return ProjPoint((self.a * p.value + self.b) / den)

    __call__ = apply

    def inverse(self) -> Mobius:
        return Mobius(self.d, -self.b, -self.c, self.a)

    def compose(self, inner: Mobius) -> Mobius:
        """``self o inner``."""
        return Mobius(
            self.a * inner.a + self.b * inner.c,
            self.a * inner.b + self.b * inner.d,
            self.c * inner.a + self.d * inner.c,
            self.c * inner.b + self.d * inner.d,
        )

    def as_ratfunc(self, var: str = "z") -> RationalFunction:
        field = self.field
        ff = FunctionField(field, var)
        return ff.fraction(
            Poly(field, [self.b, self.a], var), Poly(field, [self.d, self.c], var)
        )

    def __str__(self) -> str:
        return f"({self.a}*z + {self.b})/({self.c}*z + {self.d})"
