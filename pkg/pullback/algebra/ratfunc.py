"""Rational functions in one variable over a tower field."""

from __future__ import annotations

import logging
from fractions import Fraction
from math import lcm
from typing import Any

from pullback.algebra.base import (
    DivisionByZero,
    Field,
    FieldElement,
    FieldMismatch,
    common_field,
)
from pullback.algebra.poly import Poly

logger = logging.getLogger(__name__)


class FunctionField(Field):
    """``base(var)``: reduced fractions of polynomials over *base*."""

    transcendental = True

    def __init__(self, base: Field, var: str = "z"):
        self.base = base
        self.var = var

    @property
    def key(self) -> tuple:
        return ("ff", self.base, self.var)

    def with_base(self, base: Field) -> FunctionField:
        return FunctionField(base, self.var)

    @property
    def gen(self) -> RationalFunction:
        return RationalFunction(self, Poly.monomial(self.base, 1, var=self.var))

    def zero(self) -> RationalFunction:
        return RationalFunction(self, Poly(self.base, (), self.var))

    def one(self) -> RationalFunction:
        return self._embed(self.base.one())

    def _embed(self, x: Any) -> RationalFunction:
        return RationalFunction(self, Poly.constant(self.base, x, self.var))

    def __call__(self, x: Any) -> RationalFunction:
        if isinstance(x, Poly):
            return RationalFunction(self, x)
        if isinstance(x, RationalFunction) and x.parent != self:
            if x.parent.var == self.var and self.base.extends(x.parent.base):
                return RationalFunction(self, x.num, x.den)
        return super().__call__(x)

    def fraction(self, num: Poly, den: Poly | None = None) -> RationalFunction:
        return RationalFunction(self, num, den)

    def __repr__(self) -> str:
        return f"{self.base}({self.var})"

    __str__ = __repr__


class RationalFunction(FieldElement):
    """``num/den`` in lowest terms with a monic denominator."""

    __slots__ = ("parent", "num", "den")

    def __init__(self, parent: FunctionField, num: Poly, den: Poly | None = None):
        base, var = parent.base, parent.var
        num = num.lift(base).with_var(var)
        den = Poly.constant(base, 1, var) if den is None else den.lift(base).with_var(var)
        if den.is_zero():
            raise DivisionByZero(f"zero denominator in {parent}")
        if den.degree > 0 and not num.is_zero():
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
        elif num.is_zero():
            den = Poly.constant(base, 1, var)
        if den.lc != 1:
            inv = base.one() / den.lc
            num, den = num * inv, den * inv
        self.parent = parent
        self.num = num
        self.den = den

    # -- field primitives --------------------------------------------------

    def _add(self, other: RationalFunction) -> RationalFunction:
        if self.den == other.den:
            return RationalFunction(self.parent, self.num + other.num, self.den)
        return RationalFunction(
            self.parent,
            self.num * other.den + other.num * self.den,
            self.den * other.den,
        )

    def _mul(self, other: RationalFunction) -> RationalFunction:
        return RationalFunction(
            self.parent, self.num * other.num, self.den * other.den
        )

    def _neg(self) -> RationalFunction:
        return RationalFunction(self.parent, -self.num, self.den)

    def _inverse(self) -> RationalFunction:
        return RationalFunction(self.parent, self.den, self.num)

    def _same(self, other: RationalFunction) -> bool:
        return self.num.coeffs == other.num.coeffs and self.den.coeffs == other.den.coeffs

    def _structural_hash(self) -> int:
        return hash(("ff", self.num.coeffs, self.den.coeffs))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant(self) -> Any:
        return self.num.coeff(0)

    # -- calculus and composition ------------------------------------------

    @property
    def var(self) -> str:
        return self.parent.var

    @property
    def degree(self) -> int:
        """Degree of the map ``z -> self(z)`` on the sphere."""
        return max(self.num.degree, self.den.degree, 0)

    def derivative(self) -> RationalFunction:
        return RationalFunction(
            self.parent,
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __call__(self, x: Any) -> Any:
        """Evaluate at a field element, or compose with another function."""
        return self.num(x) / self.den(x)

    def compose(self, inner: RationalFunction) -> RationalFunction:
        """``self o inner``; the result lives in the field of *inner*."""
        if not isinstance(inner, RationalFunction):
            raise FieldMismatch(f"cannot compose with {inner!r}")
        field = common_field(inner.parent, FunctionField(self.parent.base, inner.var))
        value = self(field(inner))
        return field(value)

    def lift(self, field: FunctionField) -> RationalFunction:
        return field(self)

    def __str__(self) -> str:
        if self.den.degree == 0:
            return str(self.num)
        # one fraction: scale away the rational denominators of the coefficients
        scale = self.num.field(lcm(*(_denominator(c) for c in self.num.coeffs + self.den.coeffs)))
        num, den = str(self.num * scale), str(self.den * scale)
        if " " in num or "/" in num:
            num = f"({num})"
        if " " in den or "*" in den or "/" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"RationalFunction({self} over {self.parent})"


def _denominator(c: Any) -> int:
    """Common denominator of the rational leaves of a tower element."""
    if isinstance(c, Fraction):
        return c.denominator
    poly = getattr(c, "poly", None)
    if isinstance(poly, Poly):
        return lcm(1, *(_denominator(x) for x in poly.coeffs))
    return 1
