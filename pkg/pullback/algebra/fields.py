"""Simple algebraic extensions ``base[name]/(modulus)`` and cyclotomics."""

from __future__ import annotations

import logging
from typing import Any, Iterable

from pullback.algebra.base import QQ, Field, FieldElement, NonInvertible
from pullback.algebra.poly import Poly
from pullback.errors import InvariantError

logger = logging.getLogger(__name__)


class InvalidModulus(InvariantError):
    """Modulus is constant or not squarefree."""


class NumberField(Field):
    """``base[name]/(modulus)``.

    The modulus is made monic and must be squarefree; irreducibility is
    not checked, so a reducible modulus shows up later as
    :class:`NonInvertible` when a zero divisor is inverted.
    """

    def __init__(self, base: Field, modulus: Poly | Iterable[Any], name: str = "w"):
        if not isinstance(modulus, Poly):
            modulus = Poly(base, modulus, name)
        modulus = modulus.lift(base).with_var(name)
        if modulus.degree < 1:
            raise InvalidModulus(f"modulus {modulus} has degree < 1")
        modulus = modulus.monic()
        if not modulus.is_squarefree():
            raise InvalidModulus(f"modulus {modulus} is not squarefree")
        self.base = base
        self.modulus = modulus
        self.name = name

    @property
    def key(self) -> tuple:
        return ("nf", self.base, self.name, self.modulus.coeffs)

    @property
    def degree(self) -> int:
        return self.modulus.degree

    @property
    def gen(self) -> NFElement:
        return NFElement(self, Poly.monomial(self.base, 1, var=self.name))

    def element(self, coeffs: Iterable[Any]) -> NFElement:
        """Element ``sum c_k * gen^k`` from base coefficients, low first."""
        return NFElement(self, Poly(self.base, coeffs, self.name))

    def zero(self) -> NFElement:
        return NFElement(self, Poly(self.base, (), self.name))

    def one(self) -> NFElement:
        return self._embed(self.base.one())

    def _embed(self, x: Any) -> NFElement:
        return NFElement(self, Poly.constant(self.base, x, self.name))

    def __repr__(self) -> str:
        return f"{self.base}[{self.name}]/({self.modulus})"

    __str__ = __repr__


class NFElement(FieldElement):
    """Residue class of a polynomial in the generator."""

    __slots__ = ("parent", "poly")

    def __init__(self, parent: NumberField, poly: Poly):
        if poly.degree >= parent.degree:
            poly = poly % parent.modulus
        self.parent = parent
        self.poly = poly if poly.var == parent.name else poly.with_var(parent.name)

    @property
    def coeffs(self) -> tuple[Any, ...]:
        return self.poly.coeffs

    def _add(self, other: NFElement) -> NFElement:
        return NFElement(self.parent, self.poly + other.poly)

    def _mul(self, other: NFElement) -> NFElement:
        return NFElement(self.parent, self.poly * other.poly)

    def _neg(self) -> NFElement:
        return NFElement(self.parent, -self.poly)

    def _inverse(self) -> NFElement:
        g, s, _ = self.poly.ext_euclid(self.parent.modulus)
        if g.degree > 0:
            raise NonInvertible(
                f"{self} shares the factor {g} with the modulus of {self.parent}"
            )
        return NFElement(self.parent, s)

    def _same(self, other: NFElement) -> bool:
        return self.poly.coeffs == other.poly.coeffs

    def _structural_hash(self) -> int:
        return hash(("nf", self.parent.name, self.poly.coeffs))

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_constant(self) -> bool:
        return self.poly.degree <= 0

    def constant(self) -> Any:
        return self.poly.coeff(0)

    def __str__(self) -> str:
        return str(self.poly)

    def __repr__(self) -> str:
        return f"NFElement({self.poly} in {self.parent})"


# ---------------------------------------------------------------------------
# Cyclotomics
# ---------------------------------------------------------------------------

def cyclotomic(d: int, var: str = "w") -> Poly:
    """The d-th cyclotomic polynomial over Q.

    ``x^d - 1`` divided by the cyclotomic polynomials of the proper
    divisors of ``d``.
    """
    if d < 1:
        raise InvariantError(f"cyclotomic index must be positive, got {d}")
    result = Poly.monomial(QQ, d, var=var) - 1
    for e in range(1, d):
        if d % e == 0:
            result = result // cyclotomic(e, var)
    return result


def cyclotomic_field(d: int, name: str = "w") -> NumberField:
    """``Q(zeta_d)`` with ``zeta_d`` printed as *name*."""
    return NumberField(QQ, cyclotomic(d, name), name)


def root_of_unity(field: NumberField, k: int) -> NFElement:
    """``gen ** k``; the generator of a cyclotomic field is a root of unity."""
    return field.gen ** k
