"""Field handles, the rationals, and the coercion rules of the tower.

Every coefficient field is a :class:`Field`. Rational numbers are plain
:class:`fractions.Fraction` values living in :data:`QQ`; every other field
has its own element class deriving from :class:`FieldElement`. Mixed
arithmetic is resolved by :func:`common_field`: the smaller operand is
embedded into the field that extends the other one.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import cached_property
from typing import Any

from pullback.errors import InvariantError

logger = logging.getLogger(__name__)


class FieldMismatch(InvariantError, TypeError):
    """Operands live in fields with no common extension in the tower."""


class DivisionByZero(InvariantError, ZeroDivisionError):
    """Division by an exact zero."""


class NonInvertible(InvariantError, ArithmeticError):
    """A nonzero element has no inverse (the modulus is reducible)."""


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------

class Field:
    """Handle of an exact coefficient field.

    Subclasses set ``base`` (``None`` only for the rationals) and provide
    ``key`` for equality, ``_embed`` for lifting base elements and the
    ``zero``/``one`` constructors.
    """

    base: Field | None = None
    transcendental: bool = False

    @property
    def key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and self.key == other.key

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash(self.key)

    def tower(self) -> list[Field]:
        """This field followed by its bases down to the rationals."""
        chain: list[Field] = []
        field: Field | None = self
        while field is not None:
            chain.append(field)
            field = field.base
        return chain

    def extends(self, other: Field) -> bool:
        return any(f == other for f in self.tower())

    def zero(self) -> Any:
        raise NotImplementedError

    def one(self) -> Any:
        raise NotImplementedError

    def __call__(self, x: Any) -> Any:
        """Coerce *x* from this field or any field below it."""
        if parent_of(x) == self:
            return x
        if self.base is None:
            raise FieldMismatch(f"cannot coerce {x!r} into {self}")
        return self._embed(self.base(x))

    def _embed(self, x: Any) -> Any:
        raise NotImplementedError

    def with_base(self, base: Field) -> Field:
        raise FieldMismatch(f"{self} cannot be rebuilt over {base}")


class RationalField(Field):
    """The rationals; elements are :class:`fractions.Fraction`."""

    @property
    def key(self) -> tuple:
        return ("QQ",)

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def __call__(self, x: Any) -> Fraction:
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise FieldMismatch(f"{x!r} is not a rational number")

    def __repr__(self) -> str:
        return "QQ"

    __str__ = __repr__


QQ = RationalField()


def parent_of(x: Any) -> Field:
    if isinstance(x, (int, Fraction)):
        return QQ
    if isinstance(x, FieldElement):
        return x.parent
    raise FieldMismatch(f"{x!r} is not a field element")


def common_field(f1: Field, f2: Field) -> Field:
    """Smallest field of the tower containing both *f1* and *f2*.

    A function field over a smaller constant field is rebuilt over the
    larger one, so Q(z) and Q(w) meet in Q(w)(z).
    """
    if f1 == f2 or f1.extends(f2):
        return f1
    if f2.extends(f1):
        return f2
    for a, b in ((f1, f2), (f2, f1)):
        if a.transcendental:
            try:
                return a.with_base(common_field(a.base, b))
            except FieldMismatch:
                continue
    raise FieldMismatch(f"no common field for {f1} and {f2}")


def coerce_pair(a: Any, b: Any) -> tuple[Field, Any, Any]:
    field = common_field(parent_of(a), parent_of(b))
    return field, field(a), field(b)


def lowest(x: Any) -> Any:
    """Strip embeddings: the same value in the lowest field holding it."""
    while isinstance(x, FieldElement) and x.is_constant():
        x = x.constant()
    return x


def descend(values: list[Any]) -> tuple[Field, list[Any]]:
    """Move *values* into the smallest common field of their lowest forms."""
    lows = [lowest(v) for v in values]
    field: Field = QQ
    for v in lows:
        field = common_field(field, parent_of(v))
    return field, [field(v) for v in lows]


def is_element(x: Any) -> bool:
    return isinstance(x, (int, Fraction, FieldElement))


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------

class FieldElement:
    """Operator plumbing shared by non-rational field elements.

    Subclasses implement the same-parent primitives ``_add``, ``_mul``,
    ``_neg``, ``_inverse``, ``_same`` and ``is_zero``, plus
    ``is_constant``/``constant`` for descending into the base field.
    """

    __slots__ = ()

    parent: Field

    def _binary(self, other: Any, reflected: bool):
        if not is_element(other):
            return None
        _, a, b = coerce_pair(other, self) if reflected else coerce_pair(self, other)
        return a, b

    def __add__(self, other: Any):
        pair = self._binary(other, False)
        return NotImplemented if pair is None else pair[0]._add(pair[1])

    def __radd__(self, other: Any):
        pair = self._binary(other, True)
        return NotImplemented if pair is None else pair[0]._add(pair[1])

    def __sub__(self, other: Any):
        pair = self._binary(other, False)
        return NotImplemented if pair is None else pair[0]._add(pair[1]._neg())

    def __rsub__(self, other: Any):
        pair = self._binary(other, True)
        return NotImplemented if pair is None else pair[0]._add(pair[1]._neg())

    def __mul__(self, other: Any):
        pair = self._binary(other, False)
        return NotImplemented if pair is None else pair[0]._mul(pair[1])

    def __rmul__(self, other: Any):
        pair = self._binary(other, True)
        return NotImplemented if pair is None else pair[0]._mul(pair[1])

    def __truediv__(self, other: Any):
        pair = self._binary(other, False)
        if pair is None:
            return NotImplemented
        return pair[0]._mul(pair[1].inverse())

    def __rtruediv__(self, other: Any):
        pair = self._binary(other, True)
        if pair is None:
            return NotImplemented
        return pair[0]._mul(pair[1].inverse())

    def __neg__(self):
        return self._neg()

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        result = self.parent.one()
        n = abs(n)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero(f"division by zero in {self.parent}")
        return self._inverse()

    def __eq__(self, other: object) -> bool:
        if not is_element(other):
            return NotImplemented
        try:
            _, a, b = coerce_pair(self, other)
        except FieldMismatch:
            return False
        return a._same(b)

    def __ne__(self, other: object) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.constant())
        return self._structural_hash()

    # subclasses --------------------------------------------------------

    def _add(self, other):
        raise NotImplementedError

    def _mul(self, other):
        raise NotImplementedError

    def _neg(self):
        raise NotImplementedError

    def _inverse(self):
        raise NotImplementedError

    def _same(self, other) -> bool:
        raise NotImplementedError

    def _structural_hash(self) -> int:
        raise NotImplementedError

    def is_zero(self) -> bool:
        raise NotImplementedError

    def is_constant(self) -> bool:
        raise NotImplementedError

    def constant(self) -> Any:
        raise NotImplementedError
