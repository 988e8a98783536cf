"""Dense univariate polynomials over any field of the tower."""

from __future__ import annotations

import logging
from typing import Any, Iterable

from pullback.algebra.base import (
    DivisionByZero,
    Field,
    FieldMismatch,
    common_field,
    is_element,
    parent_of,
)
from pullback.errors import InvariantError

logger = logging.getLogger(__name__)


class Poly:
    """Polynomial with coefficients in ``field``, lowest degree first.

    The zero polynomial has no coefficients and degree ``-1``. The
    variable name only matters for printing; equality ignores it.
    """

    __slots__ = ("field", "coeffs", "var")

    def __init__(self, field: Field, coeffs: Iterable[Any] = (), var: str = "z"):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs: tuple[Any, ...] = tuple(cs)
        self.var = var

    @classmethod
    def constant(cls, field: Field, c: Any, var: str = "z") -> Poly:
        return cls(field, [c], var)

    @classmethod
    def monomial(cls, field: Field, k: int, c: Any = 1, var: str = "z") -> Poly:
        return cls(field, [field.zero()] * k + [c], var)

    @classmethod
    def from_roots(cls, field: Field, roots: Iterable[Any], var: str = "z") -> Poly:
        """Monic polynomial prod (z - r)."""
        result = cls.constant(field, 1, var)
        for r in roots:
            result = result * cls(common_field(field, parent_of(r)), [-r, 1], var)
        return result

    # -- basic accessors ---------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Any:
        if not self.coeffs:
            return self.field.zero()
        return self.coeffs[-1]

    def coeff(self, k: int) -> Any:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero()

    def lift(self, field: Field) -> Poly:
        if field == self.field:
            return self
        return Poly(field, self.coeffs, self.var)

    def with_var(self, var: str) -> Poly:
        return Poly(self.field, self.coeffs, var)

    def _align(self, other: Any) -> tuple[Poly, Poly]:
        if isinstance(other, Poly):
            field = common_field(self.field, other.field)
            return self.lift(field), other.lift(field)
        if is_element(other):
            field = common_field(self.field, parent_of(other))
            return self.lift(field), Poly.constant(field, other, self.var)
        raise FieldMismatch(f"cannot combine a polynomial with {other!r}")

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: Any) -> Poly:
        try:
            a, b = self._align(other)
        except FieldMismatch:
            return NotImplemented
        n = max(len(a.coeffs), len(b.coeffs))
        return Poly(a.field, [a.coeff(k) + b.coeff(k) for k in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.field, [-c for c in self.coeffs], self.var)

    def __sub__(self, other: Any) -> Poly:
        try:
            a, b = self._align(other)
        except FieldMismatch:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other: Any) -> Poly:
        return (-self) + other

    def __mul__(self, other: Any) -> Poly:
        try:
            a, b = self._align(other)
        except FieldMismatch:
            return NotImplemented
        if a.is_zero() or b.is_zero():
            return Poly(a.field, (), self.var)
        out = [a.field.zero()] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                out[i + j] = out[i + j] + x * y
        return Poly(a.field, out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Poly.constant(self.field, 1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: Any) -> tuple[Poly, Poly]:
        a, b = self._align(other)
        if b.is_zero():
            raise DivisionByZero("polynomial division by zero")
        field = a.field
        rem = list(a.coeffs)
        quo = [field.zero()] * max(len(rem) - len(b.coeffs) + 1, 0)
        inv = field.one() / b.lc
        db = b.degree
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            q = c * inv
            quo[k - db] = q
            for j, y in enumerate(b.coeffs):
                rem[k - db + j] = rem[k - db + j] - q * y
        return Poly(field, quo, self.var), Poly(field, rem, self.var)

    def __floordiv__(self, other: Any) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Any) -> Poly:
        return divmod(self, other)[1]

    def __eq__(self, other: object) -> bool:
        try:
            a, b = self._align(other)
        except FieldMismatch:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- evaluation and calculus ---------------------------------------------

    def __call__(self, x: Any) -> Any:
        """Horner evaluation; *x* may be a field element or a polynomial."""
        acc: Any = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: Poly) -> Poly:
        result = self(other)
        if not isinstance(result, Poly):
            result = Poly.constant(other.field, result, other.var)
        return result

    def derivative(self) -> Poly:
        return Poly(
            self.field,
            [k * c for k, c in enumerate(self.coeffs)][1:],
            self.var,
        )

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self * (self.field.one() / self.lc)

    # -- Euclidean algorithms --------------------------------------------------

    def gcd(self, other: Poly) -> Poly:
        a, b = self._align(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def ext_euclid(self, other: Poly) -> tuple[Poly, Poly, Poly]:
        """Return ``(g, s, t)`` with ``g`` monic and ``s*self + t*other == g``."""
        a, b = self._align(other)
        if a.is_zero() and b.is_zero():
            raise InvariantError("extended Euclid of two zero polynomials")
        one = Poly.constant(a.field, 1, self.var)
        zero = Poly(a.field, (), self.var)
        r0, r1, s0, s1, t0, t1 = a, b, one, zero, zero, one
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        inv = a.field.one() / r0.lc
        return r0 * inv, s0 * inv, t0 * inv

    def resultant(self, other: Poly) -> Any:
        """Resultant by the Euclidean recursion over the coefficient field."""
        a, b = self._align(other)
        field = a.field
        if a.is_zero() or b.is_zero():
            return field.zero()
        m, n = a.degree, b.degree
        if n == 0:
            return b.lc ** m
        if m == 0:
            return a.lc ** n
        r = a % b
        if r.is_zero():
            return field.zero()
        sign = -1 if (m * n) % 2 else 1
        return sign * b.lc ** (m - r.degree) * b.resultant(r)

    def is_squarefree(self) -> bool:
        return self.gcd(self.derivative()).degree <= 0

    def squarefree_part(self) -> Poly:
        if self.degree <= 0:
            return Poly.constant(self.field, 1, self.var)
        return (self // self.gcd(self.derivative())).monic()

    # -- printing ----------------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms: list[str] = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            terms.append(format_term(c, _monomial(self.var, k)))
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self}, over {self.field})"


def _monomial(var: str, k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return var
    return f"{var}^{k}"


def format_term(c: Any, mono: str) -> str:
    """Render ``c * mono`` in the parser's grammar."""
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return f"-{mono}"
    s = str(c)
    if " " in s:
        s = f"({s})"
    return f"{s}*{mono}"
