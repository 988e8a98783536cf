"""Text syntax for constants, points, rational functions and field towers.

Grammar (no implicit multiplication)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('-' | '+') factor | base ('^' uint)?
    base   := uint | symbol | '(' expr ')'

Symbols are the generators of the field tower plus the function variable.
Errors carry the byte offset of the offending token.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from pullback.algebra.base import QQ, DivisionByZero, Field
from pullback.algebra.fields import NumberField
from pullback.algebra.poly import Poly
from pullback.algebra.projective import ProjPoint
from pullback.algebra.ratfunc import FunctionField, RationalFunction
from pullback.config import get_settings
from pullback.errors import InputError

logger = logging.getLogger(__name__)


class ParseError(InputError):
    """Text does not conform to the expression grammar."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class UnknownSymbol(ParseError):
    """A symbol is neither a tower generator nor the variable."""


INFINITY_WORDS = {"inf", "oo", "∞", "infinity"}

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<sym>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)
_QD_SUFFIX = r"\s*d\s*{var}\s*\^\s*2\s*$"


@dataclass(frozen=True)
class Token:
    kind: str      # "int", "sym", "op" or "end"
    text: str
    offset: int    # bytes


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(
                f"unexpected character {text[start]!r}", _byte_offset(text, start)
            )
        kind = m.lastgroup or "op"
        tokens.append(Token(kind, m.group(kind), _byte_offset(text, m.start(kind))))
        pos = m.end()
    tokens.append(Token("end", "", len(text.encode("utf-8"))))
    return tokens


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def _degree(value: Any) -> int:
    if isinstance(value, RationalFunction):
        return max(value.num.degree, value.den.degree, 0)
    return 0


# ---------------------------------------------------------------------------
# Recursive descent
# ---------------------------------------------------------------------------

class _Parser:
    """Evaluates while parsing; values are combined with the field operators."""

    def __init__(self, text: str, symbols: dict[str, Any], lift: Callable[[Any], Any]):
        self.tokens = tokenize(text)
        self.symbols = symbols
        self.lift = lift
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def _take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def _expect(self, text: str) -> None:
        if self.tok.text != text or self.tok.kind != "op":
            raise ParseError(f"expected {text!r}, found {self._describe()}", self.tok.offset)
        self.i += 1

    def _describe(self) -> str:
        return "end of input" if self.tok.kind == "end" else repr(self.tok.text)

    def parse(self) -> Any:
        if self.tok.kind == "end":
            raise ParseError("empty expression", self.tok.offset)
        value = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self._describe()}", self.tok.offset)
        return value

    def expr(self) -> Any:
        value = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self._take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Any:
        value = self.factor()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self._take()
            rhs = self.factor()
            if op.text == "*":
                value = value * rhs
            else:
                if not rhs:
                    raise DivisionByZero(f"division by zero at byte {op.offset}")
                value = value / rhs
        return value

    def factor(self) -> Any:
        if self.tok.kind == "op" and self.tok.text in "+-":
            sign = self._take().text
            value = self.factor()
            return -value if sign == "-" else value
        value = self.base()
        if self.tok.kind == "op" and self.tok.text == "^":
            self._take()
            if self.tok.kind != "int":
                raise ParseError(
                    f"exponent must be a non-negative integer, found {self._describe()}",
                    self.tok.offset,
                )
            exp = self._take()
            cap = get_settings().parse_max_degree
            digits = exp.text.lstrip("0") or "0"
            n = int(digits) if len(digits) <= len(str(cap)) else cap + 1
            if n > cap or _degree(value) * n > cap:
                raise ParseError(
                    f"power of degree {_degree(value)} to the {exp.text} exceeds the"
                    f" degree cap {cap} (PULLBACK_PARSE_MAX_DEGREE)",
                    exp.offset,
                )
            value = value ** n
        return value

    def base(self) -> Any:
        tok = self.tok
        if tok.kind == "int":
            self._take()
            return self.lift(Fraction(int(tok.text)))
        if tok.kind == "sym":
            self._take()
            if tok.text not in self.symbols:
                raise UnknownSymbol(f"unknown symbol {tok.text!r}", tok.offset)
            return self.symbols[tok.text]
        if tok.kind == "op" and tok.text == "(":
            self._take()
            value = self.expr()
            self._expect(")")
            return value
        raise ParseError(f"unexpected {self._describe()}", tok.offset)


# ---------------------------------------------------------------------------
# Public entry points
# ---------------------------------------------------------------------------

def tower_symbols(field: Field) -> dict[str, Any]:
    """Generator of every layer of *field*, keyed by its printed name."""
    symbols: dict[str, Any] = {}
    for layer in reversed(field.tower()):
        if isinstance(layer, NumberField):
            symbols[layer.name] = field(layer.gen)
        elif isinstance(layer, FunctionField):
            symbols[layer.var] = field(layer.gen)
    return symbols


def parse_constant(text: str, field: Field = QQ) -> Any:
    """Parse an element of *field* (no function variable)."""
    value = _Parser(text, tower_symbols(field), field).parse()
    return field(value)


def parse_ratfunc(text: str, field: Field = QQ, var: str = "z") -> RationalFunction:
    """Parse a rational function in *var* with coefficients in *field*."""
    ff = FunctionField(field, var)
    symbols = tower_symbols(ff)
    value = _Parser(text, symbols, ff).parse()
    return ff(value)


def parse_poly(text: str, field: Field = QQ, var: str = "z") -> Poly:
    f = parse_ratfunc(text, field, var)
    if f.den.degree > 0:
        raise ParseError(f"{text!r} is not a polynomial in {var}")
    return f.num


def parse_point(text: str, field: Field = QQ) -> ProjPoint:
    stripped = text.strip()
    if stripped.lower() in INFINITY_WORDS:
        return ProjPoint.infinity()
    return ProjPoint(parse_constant(stripped, field))


def parse_points(text: str, field: Field = QQ) -> list[ProjPoint]:
    """Comma separated points, e.g. ``"0, -1, -w, inf"``."""
    if not text.strip():
        return []
    return [parse_point(part, field) for part in text.split(",")]


def parse_qd(text: str, field: Field = QQ, var: str = "z") -> RationalFunction:
    """Coefficient of ``"<ratfunc> dz^2"``; the ``dz^2`` suffix is optional."""
    body = re.sub(_QD_SUFFIX.format(var=re.escape(var)), "", text)
    return parse_ratfunc(body, field, var)


def parse_field_tower(moduli: list[str], base: Field = QQ) -> Field:
    """Adjoin one root per modulus text, bottom layer first.

    Each modulus names exactly one new symbol, its generator: ``"w^2+w+1"``
    then ``"s^3-2"`` builds ``Q(w)[s]/(s^3 - 2)``.
    """
    field = base
    for text in moduli:
        known = set(tower_symbols(field))
        new = sorted(
            {t.text for t in tokenize(text) if t.kind == "sym"} - known
        )
        if len(new) != 1:
            raise ParseError(
                f"modulus {text!r} must introduce exactly one new symbol, found {new}"
            )
        field = NumberField(field, parse_poly(text, field, new[0]), new[0])
        logger.debug("adjoined %s: %s", new[0], field)
    return field
