"""Expression parser: printed forms parse back, malformed text fails with an offset.

Run:
    pytest evals/tasks/algebra/test_parser.py -v
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import pytest

from pullback.algebra import (
    INF,
    QQ,
    FunctionField,
    ParseError,
    Poly,
    UnknownSymbol,
    parse_constant,
    parse_field_tower,
    parse_point,
    parse_points,
    parse_qd,
    parse_ratfunc,
)
from pullback.config import get_settings
from pullback.errors import InputError


def _random_coeff(rng: random.Random, field):
    c = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    if field == QQ:
        return c
    return field.element([c, Fraction(rng.randint(-4, 4), rng.randint(1, 3))])


def _random_poly(rng: random.Random, field, max_degree: int) -> Poly:
    return Poly(field, [_random_coeff(rng, field) for _ in range(rng.randint(0, max_degree) + 1)])


def _random_ratfunc(rng: random.Random, field):
    num = _random_poly(rng, field, 4)
    den = _random_poly(rng, field, 3)
    while den.is_zero():
        den = _random_poly(rng, field, 3)
    return FunctionField(field, "z").fraction(num, den)


@pytest.mark.parametrize("seed", range(100))
def test_round_trip_over_q(seed: int) -> None:
    f = _random_ratfunc(random.Random(seed), QQ)
    assert parse_ratfunc(str(f)) == f


@pytest.mark.parametrize("seed", range(100))
def test_round_trip_over_omega(seed: int, omega) -> None:
    f = _random_ratfunc(random.Random(1000 + seed), omega)
    assert parse_ratfunc(str(f), omega) == f


def test_unary_minus_on_any_factor() -> None:
    assert parse_ratfunc("-(z+1)^2 - -z") == parse_ratfunc("-z^2-z-1")
    assert parse_ratfunc("2*-z") == parse_ratfunc("-2*z")
    # exponent binds tighter than unary minus
    assert parse_ratfunc("-z^2") == parse_ratfunc("-(z^2)")


def test_constants_and_tower(omega_cbrt2) -> None:
    assert parse_constant("3/6") == Fraction(1, 2)
    s = parse_constant("s", omega_cbrt2)
    assert parse_constant("-s*w^2", omega_cbrt2) == -s * parse_constant("w", omega_cbrt2) ** 2


def test_field_tower_needs_one_new_symbol() -> None:
    with pytest.raises(ParseError):
        parse_field_tower(["w^2+w+1", "w^3-2"])
    with pytest.raises(ParseError):
        parse_field_tower(["a*b+1"])


def test_points(omega) -> None:
    assert parse_point("inf") == INF
    assert parse_point("∞") == INF
    pts = parse_points("0, -1, -w, -w^2", omega)
    assert len(pts) == 4
    assert pts[2].value == -omega.gen


def test_quadratic_differential_suffix() -> None:
    assert parse_qd("1/(z*(z^3+2)) dz^2") == parse_ratfunc("1/(z*(z^3+2))")
    assert parse_qd("1/(z^2-1)") == parse_ratfunc("1/(z^2-1)")


@pytest.mark.parametrize(
    "text, offset",
    [
        ("z + * 2", 4),
        ("z^-1", 2),
        ("(z + 1", 6),
        ("z $ 1", 2),
        ("", 0),
    ],
)
def test_malformed_input_reports_offset(text: str, offset: int) -> None:
    with pytest.raises(ParseError) as exc:
        parse_ratfunc(text)
    assert exc.value.offset == offset
    assert isinstance(exc.value, InputError)


def test_unknown_symbol() -> None:
    with pytest.raises(UnknownSymbol) as exc:
        parse_ratfunc("z + w")
    assert exc.value.offset == 4


# ---------------------------------------------------------------------------
# Exponent cap
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "text, offset",
    [
        ("(z+1)^10000000", 6),
        ("z^99999999999", 2),
        ("2*z^" + "9" * 5000, 4),
        ("(z^40)^30", 7),
    ],
)
def test_huge_exponent_is_a_parse_error(text: str, offset: int) -> None:
    with pytest.raises(ParseError, match="degree cap") as exc:
        parse_ratfunc(text)
    assert exc.value.offset == offset


def test_power_within_the_cap() -> None:
    f = parse_ratfunc("(z+1)^40")
    assert f.den.degree == 0
    assert f.num.coeffs == tuple(Fraction(comb(40, k)) for k in range(41))
    assert parse_ratfunc("z^0010") == parse_ratfunc("z^10")


def test_degree_cap_follows_settings(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("PULLBACK_PARSE_MAX_DEGREE", "8")
    get_settings.cache_clear()
    assert parse_ratfunc("(z^2+1)^4").num.degree == 8
    with pytest.raises(ParseError, match="degree cap 8"):
        parse_ratfunc("(z^3+1)^3")


def test_constant_powers_by_squaring(omega) -> None:
    w = omega.gen
    assert parse_constant("w^1000", omega) == w
    assert w ** -301 == w ** 2
    assert parse_constant("2^100") == Fraction(2**100)
