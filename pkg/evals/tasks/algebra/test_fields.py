"""Exact arithmetic over Q, number-field towers and rational-function fields.

Run:
    pytest evals/tasks/algebra/ -v
"""

from __future__ import annotations

from fractions import Fraction

import pytest
import sympy

from pullback.algebra import (
    QQ,
    FieldMismatch,
    FunctionField,
    InvalidModulus,
    NonInvertible,
    NumberField,
    Poly,
    adjoin_sqrt,
    common_field,
    cyclotomic,
    cyclotomic_field,
    descend,
    field_sqrt,
    parse_constant,
    parse_ratfunc,
    root_of_unity,
)
from pullback.pushforward import QuadraticDifferential


class TestNumberFields:
    def test_inverse_by_extended_euclid(self, omega) -> None:
        w = omega.gen
        assert 1 / (1 + w) == -w
        assert (1 + w) * (-w) == 1

    def test_generator_satisfies_modulus(self, omega) -> None:
        w = omega.gen
        assert w * w + w + 1 == 0
        assert w**3 == 1

    def test_reducible_modulus_surfaces_on_inversion(self) -> None:
        K = NumberField(QQ, [-1, 0, 1], "r")
        with pytest.raises(NonInvertible):
            _ = 1 / (K.gen - 1)

    def test_non_squarefree_modulus_rejected(self) -> None:
        with pytest.raises(InvalidModulus):
            NumberField(QQ, [1, 2, 1], "r")

    def test_tower_embeds_lower_layers(self, omega_cbrt2) -> None:
        s = parse_constant("s", omega_cbrt2)
        w = parse_constant("w", omega_cbrt2)
        assert s**3 == 2
        assert (s * w) ** 3 == 2
        assert w + s - w == s

    @pytest.mark.parametrize("d", range(1, 13))
    def test_cyclotomic_matches_sympy(self, d: int) -> None:
        x = sympy.Symbol("x")
        want = [Fraction(int(c)) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(d, x), x).all_coeffs())]
        assert list(cyclotomic(d).coeffs) == want

    @pytest.mark.parametrize("d", [3, 4, 5, 6])
    def test_roots_of_unity(self, d: int) -> None:
        K = cyclotomic_field(d)
        for k in range(1, d):
            zeta = root_of_unity(K, k)
            assert zeta**d == 1
        assert root_of_unity(K, 1) != 1


class TestCoercion:
    def test_function_field_meets_number_field(self, omega) -> None:
        qz = FunctionField(QQ, "z")
        K = common_field(qz, omega)
        assert K == FunctionField(omega, "z")

    def test_unrelated_fields_do_not_mix(self) -> None:
        Ki = NumberField(QQ, [1, 0, 1], "i")
        Kw = cyclotomic_field(3, "w")
        with pytest.raises(FieldMismatch):
            _ = Ki.gen + Kw.gen

    def test_descend_strips_embeddings(self, omega_cbrt2) -> None:
        field, values = descend([omega_cbrt2(Fraction(1, 2)), omega_cbrt2(3)])
        assert field == QQ
        assert values == [Fraction(1, 2), Fraction(3)]


class TestSquareRoots:
    def test_rational(self) -> None:
        assert field_sqrt(Fraction(9, 4)) == Fraction(3, 2)
        assert field_sqrt(Fraction(2)) is None

    def test_number_field(self, omega) -> None:
        w = omega.gen
        r = field_sqrt(w)
        assert r is not None and r * r == w
        # -3 = (1 + 2w)^2 in Q(w)
        r = field_sqrt(omega(-3))
        assert r is not None and r * r == -3

    def test_adjoin_when_missing(self) -> None:
        K, r = adjoin_sqrt(Fraction(2))
        assert r * r == 2
        assert K.degree == 2

    def test_adjoin_returns_existing_root(self) -> None:
        K, r = adjoin_sqrt(Fraction(4))
        assert K == QQ
        assert r in (2, -2)


class TestRationalFunctions:
    def test_reduction_to_lowest_terms(self) -> None:
        assert parse_ratfunc("(z^2-1)/(z-1)") == parse_ratfunc("z+1")

    @pytest.mark.parametrize(
        "text, printed",
        [
            ("1/(2*z^2-2)", "1/(2*z^2 - 2)"),
            ("(z+1)/(2*z)", "(z + 1)/(2*z)"),
            ("-z/(3*z^2+1)", "-z/(3*z^2 + 1)"),
            ("(z/2+1/3)/(z-1/4)", "(6*z + 4)/(12*z - 3)"),
        ],
    )
    def test_prints_a_single_fraction(self, text: str, printed: str) -> None:
        f = parse_ratfunc(text)
        assert str(f) == printed
        assert parse_ratfunc(str(f)) == f

    def test_single_fraction_over_a_number_field(self, omega) -> None:
        f = parse_ratfunc("(w*z+1)/(2*z-1)", omega)
        assert str(f) == "(w*z + 1)/(2*z - 1)"
        assert str(QuadraticDifferential(parse_ratfunc("1/(2*z^3-2*z)"))) == "1/(2*z^3 - 2*z) dz^2"

    def test_composition(self) -> None:
        f = parse_ratfunc("z^2")
        g = parse_ratfunc("(z+1)/(z-1)")
        assert f.compose(g) == parse_ratfunc("(z+1)^2/(z-1)^2")
        assert g.compose(f) == parse_ratfunc("(z^2+1)/(z^2-1)")

    def test_derivative(self) -> None:
        g = parse_ratfunc("-z*(z^3+2)/(2*z^3+1)")
        assert g.derivative() == parse_ratfunc("-2*(z^3-1)^2/(2*z^3+1)^2")

    def test_evaluation(self, omega) -> None:
        g = parse_ratfunc("-z*(z^3+2)/(2*z^3+1)")
        w = omega.gen
        assert g(Fraction(1)) == -1
        assert g(w) == -w

    def test_resultant_of_coprime_polys(self) -> None:
        p = Poly(QQ, [-1, 0, 1])   # z^2 - 1
        q = Poly(QQ, [-2, 1])      # z - 2
        assert p.resultant(q) == 3
        assert p.resultant(Poly(QQ, [-1, 1])) == 0
