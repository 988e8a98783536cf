"""Exact arithmetic tower: Q, number fields, polynomials, rational functions."""

from pullback.algebra.base import (
    QQ,
    DivisionByZero,
    Field,
    FieldElement,
    FieldMismatch,
    NonInvertible,
    common_field,
    descend,
    lowest,
    parent_of,
)
from pullback.algebra.fields import (
    InvalidModulus,
    NFElement,
    NumberField,
    cyclotomic,
    cyclotomic_field,
    root_of_unity,
)
from pullback.algebra.linalg import determinant, rank, solve
from pullback.algebra.parser import (
    ParseError,
    UnknownSymbol,
    parse_constant,
    parse_field_tower,
    parse_point,
    parse_points,
    parse_poly,
    parse_qd,
    parse_ratfunc,
)
from pullback.algebra.poly import Poly
from pullback.algebra.projective import (
    INF,
    DegenerateTuple,
    Mobius,
    ProjPoint,
    cross_ratio,
    image,
)
from pullback.algebra.ratfunc import FunctionField, RationalFunction
from pullback.algebra.roots import UnsupportedField, adjoin_sqrt, field_sqrt

__all__ = [
    "QQ",
    "INF",
    "DegenerateTuple",
    "DivisionByZero",
    "Field",
    "FieldElement",
    "FieldMismatch",
    "FunctionField",
    "InvalidModulus",
    "Mobius",
    "NFElement",
    "NonInvertible",
    "NumberField",
    "ParseError",
    "Poly",
    "ProjPoint",
    "RationalFunction",
    "UnknownSymbol",
    "UnsupportedField",
    "adjoin_sqrt",
    "common_field",
    "cross_ratio",
    "cyclotomic",
    "cyclotomic_field",
    "descend",
    "determinant",
    "field_sqrt",
    "image",
    "lowest",
    "parent_of",
    "parse_constant",
    "parse_field_tower",
    "parse_point",
    "parse_points",
    "parse_poly",
    "parse_qd",
    "parse_ratfunc",
    "rank",
    "root_of_unity",
    "solve",
]
