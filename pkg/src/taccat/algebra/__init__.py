"""Exact fields, polynomials, Gröbner bases and dense linear algebra."""

from .fields import GF, QQ, Field, PrimeField, Rationals, field_from_spec
from .groebner import (
    GroebnerBasis,
    buchberger,
    buchberger_with_cofactors,
    divide_with_cofactors,
    ideal_cofactors,
    ideal_equal,
    ideal_from,
    ideal_quotient,
    intersect,
    normal_form,
    radical_membership,
)
from .matrix import PolyMatrix
from .polynomial import ZERO_DEGREE, PolyRing, Polynomial, TermOrder

__all__ = [
    "GF",
    "QQ",
    "Field",
    "GroebnerBasis",
    "PolyMatrix",
    "PolyRing",
    "Polynomial",
    "PrimeField",
    "Rationals",
    "TermOrder",
    "ZERO_DEGREE",
    "buchberger",
    "buchberger_with_cofactors",
    "divide_with_cofactors",
    "field_from_spec",
    "ideal_cofactors",
    "ideal_equal",
    "ideal_from",
    "ideal_quotient",
    "intersect",
    "normal_form",
    "radical_membership",
]
