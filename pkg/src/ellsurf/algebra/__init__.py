"""Exact rationals, polynomials, rational functions and places over Q(t)."""
from fractions import Fraction as Rational

from .places import (
    Place,
    coprime_base,
    expand_places,
    place_decompose,
    split_places,
    valuation,
    valuation_or_none,
)
from .polynomial import (
    ONE,
    T,
    ZERO,
    Polynomial,
    as_fraction,
    discriminant,
    poly_gcd,
    resultant,
    squarefree_decomposition,
)
from .rational_function import RationalFunction, normalize_rf

__all__ = [
    "ONE",
    "Place",
    "Polynomial",
    "Rational",
    "RationalFunction",
    "T",
    "ZERO",
    "as_fraction",
    "coprime_base",
    "discriminant",
    "expand_places",
    "normalize_rf",
    "place_decompose",
    "poly_gcd",
    "resultant",
    "split_places",
    "squarefree_decomposition",
    "valuation",
    "valuation_or_none",
]
