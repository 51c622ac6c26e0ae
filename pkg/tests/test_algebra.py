from fractions import Fraction

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given
from hypothesis import strategies as st

from conftest import nonzero_rationals, polynomials
from ellsurf.algebra import (
    Place,
    Polynomial,
    RationalFunction,
    T,
    discriminant,
    expand_places,
    normalize_rf,
    place_decompose,
    poly_gcd,
    resultant,
    valuation,
)

t = sympy.Symbol("t")


def to_sympy(p: Polynomial):
    coeffs = [sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)]
    return sympy.Poly(coeffs or [0], t, domain="QQ")


# --- normalize_rf -----------------------------------------------------------


def test_normalize_common_factor():
    f = normalize_rf(T ** 2 - 1, T - 1)
    assert f.num == T + 1
    assert f.den == Polynomial([1])


def test_normalize_monic_denominator():
    f = normalize_rf(2 * T, Polynomial([4]))
    assert f.num == Polynomial([0, Fraction(1, 2)])
    assert f.den == Polynomial([1])


def test_normalize_cancels_power_of_t():
    f = normalize_rf(T ** 3 * (1 - 27 * T), T ** 3)
    assert f.num == 1 - 27 * T
    assert f.den == Polynomial([1])


def test_normalize_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        normalize_rf(T, Polynomial([]))


@given(polynomials(), polynomials(nonzero=True))
def test_normalize_is_idempotent_and_reduced(a, b):
    f = normalize_rf(a, b)
    g = normalize_rf(f.num, f.den)
    assert (f.num, f.den) == (g.num, g.den)
    assert f.den.lc == 1
    assert poly_gcd(f.num, f.den).degree <= 0 or f.num.is_zero()
    # algebraically equal: a * den == num * b
    assert a * f.den == f.num * b


# --- polynomial arithmetic against sympy --------------------------------------


@given(polynomials(), polynomials())
def test_ring_operations_match_sympy(a, b):
    assert to_sympy(a + b) == to_sympy(a) + to_sympy(b)
    assert to_sympy(a * b) == to_sympy(a) * to_sympy(b)


@given(polynomials(), polynomials(nonzero=True))
def test_divmod_matches_sympy(a, b):
    q, r = divmod(a, b)
    sq, sr = sympy.div(to_sympy(a), to_sympy(b))
    assert to_sympy(q) == sq.set_domain("QQ")
    assert to_sympy(r) == sr.set_domain("QQ")


@given(polynomials(max_degree=4), polynomials(max_degree=4))
def test_gcd_matches_sympy(a, b):
    g = poly_gcd(a, b)
    expected = sympy.gcd(to_sympy(a), to_sympy(b))
    if expected.is_zero:
        assert g.is_zero()
    else:
        assert to_sympy(g) == expected.monic()


@given(polynomials(max_degree=4, nonzero=True), polynomials(max_degree=4, nonzero=True))
def test_resultant_matches_sympy(a, b):
    if a.degree < 1 or b.degree < 1:
        return
    # Sylvester determinant: sympy.resultant itself returns +1 for (t+1, t^3)
    oracle = sylvester(to_sympy(a).as_expr(), to_sympy(b).as_expr(), t).det()
    assert resultant(a, b) == oracle


def test_discriminant_of_cubic():
    # x^3 - 1: disc = -27
    assert discriminant(T ** 3 - 1) == sympy.discriminant(t ** 3 - 1, t) == -27


def test_json_round_trip():
    p = Polynomial([Fraction(-3, 7), 0, 10 ** 30])
    assert p.to_json() == [["-3", "7"], ["0", "1"], [str(10 ** 30), "1"]]
    assert Polynomial.from_json(p.to_json()) == p
    f = RationalFunction(T + 2, T ** 2 + 1)
    assert RationalFunction.from_json(f.to_json()) == f


# --- places -------------------------------------------------------------------


def _labels(decomp):
    return [(p.label(), m) for p, m in decomp]


def test_place_decompose_discriminant_of_j_line():
    assert _labels(place_decompose(T ** 2 * (T - 1728) ** 9)) == [("t=0", 2), ("t=1728", 9)]


def test_place_decompose_constant():
    assert place_decompose(Polynomial([5])) == []


def test_place_decompose_keeps_quadratic_whole():
    assert _labels(place_decompose(T ** 3 + T)) == [("t=0", 1), ("t^2 + 1", 1)]


def test_place_decompose_negative_roots():
    # t^3 + 27 = (t + 3)(t^2 - 3t + 9)
    assert _labels(place_decompose(T ** 3 + 27)) == [("t=-3", 1), ("t^2 - 3*t + 9", 1)]


def test_place_decompose_zero():
    with pytest.raises(ValueError):
        place_decompose(Polynomial([]))


@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(1, 3)), max_size=4), nonzero_rationals())
def test_decompose_reexpands(roots, c):
    p = Polynomial([c])
    for r, e in roots:
        p = p * (T - r) ** e
    decomp = place_decompose(p)
    back = expand_places(decomp)
    assert back * Polynomial([p.lc]) == p
    # places are pairwise coprime
    polys = [pl.poly for pl, _ in decomp]
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            assert poly_gcd(polys[i], polys[j]).degree == 0


@given(polynomials(max_degree=8, nonzero=True))
def test_decompose_reexpands_random(p):
    back = expand_places(place_decompose(p))
    assert back * Polynomial([p.lc]) == p


def test_valuation_examples():
    d = RationalFunction(T ** 2 * (T - 1728) ** 9)
    assert valuation(d, Place.at(0)) == 2
    assert valuation(RationalFunction(T), Place.infinity()) == -1
    quad = Place(T ** 2 + 1)
    assert valuation(RationalFunction(T ** 4 - 1), quad) == 1


def test_valuation_of_zero_rejected():
    with pytest.raises(ValueError):
        valuation(RationalFunction(Polynomial([])), Place.at(0))


@given(polynomials(max_degree=5, nonzero=True), polynomials(max_degree=5, nonzero=True), st.integers(-4, 4))
def test_valuation_is_additive(f, g, r):
    v = Place.at(r)
    F, G = RationalFunction(f), RationalFunction(g)
    assert valuation(F * G, v) == valuation(F, v) + valuation(G, v)
    inf = Place.infinity()
    assert valuation(F / G, inf) == valuation(F, inf) - valuation(G, inf)
