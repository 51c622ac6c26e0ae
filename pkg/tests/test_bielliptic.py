from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import small_fractions
from ellsurf._symbolic import MPoly, reduce_hyperelliptic
from ellsurf.algebra import Polynomial
from ellsurf.bielliptic import (
    CoverMap,
    JacobiSextic,
    LegendrePair,
    cubic_to_weierstrass,
    curve_from_legendre_pair,
    fibered_product,
    jacobi_from_cubic,
    newsetting_cover,
    split_jacobi,
    subcover_equations,
    verify_cover,
    weierstrass_counts,
    weierstrass_parity,
)
from ellsurf.weierstrass import compute_invariants

H = Fraction(1, 2)


def valid_params():
    return small_fractions.filter(lambda x: x not in (0, 1))


legendre_pairs = st.tuples(valid_params(), valid_params()).filter(lambda p: p[0] != p[1])


def xi_poly(*roots):
    # prod (xi^2 - r)
    p = Polynomial([1])
    for r in roots:
        p = p * Polynomial([-r, 0, 1])
    return p


# --- Jacobi splitting ------------------------------------------------------------


def test_split_example():
    sp = split_jacobi(JacobiSextic(1, 0, 0, -1))
    assert sp.E1.numeric_rhs() == Polynomial([-1, 0, 0, 1])
    assert sp.E2.numeric_rhs() == Polynomial([1, 0, 0, -1])
    assert verify_cover(sp.pi1) and verify_cover(sp.pi2)


def test_split_symbolic():
    c = [MPoly.var(f"c{k}") for k in range(4)]
    sp = split_jacobi(JacobiSextic(*c))
    assert verify_cover(sp.pi1)
    assert verify_cover(sp.pi2)


def test_split_rejects_c3_zero():
    with pytest.raises(ValueError):
        split_jacobi(JacobiSextic(1, 0, -1, 0))


def test_c0_must_be_nonzero():
    with pytest.raises(ValueError):
        JacobiSextic(0, 1, 1, 1)


@given(st.tuples(small_fractions, small_fractions, small_fractions, small_fractions))
def test_resplit_round_trip(c):
    assume(c[0] != 0 and c[3] != 0)
    s = JacobiSextic(*c)
    assert jacobi_from_cubic(split_jacobi(s).E1) == s


def test_genus_two_discriminant_against_sympy():
    s = curve_from_legendre_pair(LegendrePair(2, 3))
    x = sympy.Symbol("x")
    poly = sum(sympy.Rational(c.numerator, c.denominator) * x ** k for k, c in enumerate(s.polynomial().coeffs))
    assert s.discriminant() == sympy.discriminant(poly, x)
    assert s.is_genus_two()
    assert not JacobiSextic(1, -2, 1, 0).is_genus_two()


def test_cubic_to_weierstrass_keeps_j():
    sp = split_jacobi(JacobiSextic(1, 0, 0, -1))
    assert compute_invariants(cubic_to_weierstrass(sp.E1)).j == 0


# --- Legendre pairs ------------------------------------------------------------------


def test_curve_from_pair_examples():
    assert curve_from_legendre_pair(LegendrePair(2, 3)).polynomial() == xi_poly(Fraction(3, 2), 2, 1)
    assert curve_from_legendre_pair(LegendrePair(2, -1)).polynomial() == xi_poly(-H, -2, 1)
    assert curve_from_legendre_pair(LegendrePair(2, 3)).coeffs == (1, Fraction(-9, 2), Fraction(13, 2), -3)


def test_pair_validation():
    with pytest.raises(ValueError):
        LegendrePair(2, 2)
    with pytest.raises(ValueError):
        LegendrePair(1, 3)
    with pytest.raises(ValueError):
        LegendrePair(2, 0)


def test_subcover_identity_symbolic():
    sd = subcover_equations(LegendrePair.symbolic())
    assert sd.all_verified()
    assert verify_cover(sd.changes[0]) and verify_cover(sd.changes[1])
    assert verify_cover(sd.pi1) and verify_cover(sd.pi2)


def test_printed_scale_variants():
    # the i = 1 scale works as printed; the index-swapped i = 2 scale does not
    assert subcover_equations(LegendrePair.symbolic()).printed_scale_checks == (True, False)


def test_subcover_example():
    sd = subcover_equations(LegendrePair(2, 3))
    roots = (Fraction(3, 2), 2, 1)
    expected = Polynomial([1])
    for r in roots:
        expected = expected * Polynomial([-r, 1])
    assert sd.E1_tilde.numeric_rhs() == expected
    # pi1 is (xi^2, eta)
    assert sd.pi1.x_num == MPoly.var("xi") ** 2 and sd.pi1.y_num == MPoly.var("eta")


@given(legendre_pairs)
def test_random_pairs(p):
    pair = LegendrePair(*p)
    # the roots t2/t1, (1-t2)/(1-t1), 1 are distinct and nonzero whenever the pair is valid
    s = curve_from_legendre_pair(pair)
    assert s.discriminant() != 0
    sd = subcover_equations(pair)
    assert sd.all_verified()
    sp = split_jacobi(s)
    assert verify_cover(sp.pi1) and verify_cover(sp.pi2)


# --- fibered product -------------------------------------------------------------


def test_fibered_product_example():
    fp = fibered_product(LegendrePair(2, 3))
    d = fp.to_json()
    assert d["nodes"] == ["0", "1", "inf"]
    assert d["branch_loci"] == [["0", "1", "2", "inf"], ["0", "1", "3", "inf"]]
    assert all(b.transversal for b in fp.local)
    assert fp.local[0].leading == (H, Fraction(1, 3))
    # nodes live on the fibered product, the point pairs on its normalization
    assert d["normalization_points"] == ["0+", "0-", "1+", "1-", "inf+", "inf-"]


# --- newsetting cover -------------------------------------------------------------


def test_newsetting_example():
    c = newsetting_cover(2, 3)
    assert c.y0_squared == 6
    assert verify_cover(c.f)
    assert c.verify()
    assert c.E_prime_quartic.numeric_rhs() == Polynomial.from_roots([0, 1, 2, 3])
    assert c.E_prime_branch[:3] == (Fraction(1, 3), H, Fraction(1))
    assert not c.ramified_at_infinity


def test_newsetting_validation():
    with pytest.raises(ValueError):
        newsetting_cover(2, 2)
    with pytest.raises(ValueError):
        newsetting_cover(0, 3)


@given(legendre_pairs)
def test_parity_on_random_newsetting_covers(p):
    t, tp = p
    c = newsetting_cover(t, tp)
    counts = weierstrass_counts(c)
    assert sum(counts.values()) == 6
    assert all(v % 2 == 0 for v in counts.values())
    assert weierstrass_parity(2).holds(counts.values())
    assert c.verify()


def test_parity_rules():
    assert weierstrass_parity(3).admissible == ((1, 1, 1, 3),)
    assert weierstrass_parity(2).residue == 0
    assert weierstrass_parity(5).holds([1, 1, 1, 3])
    assert not weierstrass_parity(4).holds([1, 1, 1, 3])
    with pytest.raises(ValueError):
        weierstrass_parity(1)


# --- verify_cover negative control ------------------------------------------------


def test_corrupted_map_fails():
    c = newsetting_cover(2, 3)
    f = c.f
    bad = CoverMap("bad", f.source, f.target, f.x_num + 1, f.x_den, f.y_num, f.y_den)
    assert not verify_cover(bad)


def test_reduce_hyperelliptic():
    x, y = MPoly.var("x"), MPoly.var("y")
    rhs = x ** 3 + 1
    r0, r1 = reduce_hyperelliptic(y ** 3 + x * y ** 2 - y, "y", MPoly.const(1), rhs)
    assert r0 == x * rhs
    assert r1 == rhs - 1
