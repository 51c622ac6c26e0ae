from itertools import product

import pytest
import sympy
from sympy.functions.combinatorial.numbers import partition
from hypothesis import given
from hypothesis import strategies as st

from ellsurf.groups import ComponentGroup, abelian_groups, factorize, invariant_factors, subgroup_invariants


@given(st.integers(1, 10 ** 6))
def test_factorize_matches_sympy(n):
    assert factorize(n) == sympy.factorint(n)


def test_factorize_rejects_zero():
    with pytest.raises(ValueError):
        factorize(0)


def test_invariant_factors():
    assert invariant_factors([4, 2]) == (2, 4)
    assert invariant_factors([2, 3]) == (6,)
    assert invariant_factors([3, 3]) == (3, 3)
    assert invariant_factors([1, 1]) == ()
    assert invariant_factors([6, 4]) == (2, 12)


@given(st.integers(1, 300))
def test_abelian_group_count(n):
    expected = 1
    for e in sympy.factorint(n).values():
        expected *= partition(e)
    groups = abelian_groups(n)
    assert len(groups) == expected
    for g in groups:
        assert ComponentGroup(g).order == n
        assert all(b % a == 0 for a, b in zip(g, g[1:]))


def test_abelian_groups_of_order_nine_and_eight():
    assert abelian_groups(9) == [(9,), (3, 3)]
    assert abelian_groups(8) == [(8,), (2, 4), (2, 2, 2)]


def test_format_and_json():
    assert ComponentGroup((3, 3)).format() == "(Z/3)^2"
    assert ComponentGroup((2, 4)).format() == "Z/4 x Z/2"
    assert ComponentGroup((2, 3)).format() == "Z/6"
    assert ComponentGroup(()).format() == "{0}"
    assert ComponentGroup((2, 4)).to_json() == [4, 2]


def test_isomorphism_and_two_torsion():
    assert ComponentGroup((2, 3)).isomorphic(ComponentGroup((6,)))
    assert not ComponentGroup((2, 2)).isomorphic(ComponentGroup((4,)))
    assert ComponentGroup((4,)).has_two_torsion()
    assert not ComponentGroup((3, 3)).has_two_torsion()
    assert ComponentGroup((4, 6)).exponent == 12


@given(st.lists(st.integers(2, 6), min_size=1, max_size=3))
def test_subgroup_invariants_of_whole_group(moduli):
    elems = list(product(*(range(d) for d in moduli)))
    assert subgroup_invariants(elems, moduli) == invariant_factors(moduli)


def test_subgroup_invariants_cyclic_subgroup():
    # <(1, 2)> in Z/4 x Z/4 has order 4
    moduli = (4, 4)
    gen = (1, 2)
    elems = {tuple((k * g) % d for g, d in zip(gen, moduli)) for k in range(4)}
    assert subgroup_invariants(sorted(elems), moduli) == (4,)
