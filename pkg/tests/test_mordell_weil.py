from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ellsurf import _kernels_py, kernels
from ellsurf.groups import ComponentGroup, abelian_groups
from ellsurf.kodaira import FiberConfiguration, InconsistencyError, KodairaType, euler_number
from ellsurf.lattices import extremality_check, named_lattice, trivial_lattice
from ellsurf.mordell_weil import (
    SectionData,
    _tables,
    contribution,
    height_pairing,
    mwl_invariants,
    narrow_and_quotient,
    quotient_configuration,
    reducible_fibers,
    search_group,
    self_height,
    solve_torsion,
    torsion_injection_target,
)

I = KodairaType.I
F = FiberConfiguration.from_components

EXPECTED = {
    (3, 3, 3, 3): (3, 3),
    (4, 4, 2, 2): (4, 2),
    (5, 5, 1, 1): (5,),
    (6, 3, 2, 1): (6,),
    (8, 2, 1, 1): (4,),
    (9, 1, 1, 1): (3,),
}

try:
    from ellsurf import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None


# --- contributions ------------------------------------------------------------


def test_contribution_examples():
    assert contribution(I(9), 3) == 2
    for n in range(1, 8):
        assert contribution(I(n), 0) == 0
    assert contribution(I(4), 1, 2) == Fraction(1, 2)


def test_contribution_additive_table():
    assert contribution(KodairaType("III"), 1) == Fraction(1, 2)
    assert contribution(KodairaType("III*"), 1) == Fraction(3, 2)
    assert contribution(KodairaType("IV"), 1) == Fraction(2, 3)
    assert contribution(KodairaType("IV"), 1, 2) == Fraction(1, 3)
    assert contribution(KodairaType("IV*"), 2) == Fraction(4, 3)
    assert contribution(KodairaType("IV*"), 1, 2) == Fraction(2, 3)
    # I*_m: near component 1, far 1 + m/4
    assert contribution(KodairaType.Istar(0), 1) == 1
    assert contribution(KodairaType.Istar(2), 2) == Fraction(3, 2)
    assert contribution(KodairaType.Istar(1), 2) == 1
    assert contribution(KodairaType.Istar(1), 1) == Fraction(5, 4)


def test_contribution_bad_index():
    with pytest.raises(ValueError):
        contribution(I(3), 3)
    with pytest.raises(ValueError):
        contribution(KodairaType("II"), 1)


@given(st.integers(1, 12), st.data())
def test_contribution_symmetric_and_matches_formula(n, data):
    i = data.draw(st.integers(0, n - 1))
    j = data.draw(st.integers(0, n - 1))
    assert contribution(I(n), i, j) == contribution(I(n), j, i)
    a, b = sorted((i, j))
    assert contribution(I(n), i, j) == Fraction(a * (n - b), n)
    assert contribution(I(n), i) == Fraction(i * (n - i), n)


# --- heights ------------------------------------------------------------------


def test_height_examples():
    c = F([9, 1, 1, 1])
    assert self_height(SectionData((0,)), c) == 2
    assert self_height(SectionData((3,)), c) == 0
    O = SectionData.zero(1)
    assert O.po == -1
    assert self_height(O, c) == 0


@given(st.integers(0, 5), st.lists(st.integers(1, 6), min_size=1, max_size=4))
def test_narrow_heights_even(po, comps):
    c = F(comps)
    k = len(reducible_fibers(c))
    h = self_height(SectionData((0,) * k, po), c)
    assert h.denominator == 1 and h % 2 == 0 and h == 2 + 2 * po


def test_pairing_formula():
    c = F([9, 1, 1, 1])
    P, Q = SectionData((3,)), SectionData((6,))
    # chi + PO + QO - PQ - contr = 1 - 1
    assert height_pairing(P, Q, c) == 0
    assert height_pairing(P, Q, c, pq=1) == -1


# --- target and solver ---------------------------------------------------------


def test_injection_target():
    assert torsion_injection_target(F([4, 4, 2, 2])).cyclic_orders == (4, 4, 2, 2)
    assert torsion_injection_target(FiberConfiguration(())).is_trivial()
    assert torsion_injection_target(F([9, 1, 1, 1])).cyclic_orders == (9,)


@pytest.mark.parametrize("comps", list(EXPECTED))
def test_solve_torsion(comps):
    t = solve_torsion(F(comps))
    assert t.group.isomorphic(ComponentGroup(EXPECTED[comps]))
    assert t.is_injective()
    assert t.heights_vanish()
    assert extremality_check(F(comps), t.group.order)
    assert -trivial_lattice(F(comps)).disc == t.group.order ** 2


@pytest.mark.parametrize("comps", list(EXPECTED))
def test_all_heights_exactly_zero(comps):
    t = solve_torsion(F(comps))
    c = t.config
    secs = [s for s in t.sections() if any(s.components)]
    for P in secs:
        assert self_height(P, c) == Fraction(0)
    for i, P in enumerate(secs):
        for Q in secs[i + 1:]:
            assert height_pairing(P, Q, c) == Fraction(0)


def test_eight_two_eliminates_klein_group():
    assert search_group(F([8, 2, 1, 1]), (2, 2)) is None
    assert search_group(F([8, 2, 1, 1]), (4,)) is not None


def test_five_five_generator_image():
    t = solve_torsion(F([5, 5, 1, 1]))
    images = {tuple(img) for _, img in t.elements()}
    assert (1, 2) in images or (1, 3) in images


def test_nine_json():
    t = solve_torsion(F([9, 1, 1, 1]))
    assert t.to_json() == {
        "config": [9, 1, 1, 1],
        "group": [3],
        "assignment": {"I9@t=0": 3},
        "heights_verified": True,
    }


def test_solver_rejects_non_extremal():
    with pytest.raises(ValueError):
        solve_torsion(F([5, 4, 1, 1, 1]))  # rank 10 - 2 - 7 = 1
    with pytest.raises(ValueError):
        solve_torsion(F([7, 2, 1, 1, 1]), rho=9)  # 14 is not a square


def test_solver_no_solution_is_inconsistency():
    # product 36 is a square and rank is 0, but no group of order 6 fits
    with pytest.raises(InconsistencyError):
        solve_torsion(F([6, 6, 1, 1, 1, 1]), rho=12)


def test_additive_configurations():
    cases = {("I3", "I1", "IV*"): (3,), ("IV", "IV*"): (3,), ("I1*", "I4", "I1"): (4,)}
    for types, group in cases.items():
        t = solve_torsion(FiberConfiguration.from_types(types))
        assert t.group.isomorphic(ComponentGroup(group))
        assert t.heights_vanish()


# --- narrow / quotient / MWL ----------------------------------------------------


@pytest.mark.parametrize("comps", list(EXPECTED))
def test_narrow_trivial_quotient_full(comps):
    t = solve_torsion(F(comps))
    narrow, quotient = narrow_and_quotient(t)
    assert narrow.is_trivial()
    assert quotient.isomorphic(t.group)


def test_mwl_invariants():
    assert mwl_invariants(None) == (0, 1, None)
    assert mwl_invariants(named_lattice("<2>"), 1, 0) == (1, 2, 2)
    assert mwl_invariants(named_lattice("<4>"), 1, 1) == (1, 4, 4)
    with pytest.raises(ValueError):
        mwl_invariants(named_lattice("U"))


def test_quotient_configuration():
    t = solve_torsion(F([9, 1, 1, 1]))
    q = quotient_configuration(t, (1,))
    assert q.components() == [3, 3, 3, 3]
    assert euler_number(q) == 12
    # the quotient's torsion contains a Z/3
    tq = solve_torsion(q)
    assert tq.group.isomorphic(ComponentGroup((3, 3)))


# --- kernel backends --------------------------------------------------------------


def _all_tables():
    cases = [(F(c), 1) for c in EXPECTED] + [(F([6, 6, 6, 6]), 2), (F([4, 4, 4, 4, 2, 2]), 2)]
    for c, chi in cases:
        fibers = reducible_fibers(c)
        n = 1
        for f in torsion_injection_target(c).cyclic_orders:
            n *= f
        order = int(round(n ** 0.5))
        if order * order != n:
            continue
        yield _tables(fibers, chi), abelian_groups(order)


def test_backend_flag():
    assert kernels.BACKEND in ("cython", "python")
    if _compiled is not None:
        assert kernels.BACKEND == "cython"


@pytest.mark.skipif(_compiled is None, reason="compiled kernel not built")
def test_kernels_agree():
    for (sizes, add_t, con_t, ts, tp), groups in _all_tables():
        assert _compiled.valid_elements(sizes, con_t, ts) == _kernels_py.valid_elements(sizes, con_t, ts)
        assert list(_compiled.element_orders(sizes, add_t)) == list(_kernels_py.element_orders(sizes, add_t))
        for inv in groups:
            inv = sorted(inv, reverse=True)
            a = _compiled.find_embedding(sizes, add_t, con_t, ts, tp, inv)
            b = _kernels_py.find_embedding(sizes, add_t, con_t, ts, tp, inv)
            assert (a is None) == (b is None)
            if a is not None:
                assert list(a) == list(b)


def test_pure_python_backend_solves(monkeypatch):
    import ellsurf.mordell_weil as mw

    monkeypatch.setattr(mw.kernels, "find_embedding", _kernels_py.find_embedding)
    for comps, group in EXPECTED.items():
        assert solve_torsion(F(comps)).group.isomorphic(ComponentGroup(group))


def test_elements_are_a_group():
    t = solve_torsion(F([4, 4, 2, 2]))
    elems = t.elements()
    assert len(elems) == 8
    coords = {c for c, _ in elems}
    assert coords == set(product(range(4), range(2)))
