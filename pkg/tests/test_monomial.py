import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from filtmult.errors import CapReached, DimensionMismatch, NonPositiveInput, NotPrimary
from filtmult.monomial import (
    Adic,
    Closure,
    DivisorialToric,
    MonomialIdeal,
    Product,
    Rescale,
    Table,
    Trivial,
    Truncate,
    asymptotic_w,
    check_filtration,
    gamma,
    integral_closure_ideal,
    intersect,
    newton_polyhedron,
    tau,
    w_invariant,
)
from filtmult.numeric import QuadExt

import oracles

S2 = QuadExt.sqrt(2)


def ideal(*gens):
    return MonomialIdeal(len(gens[0]), gens)


M = ideal((1, 0), (0, 1))
X2Y3 = ideal((2, 0), (0, 3))


def test_generators_are_minimal_and_sorted():
    i = ideal((2, 1), (0, 3), (3, 0), (2, 2), (3, 1))
    assert i.gens == ((0, 3), (2, 1), (3, 0))


@pytest.mark.parametrize("gens,expected", [
    ([(2, 0), (1, 1), (0, 2)], 3),
    ([(2, 0), (0, 3)], 6),
    ([(3, 0), (2, 1), (1, 3), (0, 4)], 8),
    ([(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 1)], 7),
])
def test_colength_matches_box_count(gens, expected):
    assert oracles.colength(gens) == expected
    assert ideal(*gens).colength() == expected


def test_not_primary():
    i = ideal((1, 1), (2, 0))
    assert not i.is_primary()
    with pytest.raises(NotPrimary):
        i.colength()


def test_unit_ideal():
    u = MonomialIdeal.unit(2)
    assert u.is_unit and u.colength() == 0
    assert u.max_standard_degree() == -1


def test_products_and_powers():
    assert M * M == MonomialIdeal.maximal(2, 2)
    p = M * X2Y3
    assert p.gens == tuple(oracles.product(M.gens, X2Y3.gens))
    assert p.gens == ((0, 4), (1, 3), (2, 1), (3, 0))
    assert X2Y3**3 == ideal(*oracles.power(X2Y3.gens, 3))
    assert intersect(ideal((2, 0)), ideal((0, 3))) == ideal((2, 3))


def test_dimension_checks():
    with pytest.raises(DimensionMismatch):
        M * MonomialIdeal.maximal(3)


def test_containment_order():
    assert M**2 <= M and not M <= M**2
    assert (2, 3) in X2Y3 and (1, 2) not in X2Y3
    pts = np.array(list(itertools.product(range(4), repeat=2)))
    mask = X2Y3.contains_many(pts)
    assert list(mask) == [oracles.member(X2Y3.gens, tuple(p)) for p in pts]


def test_newton_polyhedron_vertices():
    assert sorted(newton_polyhedron(ideal((2, 0), (0, 2))).vertices()) == [(0, 2), (2, 0)]
    np_ = newton_polyhedron(ideal((3, 0), (2, 1), (1, 3), (0, 4)))
    assert sorted(np_.vertices()) == [(0, 4), (2, 1), (3, 0)]
    assert sorted(newton_polyhedron(MonomialIdeal.maximal(3)).vertices()) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


@pytest.mark.parametrize("gens", [
    [(2, 0), (0, 2)],
    [(1, 0), (0, 1)],
    [(4, 0), (0, 2)],
    [(5, 0), (0, 3)],
    [(7, 0), (3, 2), (0, 5)],
])
def test_integral_closure_matches_hull_oracle(gens):
    got = integral_closure_ideal(ideal(*gens))
    assert list(got.gens) == oracles.closure_gens_2d(gens)
    assert integral_closure_ideal(got) == got
    assert ideal(*gens) <= got


def test_integral_closure_examples():
    assert integral_closure_ideal(ideal((2, 0), (0, 2))).gens == ((0, 2), (1, 1), (2, 0))
    assert integral_closure_ideal(ideal((4, 0), (0, 2))).gens == ((0, 2), (2, 1), (4, 0))


def test_levels():
    assert Adic(M**2).level(3) == M**6
    assert DivisorialToric([((1, 2), 1)]).level(3) == ideal((3, 0), (1, 1), (0, 2))
    assert DivisorialToric([((1, 1), S2)]).level(2) == M**3
    assert Trivial(2).level(5).is_unit


def test_divisorial_levels_match_oracle():
    f = DivisorialToric([((1, 2), 1), ((2, 1), S2)])
    terms = [((1, 2), 1.0), ((2, 1), math.sqrt(2))]
    for n in range(1, 9):
        lv = f.level(n)
        for v in itertools.product(range(3 * n + 2), repeat=2):
            assert (v in lv) == oracles.divisorial_member(terms, v, n)


def test_divisorial_rejects_zero_weight():
    with pytest.raises(NonPositiveInput):
        DivisorialToric([((1, 0), 1)])


def test_product_and_rescale():
    f = Product(Adic(M), Adic(X2Y3))
    assert f.level(2) == M**2 * X2Y3**2
    assert Rescale(Adic(M), 3).level(2) == M**6
    assert Rescale(Adic(M), 0).level(4).is_unit


def test_truncate():
    f = Truncate(Adic(M), 2)
    assert f.level(1) == M and f.level(2) == M**2
    assert f.level(3) == M**3


def test_table():
    f = Table([M**2, M**3], M)
    assert f.level(1) == M**2 and f.level(2) == M**3
    assert f.level(5) == M**5
    assert not check_filtration(f, 6)


def test_closure_of_adic_is_closure_of_powers():
    base = Adic(ideal((3, 0), (0, 2)))
    f = Closure(base, 2)
    for m in range(1, 5):
        assert f.level(m) == integral_closure_ideal(base.ideal**m)


def test_check_filtration_detects_violations():
    bad = Table([M**2, M], M)
    assert any("not contained" in s for s in check_filtration(bad, 3))
    assert not check_filtration(Adic(X2Y3), 6)


def test_tau():
    assert tau(Adic(M**2), (1, 1), 5) == 10
    assert tau(Adic(M), (2, 3), 4) == 8
    assert tau(DivisorialToric([((1, 2), 1)]), (1, 2), 7) == 7


def test_gamma():
    g = gamma(Adic(M**2), (1, 1))
    assert g.exact and g.value == 2 and g.upper == 2
    assert gamma(DivisorialToric([((1, 2), 1)]), (1, 2)).value == 1
    g = gamma(DivisorialToric([((1, 1), S2)]), (1, 1), m_max=12)
    assert g.value == S2
    assert g.upper == min(Fraction(math.ceil(m * math.sqrt(2)), m) for m in range(1, 13))


def test_w_invariant():
    assert w_invariant(Adic(M), (2, 1)) == 3
    assert w_invariant(DivisorialToric([((1, 2), 1)]), (1, 3)) == 7
    assert w_invariant(Adic(X2Y3), (3, 3)) == 2
    assert w_invariant(Adic(M), (0, 0)) == 0
    assert w_invariant(Adic(M), None) == math.inf
    with pytest.raises(CapReached):
        w_invariant(Adic(M), (50, 50), n_cap=20)


def test_asymptotic_w():
    assert asymptotic_w(Adic(M), (1, 0)).value == 1
    r = asymptotic_w(DivisorialToric([((1, 2), 1), ((2, 1), 2)]), (1, 1))
    assert r.value == Fraction(3, 2) and r.exact and r.linear_verified
    assert asymptotic_w(DivisorialToric([((1, 1), S2)]), (1, 1)).value == S2
    with pytest.raises(NonPositiveInput):
        asymptotic_w(Adic(M), (0, 0))
