from fractions import Fraction

import pytest

from filtmult.convex import hull, scale
from filtmult.errors import NoStabilization, TruncationTooLow
from filtmult.monomial import Adic, Closure, DivisorialToric, MonomialIdeal, Rescale, Table, Trivial
from filtmult.numeric import QuadExt
from filtmult.okounkov import (
    default_cut,
    delta_body,
    multiplicity_via_volume,
    pair_body,
    pair_filtration,
    pair_homothety_check,
    pair_superadditivity_check,
    semigroup_level,
    truncation_lambda,
)

import oracles

S2 = QuadExt.sqrt(2)
M = MonomialIdeal.maximal(2)
X2Y3 = MonomialIdeal(2, [(2, 0), (0, 3)])


def test_semigroup_levels():
    got = set(semigroup_level(Adic(M), 2, 3).points)
    assert got == {v for v in oracles.simplex_lattice(2, 3) if sum(v) >= 2}
    got = set(semigroup_level(DivisorialToric([((1, 2), 1)]), 2, 4).points)
    assert got == {v for v in oracles.simplex_lattice(2, 4) if v[0] + 2 * v[1] >= 2}
    f = Closure(Adic(MonomialIdeal(2, [(2, 0), (0, 2)])), 2)
    got = set(semigroup_level(f, 1, 3).points)
    closed = oracles.closure_gens_2d([(2, 0), (0, 2)])
    assert got == {v for v in oracles.simplex_lattice(2, 3) if oracles.member(closed, v)}


def test_semigroup_points_are_sorted():
    pts = semigroup_level(Adic(M), 1, 2).points
    assert list(pts) == sorted(pts)


def test_delta_body_examples():
    tb = delta_body(Adic(M**2), 4)
    assert sorted(tb.body.vertices) == [(0, 2), (0, 4), (2, 0), (4, 0)]
    assert tb.body.volume() == 6 and tb.exact
    assert delta_body(Trivial(2), 4).body.volume() == 8
    tb = delta_body(DivisorialToric([((1, 1), S2)]), 4)
    assert tb.body.volume() == 7


def test_delta_body_cut_too_low():
    with pytest.raises(TruncationTooLow):
        delta_body(Adic(X2Y3), 2)


def test_level_hull_grows_towards_exact_body():
    f = DivisorialToric([((1, 2), 1), ((2, 1), S2)])
    exact = delta_body(f, 3).body.volume()
    vols = [delta_body(f, 3, m_max=m, method="levels").body.volume() for m in (2, 4, 8, 16)]
    assert all(a <= b for a, b in zip(vols, vols[1:]))
    assert all(v <= float(exact) + 1e-12 for v in map(float, vols))
    assert float(exact) - float(vols[-1]) < 0.1


def test_truncation_lambda():
    assert truncation_lambda(Adic(M**2)).value == 2
    assert truncation_lambda(Adic(X2Y3)).value == 4
    assert truncation_lambda(DivisorialToric([((1, 1), 1)])).value == 1
    lam = truncation_lambda(Adic(X2Y3))
    assert lam.certified and lam.proved == 4


def test_truncation_lambda_scan_matches_lattice():
    f = Adic(X2Y3)
    lam = truncation_lambda(f).value
    for m in range(1, 5):
        lv = f.level(m)
        for v in oracles.simplex_lattice(2, lam * m + 3):
            if sum(v) >= lam * m:
                assert v in lv


def test_truncation_lambda_not_primary():
    f = Table([MonomialIdeal(2, [(1, 1), (2, 0), (0, 5)]), MonomialIdeal(2, [(2, 2), (4, 0)])], M)
    with pytest.raises(NoStabilization):
        truncation_lambda(f, m_probe=3)


def test_volume_multiplicities():
    assert multiplicity_via_volume(Adic(M**2), 4) == 4
    assert multiplicity_via_volume(Adic(M), 2) == 1
    assert multiplicity_via_volume(DivisorialToric([((1, 1), S2)]), 4) == 2
    assert multiplicity_via_volume(Adic(X2Y3)) == 6
    assert multiplicity_via_volume(Trivial(2)) == 0


def test_two_weight_irrational_volume():
    # complement of the body is the polygon (0,0), (1,0), P, (0, sqrt2), P the corner
    f = DivisorialToric([((1, 2), 1), ((2, 1), S2)])
    p = ((2 * S2 - 1) / 3, (2 - S2) / 3)
    area = oracles.polygon_area([(0, 0), (1, 0), p, (0, S2)])
    assert area == 1 - S2 / 3
    assert multiplicity_via_volume(f) == 2 * area


def test_default_cut():
    assert default_cut(Adic(X2Y3)) == 3
    assert default_cut(DivisorialToric([((1, 1), S2)])) == 2


def test_pair_filtration_levels():
    g = pair_filtration(Adic(M), Adic(X2Y3), 1, 1)
    assert g.level(2) == M**2 * X2Y3**2
    assert pair_filtration(Adic(M), Adic(X2Y3), 1, 0).level(3) == M**3


def test_pair_bodies():
    tb = pair_body(Adic(M), Adic(M), 1, 1)
    assert tb.body == delta_body(Adic(M**2), tb.c).body
    tb = pair_body(Adic(M), Adic(X2Y3), 1, 0)
    assert tb.body == delta_body(Adic(M), tb.c).body
    tb = pair_body(Adic(M), Adic(X2Y3), 1, 1)
    assert tb.body == delta_body(Adic(M * X2Y3), tb.c).body


def test_pair_body_phi_guard():
    with pytest.raises(TruncationTooLow):
        pair_body(Adic(M), Adic(X2Y3), 1, 1, phi=(1, 1, 2))


def test_superadditivity():
    assert pair_superadditivity_check(Adic(M), Adic(X2Y3), 1, 0).holds
    assert pair_superadditivity_check(Adic(M), Adic(X2Y3), 1, 1).holds
    r = pair_superadditivity_check(Adic(M), Adic(M**2), 2, 3)
    assert r.holds and r.equal


def test_pair_homothety():
    assert pair_homothety_check(Adic(M), Adic(M**2), 1, 4).homothetic
    assert pair_homothety_check(Adic(X2Y3), Adic(X2Y3), 6, 6).homothetic
    r = pair_homothety_check(Adic(M), Adic(X2Y3), 1, 6)
    assert not r.homothetic


def test_rescale_body_identity():
    f = DivisorialToric([((1, 2), 1), ((3, 1), Fraction(5, 2))])
    for l in (2, 3):
        lhs = delta_body(Rescale(f, l), 6 * l).body
        assert lhs == scale(delta_body(f, 6).body, l)


def test_scaling_body_identity():
    f = DivisorialToric([((1, 2), 1), ((3, 1), Fraction(5, 2))])
    for xi in (Fraction(1, 2), 2, Fraction(3, 5)):
        g = f.scaled(xi)
        assert delta_body(g, 6 * xi).body == scale(delta_body(f, 6).body, xi)
        assert g.delta().truncate(10) == f.delta().scale(xi).truncate(10)


def test_structural_body_agrees_with_hull_of_points():
    f = Adic(MonomialIdeal(2, [(4, 0), (1, 1), (0, 3)]))
    assert delta_body(f, 5).body == hull([(4, 0), (5, 0), (1, 1), (0, 3), (0, 5), (1, 4)])
