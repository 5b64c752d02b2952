import itertools
import math
import random
from fractions import Fraction

import pytest

from filtmult.divisorial import (
    BUILTIN_RULES,
    IntersectionTensor,
    NefEnvelope,
    builtin_example,
    envelope_issues,
    equality_classifier,
    find_rescaling,
    gamma_eval,
    intersection_product,
    mixed_polynomial,
    mixed_values,
    multiplicity_of,
    multiplicity_polynomial,
    region_of,
)
from filtmult.errors import InputError, NonPositiveInput, NotEquality, OutsideEnvelope, RationalityUndecided
from filtmult.numeric import QuadExt, format_scalar

S3 = QuadExt.sqrt(3)
C = 3 / (9 - S3)
WALL = 3 - S3 / 3
T, ENV = builtin_example()
ENTRIES = {(0, 0, 0): 468, (0, 0, 1): -162, (0, 1, 1): 54, (1, 1, 1): 54}


def cube(g1, g2):
    """``(g1 E1 + g2 E2)^3`` expanded by hand from the four entries."""
    return 468 * g1**3 + 3 * (-162) * g1**2 * g2 + 3 * 54 * g1 * g2**2 + 54 * g2**3


def oracle_gamma(n1, n2):
    if n2 <= n1:
        return (n1, n1)
    if n2 <= float(WALL) * n1:
        return (n1, n2)
    return (C * n2, n2)


def test_tensor_queries():
    assert T.query("E1", "E1", "E2") == -162
    assert T.query("E2", "E1", "E1") == -162
    assert T.query("E1", "E1", "E1") == 468
    assert T.entry(1, 1, 1) == 54


def test_intersection_product_symmetric_and_multilinear():
    rng = random.Random(5)
    for _ in range(30):
        vs = [tuple(Fraction(rng.randint(-5, 5)) for _ in range(2)) for _ in range(4)]
        base = intersection_product(T, vs[:3])
        for perm in itertools.permutations(vs[:3]):
            assert intersection_product(T, perm) == base
        s = tuple(a + b for a, b in zip(vs[0], vs[3]))
        assert intersection_product(T, [s, vs[1], vs[2]]) == base + intersection_product(T, [vs[3], vs[1], vs[2]])
        g1, g2 = vs[0]
        assert intersection_product(T, [vs[0]] * 3) == cube(g1, g2)


def test_gamma_examples():
    assert gamma_eval(ENV, (2, 1)) == (2, 2)
    assert gamma_eval(ENV, (1, 2)) == (1, 2)
    assert gamma_eval(ENV, (1, 3)) == (9 / (9 - S3), 3)


def test_gamma_table_against_oracle():
    rng = random.Random(11)
    for _ in range(60):
        n1, n2 = rng.randint(1, 40), rng.randint(0, 120)
        if n2 == n1 or abs(n2 - float(WALL) * n1) < 1e-9:
            continue
        assert gamma_eval(ENV, (n1, n2)) == oracle_gamma(n1, n2)


def test_gamma_homogeneity_and_lower_bound():
    for d in [(2, 1), (3, 5), (1, 7)]:
        for k in (Fraction(1, 3), 2, Fraction(7, 2)):
            assert gamma_eval(ENV, tuple(k * x for x in d)) == tuple(k * g for g in gamma_eval(ENV, d))
        assert all(g >= x for g, x in zip(gamma_eval(ENV, d), d))


def test_region_membership():
    assert region_of(ENV, (1, Fraction(5, 2))) == "region 3"
    assert region_of(ENV, (Fraction(1), Fraction(12, 5))) == "region 2"
    assert region_of(ENV, (3, 1)) == "region 1"
    assert region_of(ENV, (1, 1)) == "region 1|region 2"
    with pytest.raises(NonPositiveInput):
        gamma_eval(ENV, (-1, 1))


def test_envelope_agrees_on_walls():
    samples = [(k, k) for k in range(1, 51)] + [(k, WALL * k) for k in range(1, 51)]
    assert envelope_issues(ENV, samples) == []


def test_outside_envelope():
    env = NefEnvelope.build(2, [("only", [(1, -1), (0, 1)], [(1, 0), (1, 0)])])
    with pytest.raises(OutsideEnvelope):
        gamma_eval(env, (1, 2))


def test_envelope_issue_is_reported():
    env = NefEnvelope.build(2, [("a", [(1, -1), (0, 1)], [(1, 0), (1, 0)]),
                               ("b", [(-1, 1), (1, 0)], [(2, 0), (0, 1)])])
    assert envelope_issues(env, [(1, 1)])


def test_piecewise_multiplicity_polynomial():
    pieces = multiplicity_polynomial(T, ENV, (1, 0), (0, 1))
    assert [p.region for p in pieces] == ["region 1", "region 2", "region 3"]
    r1, r2, r3 = (p.form for p in pieces)
    assert r1.coefficient((3, 0)) == 33 and len(r1.terms()) == 1
    assert [r2.coefficient(a) for a in ((3, 0), (2, 1), (1, 2), (0, 3))] == [78, -81, 27, 9]
    assert r3.coefficient((0, 3)) == Fraction(2007, 169) - 9 * S3 / 338
    assert len(r3.terms()) == 1
    assert r1.coefficient((3, 0)) == Fraction(cube(1, 1), 6)
    assert r3.coefficient((0, 3)) == cube(C, 1) / 6


def test_multiplicity_matches_hand_expansion():
    for n1, n2 in [(1, 0), (2, 1), (1, 2), (3, 5), (1, 3), (2, 9)]:
        g = oracle_gamma(n1, n2)
        assert multiplicity_of(T, ENV, (n1, n2)) == cube(*g)


def test_mixed_polynomial_full_display():
    form = mixed_polynomial(T, ENV, (1, 0), (0, 1))
    want = [33, Fraction(891, 26) + 99 * S3 / 26, Fraction(12042, 338) - 27 * S3 / 338,
            Fraction(2007, 169) - 9 * S3 / 338]
    got = [form.coefficient((3 - i, i)) for i in range(4)]
    assert got == want


def test_mixed_polynomial_equality_pair():
    form = mixed_polynomial(T, ENV, (1, 1), (1, 1))
    assert [form.coefficient((3 - i, i)) for i in range(4)] == [33, 99, 99, 33]


def test_mixed_values_equality_identity():
    e = mixed_values(T, ENV, (1, 3), (2, 6))
    assert [e[i] for i in range(4)] == [3 ** (3 - i) * 6**i * (Fraction(12042, 169) - 27 * S3 / 169) for i in range(4)]
    # e_0 = 27 B and e_3 = 216 B, so (e_0^(1/3) + e_3^(1/3))^3 = 729 B
    base = Fraction(12042, 169) - 27 * S3 / 169
    form = mixed_polynomial(T, ENV, (1, 3), (2, 6))
    assert 6 * form(1, 1) == 729 * base


REPS = {"region 1": [(2, 1), (3, 1)], "region 2": [(1, 2), (2, 3)], "region 3": [(1, 3), (2, 7)]}


@pytest.mark.parametrize("ra,rb", list(itertools.product(REPS, REPS)))
def test_classifier_matrix(ra, rb):
    d1, d2 = REPS[ra][0], REPS[rb][1]
    v = equality_classifier(ENV, T, d1, d2)
    rule = BUILTIN_RULES.get((ra, rb), "never")
    assert v.regions == (ra, rb) and v.expected == rule
    if rule == "always":
        assert v.verdict == "EQUALITY"
    else:
        assert v.verdict == "STRICT"


def test_classifier_region_two_proportional():
    v = equality_classifier(ENV, T, (1, 2), (2, 4))
    assert v.verdict == "EQUALITY" and v.ratio == 2


def test_find_rescaling():
    assert find_rescaling(ENV, T, (1, 3), (2, 6)) == (2, 1)
    assert find_rescaling(ENV, T, (2, 5), (2, 5)) == (1, 1)
    assert find_rescaling(ENV, T, (1, 3), (2, 6)) == find_rescaling(ENV, T, (Fraction(1, 2), 3), (1, 6))
    with pytest.raises(NotEquality):
        find_rescaling(ENV, T, (2, 1), (1, 3))
    with pytest.raises(RationalityUndecided):
        find_rescaling(ENV, T, (1, 3), (1, 3 * S3))


def test_region_three_family():
    base = Fraction(12042, 169) - 27 * S3 / 169
    for a1, b1 in [(1, 2), (1, 1), (Fraction(1, 2), 2)]:
        e = mixed_values(T, ENV, (a1, 3), (b1, 6))
        assert list(e) == [3 ** (3 - i) * 6**i * base for i in range(4)]


def test_format_of_region_three_coefficient():
    assert format_scalar(Fraction(2007, 169) - 9 * S3 / 338) == "2007/169 - 9/338*sqrt(3)"


def test_tensor_from_labels_rejects_unknown():
    with pytest.raises(InputError):
        IntersectionTensor.from_labels(3, ["E1"], {"E1,E9,E1": 1})


def test_float_cross_check():
    c = 3 / (9 - math.sqrt(3))
    f3 = (468 * c**3 - 486 * c**2 + 162 * c + 54) / 6
    assert math.isclose(f3, 2007 / 169 - 9 * math.sqrt(3) / 338, rel_tol=1e-12)
