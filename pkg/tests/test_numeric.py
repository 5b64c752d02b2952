import math
from fractions import Fraction

import pytest

from filtmult.errors import InexactInput, NonPositiveInput, PrecisionExhausted, SchemaError
from filtmult.numeric import (
    Approx,
    QuadExt,
    approximate_above,
    approximate_below,
    convergents,
    format_scalar,
    iroot,
    nth_root,
    partial_quotients,
    quad,
    rational_dth_root,
    scalar_from_json,
    scalar_to_json,
    sign,
    sqrt_rational,
    squarefree_split,
)

S3 = QuadExt.sqrt(3)
S2 = QuadExt.sqrt(2)


def test_iroot_and_squarefree():
    assert iroot(27, 3) == 3
    assert iroot(28, 3) == 3
    assert iroot(10**40, 4) == 10**10
    assert squarefree_split(12) == (2, 3)
    assert squarefree_split(50) == (5, 2)


def test_quad_normalizes():
    assert quad(3, 0, 5) == 3
    assert isinstance(quad(3, 0, 5), Fraction)
    assert quad(0, 1, 12) == 2 * S3
    assert quad(1, 1, 4) == 3


def test_field_operations_exact():
    x = Fraction(2007, 169) - Fraction(9, 338) * S3
    assert x.a == Fraction(2007, 169) and x.b == Fraction(-9, 338)
    y = (1 + S3) * (1 - S3)
    assert y == -2
    assert (S3 / (9 - S3)) * (9 - S3) == S3
    assert (1 + S2) ** 2 == 3 + 2 * S2
    assert (1 + S2) ** -1 == S2 - 1


def test_sign_and_order():
    wall = 3 - S3 / 3
    assert Fraction(5, 2) > wall
    assert sign(Fraction(12, 5) - wall) < 0
    assert sign(S2 - Fraction(140, 99)) > 0
    assert sign(S2 - Fraction(99, 70)) < 0
    assert math.floor(7 * S2) == 9
    assert math.ceil(7 * S2) == 10


def test_mixed_fields_fall_back_to_approx():
    z = S2 + S3
    assert isinstance(z, Approx)
    assert abs(float(z) - (math.sqrt(2) + math.sqrt(3))) < 1e-12


def test_sqrt_and_roots():
    assert sqrt_rational(Fraction(9, 4)) == Fraction(3, 2)
    assert sqrt_rational(8) == 2 * S2
    assert nth_root(Fraction(27, 8), 3) == Fraction(3, 2)
    assert nth_root(6, 2) == QuadExt.sqrt(6)
    assert nth_root(3 + 2 * S2, 2) == 1 + S2
    approx = nth_root(2, 3)
    assert abs(float(approx) - 2 ** (1 / 3)) < 1e-12


def test_rational_dth_root():
    assert rational_dth_root(4, 1, 2) == 2
    assert rational_dth_root(216 * 7, 27 * 7, 3) == 2
    assert rational_dth_root(6, 1, 2) is None
    with pytest.raises(NonPositiveInput):
        rational_dth_root(0, 1, 2)
    with pytest.raises(InexactInput):
        rational_dth_root(Approx(2.0), 1, 2)


def test_partial_quotients():
    assert list(partial_quotients(Fraction(415, 93))) == [4, 2, 6, 7]
    sq = partial_quotients(S2)
    assert [next(sq) for _ in range(6)] == [1, 2, 2, 2, 2, 2]
    s7 = partial_quotients(QuadExt.sqrt(7))
    assert [next(s7) for _ in range(9)] == [2, 1, 1, 1, 4, 1, 1, 1, 4]
    with pytest.raises(PrecisionExhausted):
        list(partial_quotients(Approx(math.pi, 1e-6)))


def test_convergents_sqrt2():
    c = convergents(S2)
    assert [next(c) for _ in range(5)] == [(1, 1), (3, 2), (7, 5), (17, 12), (41, 29)]


@pytest.mark.parametrize("xi", [S2, Fraction(22, 7), 3 - S3 / 3, Approx(math.e, 1e-15)])
@pytest.mark.parametrize("alpha", [Fraction(1, 10), Fraction(1, 1000)])
def test_one_sided_approximations(xi, alpha):
    p, q = approximate_below(xi, alpha)
    assert p > 0
    diff = float(xi) - p / q
    assert -1e-12 <= diff < float(alpha) / q
    p, q = approximate_above(xi, alpha)
    diff = p / q - float(xi)
    assert -1e-12 <= diff < float(alpha) / q


def test_approximation_examples():
    assert approximate_below(Fraction(3, 2), Fraction(1, 10)) == (3, 2)
    assert approximate_above(Fraction(3, 2), Fraction(1, 10)) == (3, 2)
    assert approximate_below(S3, Fraction(1, 20)) == (71, 41)
    assert approximate_above(S3, Fraction(1, 20)) == (26, 15)
    p, q = approximate_below(3 - S3 / 3, Fraction(1, 100))
    diff = 3 - S3 / 3 - Fraction(p, q)
    assert sign(diff) >= 0 and sign(diff - Fraction(1, 100 * q)) < 0


def test_float_too_coarse_near_integer():
    with pytest.raises(PrecisionExhausted):
        approximate_below(Approx(1.0), Fraction(1, 10))


def test_approximations_reject_nonpositive():
    with pytest.raises(NonPositiveInput):
        approximate_below(-S2, Fraction(1, 10))
    with pytest.raises(NonPositiveInput):
        approximate_above(S2, 0)


def test_format_scalar():
    assert format_scalar(Fraction(33)) == "33"
    assert format_scalar(Fraction(2007, 169) - Fraction(9, 338) * S3) == "2007/169 - 9/338*sqrt(3)"
    assert format_scalar(S2) == "sqrt(2)"
    assert format_scalar(-S2) == "-sqrt(2)"
    assert format_scalar(Approx(1.5), digits=4) == "~1.5"


@pytest.mark.parametrize("x", [Fraction(-3, 7), Fraction(5), Fraction(1, 2) + Fraction(3, 4) * S3, Approx(0.25, 1e-9)])
def test_json_roundtrip(x):
    back = scalar_from_json(scalar_to_json(x))
    if isinstance(x, Approx):
        assert back.value == x.value and back.tol == x.tol
    else:
        assert back == x


def test_json_rejects_garbage():
    with pytest.raises(SchemaError):
        scalar_from_json({"nope": 1})
    with pytest.raises(SchemaError):
        scalar_from_json(True)
