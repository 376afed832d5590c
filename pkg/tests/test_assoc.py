"""Truncated associative algebra: products, exp, log, inversion, base change."""

import random
from fractions import Fraction

import pytest

from nilbch.assoc import (
    AssocPoly,
    commutator,
    poly_exp,
    poly_inv,
    poly_log,
    poly_mul,
    scalar_extend,
)
from nilbch.errors import (
    AlgebraMismatch,
    NotInvertible,
    NotNilpotent,
    NotUnipotent,
)
from nilbch.freelie import LieElement, dynkin_project, lie_bracket, lie_embed
from nilbch.scalars import WeilElement

XY = ("X", "Y")


def rational_gen(i, trunc=4):
    return AssocPoly.generator(XY, i, trunc)


def weil_gen(i, k=2, trunc=4):
    return scalar_extend(rational_gen(i, trunc), k)


def random_poly(rng, trunc=4, weil_k=None):
    poly = AssocPoly.zero(XY, trunc, weil_k)
    for _ in range(rng.randint(1, 4)):
        length = rng.randint(0, trunc)
        word = tuple(rng.randint(0, 1) for _ in range(length))
        coeff = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        poly = poly + AssocPoly(XY, trunc, weil_k, {word: coeff})
    return poly


def augmentation(rng, trunc=4):
    poly = random_poly(rng, trunc)
    return poly - AssocPoly(XY, trunc, None, {(): poly.constant_term()})


def test_infinitesimal_product_expansion():
    d1 = WeilElement.generator(2, 1)
    d2 = WeilElement.generator(2, 2)
    x, y = weil_gen(0), weil_gen(1)
    one = AssocPoly.one(XY, 4, 2)
    lhs = poly_mul(one + x.scale(d1), one + y.scale(d2))
    xy = AssocPoly(XY, 4, 2, {(0, 1): d1 * d2})
    assert lhs == one + x.scale(d1) + y.scale(d2) + xy


def test_commutator_matches_lie_embedding():
    x, y = rational_gen(0), rational_gen(1)
    bracket = lie_bracket(
        LieElement.generator(XY, 0, 4), LieElement.generator(XY, 1, 4)
    )
    assert poly_mul(x, y) - poly_mul(y, x) == lie_embed(bracket)


def test_geometric_series_inverse_at_trunc_four():
    x = rational_gen(0)
    one = AssocPoly.one(XY, 4)
    series = one - x + poly_mul(x, x) - poly_mul(x, poly_mul(x, x)) + poly_mul(
        poly_mul(x, x), poly_mul(x, x)
    )
    assert poly_mul(one + x, series) == one


def test_exp_of_zero():
    assert poly_exp(AssocPoly.zero(XY, 4)) == AssocPoly.one(XY, 4)


def test_exp_of_single_infinitesimal():
    d1 = WeilElement.generator(1, 1)
    x = weil_gen(0, k=1)
    assert poly_exp(x.scale(d1)) == AssocPoly.one(XY, 4, 1) + x.scale(d1)


def test_exp_truncated_series():
    x = rational_gen(0, trunc=3)
    xx = poly_mul(x, x)
    expected = (
        AssocPoly.one(XY, 3)
        + x
        + xx.scale(Fraction(1, 2))
        + poly_mul(x, xx).scale(Fraction(1, 6))
    )
    assert poly_exp(x) == expected


def test_exp_rejects_constant_term():
    with pytest.raises(NotNilpotent):
        poly_exp(AssocPoly.one(XY, 4))


def test_log_of_one():
    assert not poly_log(AssocPoly.one(XY, 4))


def test_log_of_infinitesimal_product():
    # log((1+d1 X)(1+d2 Y)) = d1 X + d2 Y + 1/2 d1 d2 (XY - YX)
    d1 = WeilElement.generator(2, 1)
    d2 = WeilElement.generator(2, 2)
    x, y = weil_gen(0), weil_gen(1)
    one = AssocPoly.one(XY, 4, 2)
    product = poly_mul(one + x.scale(d1), one + y.scale(d2))
    expected = (
        x.scale(d1)
        + y.scale(d2)
        + commutator(x, y).scale(d1 * d2 * Fraction(1, 2))
    )
    assert poly_log(product) == expected


def test_log_exp_round_trip():
    x, y = rational_gen(0), rational_gen(1)
    assert poly_log(poly_exp(x + y)) == x + y


def test_exp_log_round_trips_seeded():
    rng = random.Random(11)
    one = AssocPoly.one(XY, 4)
    for _ in range(150):
        a = augmentation(rng)
        assert poly_log(poly_exp(a)) == a
        u = one + augmentation(rng)
        assert poly_exp(poly_log(u)) == u


def test_log_rejects_wrong_constant():
    with pytest.raises(NotUnipotent):
        poly_log(rational_gen(0))


def test_inv_of_tangent_element():
    d1 = WeilElement.generator(1, 1)
    x = weil_gen(0, k=1)
    one = AssocPoly.one(XY, 4, 1)
    assert poly_inv(one + x.scale(d1)) == one - x.scale(d1)


def test_inv_of_exponential():
    x = rational_gen(0)
    assert poly_inv(poly_exp(x)) == poly_exp(-x)


def test_inv_of_one():
    one = AssocPoly.one(XY, 4)
    assert poly_inv(one) == one


def test_inv_of_general_unit():
    rng = random.Random(3)
    one = AssocPoly.one(XY, 4)
    for _ in range(50):
        a = augmentation(rng) + one.scale(Fraction(rng.randint(1, 4)))
        assert poly_mul(a, poly_inv(a)) == one
        assert poly_mul(poly_inv(a), a) == one


def test_inv_rejects_zero_constant():
    with pytest.raises(NotInvertible):
        poly_inv(rational_gen(0))


def test_scalar_extend_embeds():
    x, y = rational_gen(0), rational_gen(1)
    lifted = scalar_extend(x + y, 2)
    assert lifted == weil_gen(0) + weil_gen(1)


def test_scalar_extend_is_ring_homomorphism():
    rng = random.Random(17)
    for _ in range(100):
        a, b = random_poly(rng), random_poly(rng)
        assert scalar_extend(poly_mul(a, b), 3) == poly_mul(
            scalar_extend(a, 3), scalar_extend(b, 3)
        )


def test_weil_scalar_acts_on_extended_poly():
    d1 = WeilElement.generator(2, 1)
    assert scalar_extend(rational_gen(0), 2).scale(d1) == AssocPoly(
        XY, 4, 2, {(0,): d1}
    )


def test_associativity_seeded():
    rng = random.Random(23)
    for _ in range(150):
        a, b, c = (random_poly(rng, trunc=5) for _ in range(3))
        assert poly_mul(poly_mul(a, b), c) == poly_mul(a, poly_mul(b, c))


def test_exp_inverse_property_seeded():
    rng = random.Random(29)
    one = AssocPoly.one(XY, 4)
    for _ in range(150):
        a = augmentation(rng)
        assert poly_mul(poly_exp(a), poly_exp(-a)) == one


def test_exp_additive_on_commuting_elements():
    x = rational_gen(0)
    xx = poly_mul(x, x)
    assert poly_mul(poly_exp(x), poly_exp(xx)) == poly_exp(x + xx)
    two_x = x.scale(Fraction(2))
    assert poly_mul(poly_exp(x), poly_exp(two_x)) == poly_exp(x + two_x)


def test_bch_exponent_is_primitive():
    # log(exp X exp Y) projects to itself, i.e. it is a Lie element
    from nilbch.series import bch_classical

    for n in (2, 3, 4):
        z = bch_classical(n).as_element()
        assert dynkin_project(lie_embed(z)) == z


def test_truncation_mismatch_is_an_error():
    with pytest.raises(AlgebraMismatch):
        poly_mul(rational_gen(0, trunc=4), rational_gen(1, trunc=5))
    with pytest.raises(AlgebraMismatch):
        poly_mul(rational_gen(0), weil_gen(1))


def test_serialization_sorted_and_stable():
    x, y = rational_gen(0), rational_gen(1)
    poly = poly_mul(x, y).scale(Fraction(-1, 3)) + x
    obj = poly.to_json_obj()
    assert obj == {
        "trunc": 4,
        "terms": [
            {"word": "X", "coeff": "1"},
            {"word": "X·Y", "coeff": "-1/3"},
        ],
    }
