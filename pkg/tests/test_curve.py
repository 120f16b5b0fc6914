import numpy as np
import pytest

from ecirr.curve import (
    IDENTITY, Curve, Point, count_points, is_ordinary, lift_x, point_add, point_neg, points,
    random_point, scalar_mul, sqrt, verify_endomorphism,
)
from ecirr.errors import PointNotOnCurve, SingularCurve
from ecirr.ff import FieldCtx
from ecirr.poly import Poly
from ecirr.ratmap import RationalMap

from oracles import count_points_naive


def test_singular_curve_rejected():
    with pytest.raises(SingularCurve):
        Curve(FieldCtx(7), 0, 0)
    with pytest.raises(SingularCurve):
        Curve(FieldCtx(5), 3, 1)  # 4*27 + 27 = 135 = 0 mod 5

def test_sqrt():
    for ctx in (FieldCtx(13), FieldCtx(17), FieldCtx.extension(3, 2)):
        for a in ctx.enumerate():
            r = sqrt(a)
            assert (r is None) == (not a.is_square() and bool(a))
            if r is not None:
                assert r * r == a


def test_point_count_matches_naive(small_fixture):
    assert count_points(small_fixture.curve).count == count_points_naive(small_fixture.curve)


def test_point_count_over_extension_naive():
    c = Curve(FieldCtx.extension(5, 2), 1, 3)
    assert count_points(c).count == count_points_naive(c)
    assert len(points(c)) + 1 == count_points(c).count


def test_group_law(fixture):
    c = fixture.curve
    rng = np.random.default_rng(2)
    for _ in range(10):
        P, Q, R = (random_point(c, rng) for _ in range(3))
        assert point_add(c, P, IDENTITY) == P
        assert point_add(c, P, point_neg(c, P)) is IDENTITY
        assert point_add(c, P, Q) == point_add(c, Q, P)
        assert point_add(c, point_add(c, P, Q), R) == point_add(c, P, point_add(c, Q, R))
        assert c.contains(point_add(c, P, P))


def test_scalar_mul_order(fixture):
    c = fixture.curve
    N = count_points(c).count
    rng = np.random.default_rng(4)
    for _ in range(5):
        P = random_point(c, rng)
        assert scalar_mul(c, N, P) is IDENTITY
        assert scalar_mul(c, 5, P) == point_add(c, scalar_mul(c, 2, P), scalar_mul(c, 3, P))
        assert scalar_mul(c, -1, P) == point_neg(c, P)


def test_point_not_on_curve():
    c = Curve(FieldCtx(7), 1, 3)
    bad = Point(c.ctx(0), c.ctx(1))
    with pytest.raises(PointNotOnCurve):
        point_add(c, bad, bad)


def test_lift_x():
    c = Curve(FieldCtx(11), 1, 3)
    for x in c.ctx.enumerate():
        P = lift_x(c, x)
        assert (P is None) == (not c.rhs(x).is_square() and bool(c.rhs(x)))
        if P is not None:
            assert c.contains(P)


def test_example_curve(example):
    c = example.curve
    data = count_points(c)
    assert (data.count, data.trace) == (68, 16)
    assert is_ordinary(c)
    c2 = c.base_change(FieldCtx.extension(83, 2))
    assert count_points(c2).count == 83**2 + 1 - (16**2 - 2 * 83) == 6800


def test_fixture_maps_are_endomorphisms(fixture):
    rep = verify_endomorphism(fixture.curve, fixture.map)
    assert rep.passed, rep.failures
    assert rep.mode == "exhaustive"


def test_example_map_is_endomorphism(example):
    rep = verify_endomorphism(example.curve, example.map)
    assert rep.passed and rep.degree_ok and rep.x_compatible and rep.character_ok and rep.additive_ok


def test_perturbed_map_fails(example):
    m = example.map
    b = m.b + Poly.monomial(m.ctx, 3)
    bad = RationalMap.make(m.a, b)
    assert not verify_endomorphism(example.curve, bad).passed


def test_non_prime_degree_flagged():
    ctx = FieldCtx(11)
    c = Curve(ctx, 1, 3)
    x = Poly.x(ctx)
    rep = verify_endomorphism(c, RationalMap.make(x**4 + 1, x))
    assert not rep.degree_ok and not rep.passed
