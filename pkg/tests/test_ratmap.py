import numpy as np
import pytest

from ecirr.errors import ContextMismatch, DegreeZero, InvalidMap
from ecirr.ff import FieldCtx, FieldElem
from ecirr.poly import Poly
from ecirr.ratmap import INFINITY, RationalMap, eval_values, map_compose_check, map_eval, r_transform

F7 = FieldCtx(7)
X = Poly.x(F7)


def test_make_validates():
    with pytest.raises(InvalidMap):
        RationalMap.make(X + 1, X**2)
    with pytest.raises(InvalidMap):
        RationalMap.make((X - 1) * (X + 2), X - 1)
    with pytest.raises(InvalidMap):
        RationalMap.make(X**3 + 1, X, l=5)
    with pytest.raises(InvalidMap):
        RationalMap.make(X**3, Poly(F7, []))
    with pytest.raises(ContextMismatch):
        RationalMap.make(X**3 + 1, Poly.x(FieldCtx(5)))


def test_monic_normalisation_keeps_the_map(example):
    m = example.map
    assert m.a.is_monic() and m.unit == 4
    raw = Poly(m.ctx, [22, 29, 11, 41, 35, 1, -1, -8, 2, 8, -10, 32, -32, -1, 12, 13, -32, 1]) * 4
    b = Poly(m.ctx, [23, -10, 3, 5, -3, -13, -41, -16, -32, -8, 41, 8, 36, 19, -39, -32, 1])
    for x in m.ctx.enumerate():
        if b(x):
            assert map_eval(m, x) == raw(x) / b(x)


def test_json_roundtrip(fixture):
    m = fixture.map
    back = RationalMap.from_json(m.to_json())
    assert back.a == m.a and back.b == m.b and back.l == m.l


def test_eval_values_matches_map_eval(small_fixture):
    m = small_fixture.map
    imgs, pole = eval_values(m, m.ctx.all_values())
    for i, x in enumerate(m.ctx.enumerate()):
        y = map_eval(m, x)
        if pole[i]:
            assert y is INFINITY
        else:
            assert y == FieldElem.from_value(m.ctx, imgs[i])
    assert map_eval(m, INFINITY) is INFINITY


def test_over_extension_agrees_on_subfield(small_fixture):
    m = small_fixture.map
    big = FieldCtx.extension(m.ctx.p, 2)
    mm = m.over(big)
    for x in list(m.ctx.enumerate())[:20]:
        y = map_eval(m, x)
        z = map_eval(mm, big(list(x.coeffs) + [0]))
        assert (y is INFINITY and z is INFINITY) or z == big(list(y.coeffs) + [0])


def test_compose():
    m = RationalMap.make(X**3 + 1, X)
    x = F7(3)
    assert map_compose_check(m, 2, x) == map_eval(m, map_eval(m, x))


def test_r_transform_definition(example):
    m = example.map
    g = example.f0
    h = r_transform(g, m)
    assert h.degree == m.l * g.degree
    for x in m.ctx.enumerate():
        bx = m.b(x)
        assert h(x) == bx ** g.degree * g(m.a(x) / bx) if bx else h(x) == m.a(x) ** g.degree


def test_r_transform_rejects_constants():
    m = RationalMap.make(X**3 + 1, X)
    with pytest.raises(DegreeZero):
        r_transform(Poly.const(F7, 3), m)


def test_r_transform_multiplicative_random():
    rng = np.random.default_rng(5)
    m = RationalMap.make(X**3 + 2 * X + 1, 3 * X**2 + 1)
    for _ in range(20):
        g = Poly(F7, list(rng.integers(0, 7, rng.integers(1, 6))) + [1])
        h = Poly(F7, list(rng.integers(0, 7, rng.integers(1, 6))) + [1])
        assert r_transform(g * h, m) == r_transform(g, m) * r_transform(h, m)
