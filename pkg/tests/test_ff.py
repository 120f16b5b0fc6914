import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ecirr.errors import DegreeMismatch, FieldTooLarge, NotPrime, ReducibleModulus
from ecirr.ff import FieldCtx, FieldElem, embed, enum_cap, is_prime, prime_factors

FIELDS = [FieldCtx(7), FieldCtx.extension(5, 2), FieldCtx.extension(3, 3), FieldCtx(83)]


def elems(ctx):
    return st.lists(st.integers(0, ctx.p - 1), min_size=ctx.n, max_size=ctx.n).map(lambda c: FieldElem(ctx, c))


@pytest.mark.parametrize("p", [0, 1, 2, 4, 9, 91])
def test_rejects_bad_characteristic(p):
    with pytest.raises(NotPrime):
        FieldCtx(p)


def test_rejects_bad_modulus():
    with pytest.raises(ReducibleModulus):
        FieldCtx(5, 2, [4, 0, 1])  # x^2 - 1
    with pytest.raises(DegreeMismatch):
        FieldCtx(5, 2, [2, 0, 3])
    with pytest.raises(DegreeMismatch):
        FieldCtx(5, 3, [2, 0, 1])


def test_is_prime_matches_sieve():
    sieve = [n for n in range(2, 2000) if all(n % d for d in range(2, int(n**0.5) + 1))]
    assert [n for n in range(2000) if is_prime(n)] == sieve
    assert prime_factors(2 * 2 * 3 * 17 * 17) == [2, 3, 17]


@pytest.mark.parametrize("ctx", FIELDS, ids=repr)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_field_axioms(ctx, data):
    a, b, c = (data.draw(elems(ctx)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ctx.zero and a + (-a) == ctx.zero
    assert a ** ctx.order == a
    if a:
        assert a * a.inverse() == ctx.one
        assert (b / a) * a == b


@pytest.mark.parametrize("ctx", FIELDS[:3], ids=repr)
def test_enumeration_is_lexicographic_bijection(ctx):
    vals = ctx.all_values()
    assert np.array_equal(ctx.encode(vals), np.arange(ctx.order))
    listed = [e.coeffs for e in ctx.enumerate()]
    assert listed == sorted(listed) and len(set(listed)) == ctx.order


@pytest.mark.parametrize("ctx", FIELDS[:3], ids=repr)
def test_vector_kernels_match_scalar_ops(ctx):
    vals = ctx.all_values()
    rng = np.random.default_rng(1)
    other = vals[rng.permutation(ctx.order)]
    prod = ctx.mul(vals, other)
    for i in rng.choice(ctx.order, 25):
        x, y = FieldElem.from_value(ctx, vals[i]), FieldElem.from_value(ctx, other[i])
        assert FieldElem.from_value(ctx, prod[i]) == x * y
    chi = ctx.chi_vec(vals)
    squares = {e * e for e in ctx.enumerate()}
    for i, e in enumerate(ctx.enumerate()):
        assert chi[i] == (0 if not e else (1 if e in squares else -1))


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        FieldCtx(7).zero.inverse()


def test_embedding_is_a_ring_homomorphism():
    src, dst = FieldCtx.extension(3, 2), FieldCtx.extension(3, 4)
    rng = np.random.default_rng(0)
    for _ in range(30):
        a, b = src.random_elem(rng), src.random_elem(rng)
        up = lambda e: FieldElem.from_value(dst, embed(e.value, src, dst))
        assert up(a * b) == up(a) * up(b)
        assert up(a + b) == up(a) + up(b)
        # image lies in the subfield fixed by x -> x^9
        assert up(a) ** 9 == up(a)


def test_json_roundtrip():
    for ctx in FIELDS:
        assert FieldCtx.from_json(ctx.to_json()) == ctx
    assert FieldCtx.from_json({"p": 83, "n": 3, "modulus": [81, 3, 0, 1]}).order == 83**3


def test_enum_cap_env(monkeypatch):
    monkeypatch.setenv("ECIRR_ENUM_CAP", "100")
    assert enum_cap() == 100
    FieldCtx(97).all_values()
    with pytest.raises(FieldTooLarge):
        FieldCtx(101).all_values()
