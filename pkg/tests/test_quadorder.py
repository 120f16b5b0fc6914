import pytest
from hypothesis import given, settings, strategies as st

from ecirr.errors import DegenerateAlpha, NotDivisible, NotInOrder, OrderMismatch
from ecirr.quadorder import (
    QuadOrder, check_alpha, check_val_lemma, delta_chain, divides, frobenius_from_trace,
    nu_alpha, nu_alpha_mod, qi_exact_div, qi_pow,
)

from oracles import valuation_by_index

ORDERS = [QuadOrder(-19), QuadOrder(-11), QuadOrder(-2), QuadOrder(-5)]
ints = st.integers(-10**6, 10**6)


def elems(R):
    return st.tuples(ints, ints).map(lambda t: R(*t))


@pytest.mark.parametrize("R", ORDERS, ids=lambda R: f"D={R.D}")
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_ring_identities(R, data):
    x, y, z = (data.draw(elems(R)) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x * y).norm() == x.norm() * y.norm()
    assert x.conj().conj() == x
    assert x * x.conj() == R(x.norm())
    assert x + x.conj() == R(x.trace())
    if y:
        assert qi_exact_div(x * y, y) == x


def test_omega_squared():
    R = QuadOrder(-19)
    w = R.w
    assert w * w == R(-5, 1)  # w^2 = w - 5
    assert R(7, 2).norm() == 83 and R(3, 1).norm() == 17


def test_mixed_orders_rejected():
    with pytest.raises(OrderMismatch):
        QuadOrder(-19)(1, 1) + QuadOrder(-11)(1, 1)
    with pytest.raises(ValueError):
        QuadOrder(-8)


def test_exact_division_failure():
    R = QuadOrder(-19)
    with pytest.raises(NotDivisible):
        qi_exact_div(R(1, 1), R(3, 1))
    assert divides(R(3, 1), R(17))


@pytest.mark.parametrize("R,l", [(QuadOrder(-19), 17), (QuadOrder(-11), 3), (QuadOrder(-2), 3), (QuadOrder(-11), 5)])
@settings(max_examples=80, deadline=None)
@given(data=st.data())
def test_nu_alpha_matches_index_oracle(R, l, data):
    alpha = R.elements_of_norm(l)[0]
    beta = data.draw(elems(R))
    k_extra = data.draw(st.integers(0, 4))
    beta = beta * qi_pow(alpha, k_extra)
    if not beta:
        return
    k, cof = nu_alpha(beta, alpha)
    assert k == valuation_by_index(beta, alpha) >= k_extra
    assert qi_pow(alpha, k) * cof == beta and not divides(alpha, cof)
    assert nu_alpha_mod(beta, alpha, k + 2) == k
    assert nu_alpha_mod(beta, alpha, k) is None


def test_check_alpha():
    R = QuadOrder(-19)
    assert check_alpha(R(3, 1)) == 17
    with pytest.raises(DegenerateAlpha):
        check_alpha(R(2))  # norm 4
    with pytest.raises(DegenerateAlpha):
        check_alpha(R(-1, 2))  # sqrt(-19), ramified
    with pytest.raises(DegenerateAlpha):
        check_val_lemma(R(2), R(3, 1), 5)


def test_example_frobenius_and_alpha():
    R = QuadOrder(-19)
    pi, pib = frobenius_from_trace(R, 16, 83)
    assert (pi, pib) == (R(7, 2), R(9, -2))
    alpha = R(3, 1)
    assert pi - 1 == 2 * alpha
    assert nu_alpha(R(17), alpha) == (1, alpha.conj())
    assert pow(83, 3, 17) == 9 and pow(83, 6, 17) == 13


def test_frobenius_rejects_foreign_trace():
    with pytest.raises(NotInOrder):
        frobenius_from_trace(QuadOrder(-19), 15, 83)
    with pytest.raises(NotInOrder):
        frobenius_from_trace(QuadOrder(-19), 20, 83)


def test_delta_chain_modular_matches_exact():
    R = QuadOrder(-11)
    pi = R(5, 3)
    exact = delta_chain(pi, 2, 3, 3)
    mod = delta_chain(pi, 2, 3, 3, modulus=3**10)
    assert [d.mod(3**10) for d in exact] == mod
    assert exact[1] == qi_pow(exact[0], 3)


def test_val_lemma_precision_route_matches_exact(example):
    R = example.alpha.order
    pi, _ = frobenius_from_trace(R, 16, 83)
    for delta in delta_chain(pi, 2 * example.d, 17, 2):
        exact = check_val_lemma(delta, example.alpha, 17)
        approx = check_val_lemma(delta, example.alpha, 17, precision=2)
        assert exact.valuations == approx.valuations
        assert exact.holds


def test_val_lemma_needs_hypothesis(example):
    R = example.alpha.order
    _, pib = frobenius_from_trace(R, 16, 83)
    rep = check_val_lemma(qi_pow(pib, 6), example.alpha, 17)
    # 83^6 = 13 mod 17, so conj(pi)^6 is not 1 mod alpha and the lemma has nothing to say
    assert not rep.hypothesis and not rep.holds
