import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quottaut.gradedspace import (
    ONE,
    ZERO,
    GradedDim,
    direct_sum,
    dual,
    evaluate,
    even_part,
    ext_power,
    gen_binomial,
    odd_part,
    poincare_string,
    shift,
    sym_power,
    tensor,
)

from conftest import graded_dims

G = GradedDim


def test_canonical_form_drops_zeros():
    assert dict(G({0: 1, 3: 0})) == {0: 1}
    assert G({0: 0}) == ZERO
    with pytest.raises(ValueError):
        G({1: -1})


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ({0: 1}, {0: 1}, {0: 2}),
        ({0: 1, 1: 2}, {}, {0: 1, 1: 2}),
        ({-1: 3}, {-1: 1, 2: 1}, {-1: 4, 2: 1}),
    ],
)
def test_direct_sum(a, b, expected):
    assert direct_sum(G(a), G(b)) == G(expected)


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ({0: 1, 1: 1}, {0: 1, 1: 1}, {0: 1, 1: 2, 2: 1}),
        ({0: 3, 5: 2}, {}, {}),
        ({0: 2}, {1: 3}, {1: 6}),
    ],
)
def test_tensor(a, b, expected):
    assert tensor(G(a), G(b)) == G(expected)


def test_dual_and_shift():
    g = 3
    assert dual(G({0: 1, 1: g})) == G({-1: g, 0: 1})
    assert dual(ZERO) == ZERO
    assert shift(G({0: 1}), -1) == G({1: 1})
    assert shift(G({2: 5}), 2) == G({0: 5})


@given(graded_dims(), st.integers(-4, 4))
def test_dual_involution_and_shift_identity(a, n):
    assert dual(dual(a)) == a
    assert shift(a, 0) == a
    assert shift(shift(a, n), -n) == a
    assert all(shift(a, n).get(d) == a.get(d + n) for d in range(-10, 11))


def test_sym_power_examples():
    for k in range(6):
        assert sym_power(G({0: 1}), k) == G({0: 1})
    # x^2 and x*theta; theta^2 = 0
    assert sym_power(G({0: 1, 1: 1}), 2) == G({0: 1, 1: 1})
    assert sym_power(G({1: 2}), 3) == ZERO


def test_ext_power_examples():
    assert ext_power(G({0: 2}), 2) == G({0: 1})
    assert ext_power(G({1: 1}), 2) == G({2: 1})
    assert ext_power(G({0: 1, 1: 1, 2: 3}), -3) == ZERO
    assert sym_power(G({0: 1}), -1) == ZERO


def test_powers_of_zero_space():
    assert sym_power(ZERO, 0) == ONE
    assert ext_power(ZERO, 0) == ONE
    assert sym_power(ZERO, 2) == ZERO


def test_evaluate():
    for g in range(4):
        assert evaluate(G({0: 1, 1: g}), "euler") == 1 - g
    assert evaluate(G({0: 1, 1: 2, 2: 1}), "total") == 4
    assert evaluate(ZERO, "euler") == 0
    with pytest.raises(ValueError):
        evaluate(ONE, "middle")


def test_gen_binomial_negative_argument():
    assert gen_binomial(-1, 3) == -1
    assert gen_binomial(-2, 2) == 3
    assert gen_binomial(5, 2) == 10
    assert gen_binomial(2, 5) == 0
    assert gen_binomial(7, -1) == 0


@settings(max_examples=150)
@given(graded_dims(), graded_dims(), graded_dims())
def test_ring_laws(a, b, c):
    assert tensor(a, b) == tensor(b, a)
    assert tensor(tensor(a, b), c) == tensor(a, tensor(b, c))
    assert direct_sum(a, b) == direct_sum(b, a)
    assert tensor(a, direct_sum(b, c)) == direct_sum(tensor(a, b), tensor(a, c))
    assert tensor(a, ONE) == a
    assert direct_sum(a, ZERO) == a


def _ordinary_ext_of_odd(odd: GradedDim, j: int) -> GradedDim:
    # parity shift: move odd classes to even degree, take the exterior power
    # there, then move every factor back
    return shift(ext_power(shift(odd, 1), j), -j)


def _ordinary_sym_of_odd(odd: GradedDim, j: int) -> GradedDim:
    return shift(sym_power(shift(odd, 1), j), -j)


@settings(max_examples=150)
@given(graded_dims(), st.integers(0, 5))
def test_two_characterisations_agree(a, k):
    ev, od = even_part(a), odd_part(a)
    sym = ZERO
    ext = ZERO
    for i in range(k + 1):
        sym = direct_sum(sym, tensor(sym_power(ev, i), _ordinary_ext_of_odd(od, k - i)))
        ext = direct_sum(ext, tensor(ext_power(ev, i), _ordinary_sym_of_odd(od, k - i)))
    assert sym_power(a, k) == sym
    assert ext_power(a, k) == ext


@settings(max_examples=200)
@given(graded_dims(), st.integers(0, 6))
def test_euler_binomial_identities(a, k):
    chi = evaluate(a, "euler")
    assert evaluate(sym_power(a, k), "euler") == gen_binomial(chi + k - 1, k)
    assert evaluate(ext_power(a, k), "euler") == gen_binomial(chi, k)


@given(graded_dims(), st.integers(0, 5))
def test_duality_commutes_with_powers(a, k):
    assert ext_power(dual(a), k) == dual(ext_power(a, k))
    assert sym_power(dual(a), k) == dual(sym_power(a, k))


@given(graded_dims(lo=-2, hi=2).map(even_part), st.integers(0, 5))
def test_even_total_dimension(a, k):
    n = evaluate(a, "total")
    assert evaluate(sym_power(a, k), "total") == gen_binomial(n + k - 1, k)
    assert evaluate(ext_power(a, k), "total") == gen_binomial(n, k)


@given(graded_dims(), st.integers(-1, 5))
def test_no_zero_coefficients_ever(a, k):
    for out in (sym_power(a, k), ext_power(a, k), tensor(a, a), dual(a), shift(a, k)):
        assert all(v > 0 for v in out.values())


@given(graded_dims())
def test_json_round_trip(a):
    assert GradedDim.from_json(a.to_json()) == a


def test_from_json_rejects_bad_keys():
    for bad in ({"x": 1}, {"01": 1}, {"1": 1.5}, {"1": True}):
        with pytest.raises(ValueError):
            GradedDim.from_json(bad)


def test_poincare_string():
    assert poincare_string(G({0: 1, 1: 2, 2: 1})) == "1 + 2q + q^2"
    assert poincare_string(ZERO) == "0"
    assert poincare_string(G({-1: 3, 12: 1})) == "3q^{-1} + q^{12}"
