from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motivekit.algebra import (
    ONE,
    ZERO,
    Polynomial,
    RationalProduct,
    binom_nonzero_mod_p,
    divmod_poly,
    exact_div,
    expand_rational_product,
    floor_log2,
    is_palindromic,
    p_valuation,
    substitute_power,
    t_power_minus_one,
    t_power_plus_one,
)
from motivekit.errors import NotDivisible

P = lambda *c: Polynomial(tuple(c))  # noqa: E731

polys = st.lists(st.integers(-20, 20), max_size=8).map(lambda c: Polynomial(tuple(c)))
nonzero_polys = polys.filter(lambda p: p != ZERO)


def test_canonical_form_strips_trailing_zeros():
    assert P(1, 2, 0, 0) == P(1, 2)
    assert P(0, 0) == ZERO
    assert ZERO.degree == -1
    assert P(0, 0, 3).degree == 2


def test_arithmetic_and_str():
    t = P(0, 1)
    assert (t + 1) * (t + 1) == P(1, 2, 1)
    assert (t + 1) ** 3 == P(1, 3, 3, 1)
    assert t - t == ZERO
    assert str(P(1, 2, 1)) == "1 + 2*t + t^2"
    assert str(P(0, -1, 0, 1)) == "-t + t^3"
    assert str(ZERO) == "0"
    assert P(1, 2, 1).to_json() == {"coeffs": [1, 2, 1]}
    assert P(1, 1, 1)(2) == 7


def test_expand_solomon_a2():
    rp = RationalProduct(num_minus=[2, 3], den_minus=[1, 1])
    assert expand_rational_product(rp) == P(1, 2, 2, 1)


def test_expand_outer_a3():
    rp = RationalProduct(num_minus=[2, 4], num_plus=[3], den_minus=[1, 1], den_plus=[1])
    assert expand_rational_product(rp) == P(1, 1, 1, 2, 1, 1, 1)


def test_expand_empty():
    assert expand_rational_product(RationalProduct()) == ONE


def test_rational_product_rejects_bad_exponent():
    with pytest.raises(ValueError):
        RationalProduct(num_minus=[0])


def test_expand_not_divisible():
    with pytest.raises(NotDivisible):
        expand_rational_product(RationalProduct(num_plus=[2], den_plus=[1]))


def test_expand_times_denominator_is_numerator():
    rp = RationalProduct(num_minus=[2, 4, 6], num_plus=[4], den_minus=[1, 1, 1], den_plus=[1])
    assert expand_rational_product(rp) * rp.denominator() == rp.numerator()


def test_exact_div_examples():
    assert exact_div(t_power_minus_one(2), P(-1, 1)) == P(1, 1)
    num = P(1, 0, 0, 0, 1, 0, 0, 0, 1)
    q = exact_div(num, P(1, 1, 1))
    assert q == P(1, -1, 0, 1, 0, -1, 1)
    assert q * P(1, 1, 1) == num
    with pytest.raises(NotDivisible):
        exact_div(t_power_plus_one(2), P(1, 1))


def test_exact_div_by_zero():
    with pytest.raises(ZeroDivisionError):
        exact_div(ONE, ZERO)


def test_divmod_remainder():
    q, r = divmod_poly(t_power_plus_one(2), P(1, 1))
    assert q * P(1, 1) + r == t_power_plus_one(2)
    assert r == P(2)


def test_substitute_power_examples():
    assert substitute_power(P(1, 1, 1), 2) == P(1, 0, 1, 0, 1)
    assert substitute_power(P(3, 1, 4), 1) == P(3, 1, 4)
    assert substitute_power(ONE, 5) == ONE


def test_palindromic_examples():
    # the coefficient list 1,2,2,1 reads the same reversed
    assert is_palindromic(P(1, 2, 2, 1))
    assert not is_palindromic(P(1, 2, 2))
    assert is_palindromic(P(1, 2, 1))
    assert is_palindromic(P(1, 1, 1, 2, 1, 1, 1))
    assert is_palindromic(ZERO)


def test_p_valuation_examples():
    assert p_valuation(8, 2) == 3
    assert p_valuation(12, 2) == 2
    assert p_valuation(7, 2) == 0
    assert p_valuation(54, 3) == 3


def test_binom_examples():
    assert binom_nonzero_mod_p(3, 2, 2)
    assert not binom_nonzero_mod_p(4, 2, 2)
    assert not binom_nonzero_mod_p(5, 2, 2)
    assert not binom_nonzero_mod_p(3, 5, 2)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_binom_matches_math_comb(p):
    for n in range(65):
        for k in range(65):
            assert binom_nonzero_mod_p(n, k, p) == (math.comb(n, k) % p != 0), (n, k, p)


def test_floor_log2():
    assert floor_log2(5) == 2
    assert floor_log2(10, 3) == 1
    assert floor_log2(10, 7) == 0
    assert floor_log2(8) == 3
    with pytest.raises(ValueError):
        floor_log2(1, 2)


@given(polys, nonzero_polys)
def test_exact_div_round_trip(p, q):
    assert exact_div(p * q, q) == p


@given(polys, st.integers(1, 5), st.integers(-4, 4))
def test_substitute_power_evaluates(p, m, x):
    assert substitute_power(p, m)(x) == p(x**m)


@settings(max_examples=60)
@given(
    st.lists(st.integers(1, 8), max_size=4),
    st.lists(st.integers(1, 6), max_size=3),
)
def test_solomon_shapes_expand(minus, plus):
    rp = RationalProduct(
        num_minus=minus, num_plus=plus, den_minus=[1] * len(minus), den_plus=[1] * len(plus)
    )
    # -1 is a simple root of t^a + 1 for odd a and of t^a - 1 for even a
    roots_at_minus_one = sum(a % 2 for a in plus) + sum(1 - a % 2 for a in minus)
    if roots_at_minus_one >= len(plus):
        q = expand_rational_product(rp)
        assert q * rp.denominator() == rp.numerator()
    else:
        with pytest.raises(NotDivisible):
            expand_rational_product(rp)
