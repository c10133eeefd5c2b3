import cmath
import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fpp_certifier.exact_arith import (
    CyclotomicElement, cyc_eval_sum, cyc_inv_one_minus_zeta, is_prime, zeta_power,
)

PRIMES = [3, 5, 7, 11, 13]


def _elements(l):
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=6)
    return st.lists(coeff, min_size=l - 1, max_size=l - 1).map(lambda c: CyclotomicElement(l, c))


@pytest.mark.parametrize("l", PRIMES)
def test_inverse_sum_is_half_of_l_minus_1(l):
    s = sum((cyc_inv_one_minus_zeta(l, k) for k in range(1, l)), CyclotomicElement.zero(l))
    assert s.is_rational()
    assert s.to_rational() == Fraction(l - 1, 2)


@pytest.mark.parametrize("l", PRIMES)
def test_zeta_has_order_l(l):
    z = zeta_power(l, 1)
    assert z ** l == CyclotomicElement.one(l)
    assert all(z ** k != CyclotomicElement.one(l) for k in range(1, l))


@pytest.mark.parametrize("l", [3, 7])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_field_axioms(l, data):
    a, b, c = (data.draw(_elements(l)) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if not a.is_zero():
        assert a * a.inverse() == CyclotomicElement.one(l)
        assert (b / a) * a == b


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.data())
def test_complex_embedding_agrees(l, data):
    # floating point is an independent oracle for the exact value
    a, b = data.draw(_elements(l)), data.draw(_elements(l))
    assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-9


@pytest.mark.parametrize("l", [3, 5, 7])
def test_eval_sum_against_floating_point(l):
    w = cmath.exp(2j * cmath.pi / l)
    for eta in itertools.product(range(1, l), repeat=2):
        for xi in itertools.product(range(1, l), repeat=1):
            exact = complex(cyc_eval_sum(l, eta, xi))
            approx = sum(1 / (1 - w ** e) for e in eta) + sum(w ** x for x in xi)
            assert abs(exact - approx) < 1e-9


def test_eval_sum_rejects_non_units():
    with pytest.raises(ValueError):
        cyc_eval_sum(7, [0], [1])


def test_is_prime_small():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_order_must_be_odd_prime():
    with pytest.raises(ValueError):
        CyclotomicElement.zero(9)


def test_json_roundtrip_is_plain():
    e = cyc_inv_one_minus_zeta(5, 2)
    js = e.to_json()
    assert js["l"] == 5 and len(js["coefficients"]) == 4
