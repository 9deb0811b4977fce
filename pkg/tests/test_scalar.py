import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadid.scalar import ONE, ZERO, LaurentScalar, NotDivisible, q

from conftest import scalars


def test_distributes_over_q():
    assert (q(1) - q(-1)) * q(1) == q(2) - 1


def test_additive_identity():
    a = LaurentScalar({-2: 3, 5: -1})
    assert a + 0 == a
    assert a + ZERO == a


def test_exponents_cancel():
    assert q(3) * q(-3) == ONE
    assert q(3) * q(-3) == 1


def test_zero_is_canonical():
    a = LaurentScalar({1: 2, 2: 0})
    assert a.terms == {1: 2}
    assert (a - a).is_zero()
    assert (a - a).terms == {}
    assert LaurentScalar([(3, 1), (3, -1)]).is_zero()


@pytest.mark.parametrize("a", range(-10, 11))
@pytest.mark.parametrize("b", range(-10, 11))
def test_q_powers_multiply(a, b):
    assert q(a) * q(b) == q(a + b)


def test_text_form():
    assert str(q(2) - 1) == "-1 + q^2"
    assert str(ZERO) == "0"
    assert str(LaurentScalar({-1: 1, 0: -3, 4: 2})) == "q^-1 - 3 + 2*q^4"


@given(scalars)
def test_text_round_trip(a):
    assert LaurentScalar.parse(str(a)) == a


@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(scalars, scalars)
def test_exact_divide_round_trip(a, b):
    if b.is_zero():
        return
    assert (a * b).exact_divide(b) == a


def test_arbitrary_precision():
    from math import comb

    big = (q(1) - q(-1)) ** 40
    # q^0 coefficient: k = 20 in sum C(40,k) q^k (-q^-1)^(40-k)
    assert big.terms[0] == comb(40, 20)
    assert big.terms[40] == 1 and big.terms[-40] == 1
    assert big.terms[2] == -comb(40, 21)


def test_not_divisible():
    with pytest.raises(NotDivisible):
        (q(1) + 1).exact_divide(LaurentScalar({0: 2}))
    with pytest.raises(NotDivisible):
        q(2).exact_divide(q(1) + 1)
    with pytest.raises(ZeroDivisionError):
        q(1).exact_divide(ZERO)


def test_units():
    assert q(-3).is_unit() and (-q(2)).is_unit()
    assert not LaurentScalar({0: 2}).is_unit()
    assert q(2) ** -1 == q(-2)
    with pytest.raises(NotDivisible):
        (q(1) + 1) ** -1


def test_immutable_values_hash():
    a = q(1) + 1
    assert hash(a) == hash(LaurentScalar({0: 1, 1: 1}))
    assert {a: 1}[LaurentScalar({1: 1, 0: 1})] == 1
