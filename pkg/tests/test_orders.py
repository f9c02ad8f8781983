"""Monomial order semantics: totality, multiplicativity, elimination."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from germlab import DEGREVLEX, LEX, LOCAL_DEGREVLEX, block_order, compare_monomials
from germlab.errors import PreconditionError
from germlab.orders import mono_mul

ORDERS = [LEX, DEGREVLEX, LOCAL_DEGREVLEX, block_order(1), block_order(2)]

exps3 = st.tuples(*(st.integers(min_value=0, max_value=6) for _ in range(3)))


def test_lex_x_beats_y():
    assert compare_monomials((1, 0), (0, 1), LEX) == 1


def test_reflexive_equal():
    assert compare_monomials((1, 0), (1, 0), LEX) == 0


def test_local_one_is_largest():
    # lower total degree wins under the local order
    assert compare_monomials((0,), (1,), LOCAL_DEGREVLEX) == 1
    assert compare_monomials((0, 0), (3, 1), LOCAL_DEGREVLEX) == 1


def test_degrevlex_classic():
    # x^2 > x*y > y^2 with x > y
    assert compare_monomials((2, 0), (1, 1), DEGREVLEX) == 1
    assert compare_monomials((1, 1), (0, 2), DEGREVLEX) == 1


def test_block_eliminates_front():
    order = block_order(1)
    # any monomial containing the front variable beats any that does not
    assert compare_monomials((1, 0, 0), (0, 5, 5), order) == 1


def test_arity_mismatch():
    with pytest.raises(PreconditionError):
        compare_monomials((1, 0), (1, 0, 0), LEX)


@pytest.mark.parametrize("order", ORDERS)
@given(a=exps3, b=exps3)
@settings(max_examples=60, deadline=None)
def test_total_antisymmetric(order, a, b):
    cab = compare_monomials(a, b, order)
    cba = compare_monomials(b, a, order)
    assert cab == -cba
    assert (cab == 0) == (a == b)


@pytest.mark.parametrize("order", ORDERS)
@given(a=exps3, b=exps3, c=exps3)
@settings(max_examples=60, deadline=None)
def test_transitive(order, a, b, c):
    if compare_monomials(a, b, order) >= 0 and compare_monomials(b, c, order) >= 0:
        assert compare_monomials(a, c, order) >= 0


@pytest.mark.parametrize("order", ORDERS)
@given(a=exps3, b=exps3, c=exps3)
@settings(max_examples=60, deadline=None)
def test_multiplicative(order, a, b, c):
    cab = compare_monomials(a, b, order)
    assert compare_monomials(mono_mul(a, c), mono_mul(b, c), order) == cab


@pytest.mark.parametrize("order", [LEX, DEGREVLEX, block_order(1)])
@given(a=exps3)
@settings(max_examples=30, deadline=None)
def test_global_orders_have_one_smallest(order, a):
    if a != (0, 0, 0):
        assert compare_monomials(a, (0, 0, 0), order) == 1


@given(a=exps3)
@settings(max_examples=30, deadline=None)
def test_local_order_has_one_largest(a):
    if a != (0, 0, 0):
        assert compare_monomials(a, (0, 0, 0), LOCAL_DEGREVLEX) == -1
