from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rcanon.expr import (ZERO, Dummy, Free, IndexOrder, NamedDummy, RFactor,
                         combine_like_terms, compare_monic, factor_prenormal)

from conftest import M, P


def F(s):
    return RFactor(tuple(s))


a, b, c, d = (Free(x) for x in "abcd")
d1, d2, d5 = NamedDummy("d1"), NamedDummy("d2"), NamedDummy("d5")


@pytest.mark.parametrize("factor, expected", [
    (F((b, a, c, d)), (-1, F((a, b, c, d)))),
    (F((c, d, a, b)), (1, F((a, b, c, d)))),
    (F((d1, d5, d2, a)), (-1, F((a, d2, d1, d5)))),
])
def test_factor_prenormal(factor, expected):
    assert factor_prenormal(factor) == expected


def test_factor_prenormal_repeated_index_in_pair():
    assert factor_prenormal(F((a, a, b, c))) is ZERO
    assert factor_prenormal(F((d1, d2, d5, d5))) is ZERO


def test_index_order_classes():
    order = IndexOrder()
    assert order.key(Free("z")) < order.key(Dummy(1)) < order.key(Dummy(2)) < order.key(NamedDummy("a"))


def test_index_order_custom_free_sequence():
    order = IndexOrder(["c", "a"])
    keys = [order.key(Free(n)) for n in ("c", "a", "b")]
    assert keys == sorted(keys)


@pytest.mark.parametrize("m1, m2, expected", [
    (M("12,34", "12,34"), M("12,34", "13,24"), -1),
    (M("a1,23"), M("a1,23"), 0),
    (M("b4,25"), M("a1,23"), 1),
])
def test_compare_monic(m1, m2, expected):
    assert compare_monic(m1, m2) == expected


def test_compare_ignores_coefficient():
    assert compare_monic(M("12,34", coeff=5), M("12,34", coeff=-1)) == 0


def test_combine_halves():
    x = M("12,34", "13,24")
    assert combine_like_terms(P(x.scaled(Fraction(1, 2)), x.scaled(Fraction(1, 2)))) == P(x)


def test_combine_cancels_to_empty():
    x = M("12,34", "13,24")
    out = combine_like_terms(P(x, x.scaled(-1)))
    assert out.is_zero() and len(out) == 0


def test_combine_sorts_ascending():
    x1, x2 = M("12,34", "12,34"), M("12,34", "13,24")
    assert combine_like_terms(P(x2, x1)).terms == (x1, x2)


def test_zero_is_falsy_singleton():
    import pickle

    assert not ZERO
    assert pickle.loads(pickle.dumps(ZERO)) is ZERO


def test_integer_dummy_must_be_positive():
    with pytest.raises(ValueError):
        Dummy(0)


def test_monomial_helpers():
    m = M("a1,b1", coeff=-3)
    assert m.degree == 1
    assert m.monic().coeff == 1
    assert m.scaled(2).coeff == -6
    assert {f.name for f in m.free_indices()} == {"a", "b"}


_idx = st.sampled_from([Free("a"), Free("b"), Dummy(1), Dummy(2), NamedDummy("x"), NamedDummy("y")])


@given(st.lists(_idx, min_size=4, max_size=4, unique=True))
def test_factor_prenormal_is_prenormal_and_idempotent(slots):
    s, f = factor_prenormal(F(slots))
    assert f.is_prenormal()
    assert factor_prenormal(f) == (1, f)
