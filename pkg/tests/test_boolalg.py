import pytest
from hypothesis import given, strategies as st

from lfiswap.boolalg import (MixedAlgebraError, big_join, big_meet, compl, imp, join, meet,
                             powerset_algebra, two)

A3 = powerset_algebra(3)
els = st.integers(0, 7).map(A3.from_bits)


def test_sizes():
    assert len(two()) == 2
    assert [len(powerset_algebra(n)) for n in range(5)] == [1, 2, 4, 8, 16]


def test_degenerate_algebra_has_top_equal_bottom():
    A = powerset_algebra(0)
    assert A.top == A.bottom
    assert list(A) == [A.bottom]


def test_cap():
    with pytest.raises(ValueError):
        powerset_algebra(17)
    assert len(powerset_algebra(17, cap=17)) == 1 << 17


def test_small_examples():
    A = two()
    assert imp(A.top, A.bottom) == A.bottom
    B = powerset_algebra(2)
    assert meet(B.element([0]), B.element([1])) == B.bottom
    assert compl(B.top) == B.bottom
    assert big_meet([], B) == B.top
    assert big_join([], B) == B.bottom
    assert big_meet([B.element([0]), B.element([0, 1])]) == B.element([0])
    assert big_join([B.bottom, B.top]) == B.top


def test_mixed_algebras_rejected():
    with pytest.raises(MixedAlgebraError):
        join(two().top, powerset_algebra(2).top)
    with pytest.raises(MixedAlgebraError):
        big_meet([two().top, powerset_algebra(2).top])


def test_json():
    B = powerset_algebra(3)
    x = B.element([2, 0])
    assert x.to_json() == [0, 2]
    assert B.to_json() == {"type": "powerset", "atoms": 3}
    assert type(B).from_json(B.to_json()) == B
    assert B.element(x.to_json()) == x


@given(els, els, els)
def test_boolean_algebra_laws(x, y, z):
    assert x & (y | z) == (x & y) | (x & z)
    assert x | (y & z) == (x | y) & (x | z)
    assert ~(x & y) == ~x | ~y
    assert ~(x | y) == ~x & ~y
    assert (x | ~x).is_top and (x & ~x).is_bottom
    assert ~~x == x


@given(st.lists(els, min_size=1, max_size=5))
def test_big_ops_agree_with_folds(xs):
    m, j = xs[0], xs[0]
    for x in xs[1:]:
        m, j = m & x, j | x
    assert big_meet(xs) == m
    assert big_join(xs) == j


@given(els, els)
def test_imp_is_top_iff_below(x, y):
    assert imp(x, y).is_top == (x <= y)
    assert (x <= y) == (x.bits & ~y.bits == 0)
