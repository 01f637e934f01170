import pytest
from hypothesis import given, strategies as st

from hasse_witt.arith import INF, hilbert_symbol
from hasse_witt.galois_coh import BrauerClass, SquareClass, br_add, cup, parse_brauer, relevant_places, sq_mul

nonzero = st.integers(-300, 300).filter(lambda x: x != 0)


def test_cup_examples():
    assert cup(SquareClass(-1), SquareClass(-1)) == BrauerClass((2, INF))
    assert cup(SquareClass(2), SquareClass(3)) == BrauerClass((2, 3))
    assert cup(SquareClass(1), SquareClass(7)) == BrauerClass()


def test_square_class_product():
    assert SquareClass(-5) * SquareClass(10) == SquareClass(-2)
    assert sq_mul(SquareClass(3), SquareClass(3)) == SquareClass(1)
    assert SquareClass.of(12) == SquareClass(3)


def test_brauer_class_needs_even_support():
    with pytest.raises(ValueError):
        BrauerClass((2,))


def test_brauer_addition_is_symmetric_difference():
    x, y = BrauerClass((2, 3)), BrauerClass((3, 5))
    assert br_add(x, y) == BrauerClass((2, 5))
    assert br_add(x, x) == BrauerClass()


def test_rendering_and_parse():
    assert str(BrauerClass((3, 2))) == "{2,3}"
    assert str(BrauerClass()) == "{}"
    assert str(SquareClass(-3)) == "⟨-3⟩"
    assert parse_brauer("inf,2") == BrauerClass((2, INF))
    assert parse_brauer("") == BrauerClass()


@given(nonzero, nonzero)
def test_cup_matches_local_symbols(a, b):
    x = cup(SquareClass.of(a), SquareClass.of(b))
    for v in relevant_places(a, b, 7, 11):
        assert (v in x.ramified) == (hilbert_symbol(a, b, v) == -1)
    assert len(x.ramified) % 2 == 0


@given(nonzero, nonzero, nonzero)
def test_cup_bilinear_and_symmetric(a, b, c):
    A, B, C = (SquareClass.of(t) for t in (a, b, c))
    assert cup(A * B, C) == br_add(cup(A, C), cup(B, C))
    assert cup(A, B) == cup(B, A)


@given(nonzero)
def test_cup_square_is_cup_with_minus_one(a):
    A = SquareClass.of(a)
    assert cup(A, A) == cup(A, SquareClass(-1))
