from fractions import Fraction

import pytest
from hypothesis import given

from mixed_tate.algebra import rho, unit
from mixed_tate.bar import (
    BarElement,
    bar_d,
    coproduct,
    coproduct_slot,
    counit,
    counit_slot,
    d_external,
    d_internal,
    is_cocycle,
    shuffle,
    shuffle_power,
    tensor_d,
    tensor_product,
)
from mixed_tate.properties import hopf_suite
from strategies import bar_words, homogeneous_words


@given(bar_words())
def test_d_squared(x):
    assert not bar_d(bar_d(x))


@given(bar_words())
def test_internal_external_anticommute(x):
    assert not (d_internal(d_external(x)) + d_external(d_internal(x)))


@given(bar_words())
def test_coassociative(x):
    t = coproduct(x)
    assert coproduct_slot(t, 0) == coproduct_slot(t, 1)


@given(bar_words())
def test_counit(x):
    t = coproduct(x)
    assert counit_slot(t, 0) == x
    assert counit_slot(t, 1) == x


@given(homogeneous_words(), bar_words())
def test_shuffle_leibniz(x, y):
    p = x.degrees().pop()
    assert bar_d(shuffle(x, y)) == shuffle(bar_d(x), y) + shuffle(x, bar_d(y)) * (-1) ** p


@given(homogeneous_words(), homogeneous_words())
def test_shuffle_graded_commutative(x, y):
    p, q = x.degrees().pop(), y.degrees().pop()
    assert shuffle(x, y) == shuffle(y, x) * (-1) ** (p * q)


@given(bar_words(3), bar_words(3), bar_words(2))
def test_shuffle_associative(x, y, z):
    assert shuffle(shuffle(x, y), z) == shuffle(x, shuffle(y, z))


@given(bar_words(3), bar_words(3))
def test_coproduct_multiplicative(x, y):
    assert coproduct(shuffle(x, y)) == tensor_product(coproduct(x), coproduct(y))


@given(bar_words())
def test_coproduct_is_a_chain_map(x):
    assert tensor_d(coproduct(x)) == coproduct(bar_d(x))


def test_unit_word():
    one = BarElement.unit()
    w = BarElement.word(unit("a"), rho(2, "a"))
    assert shuffle(one, w) == w
    assert counit(one) == 1 and counit(w) == 0


def test_shuffle_power_of_a_letter():
    a = BarElement.word(unit("a"))
    assert shuffle_power(a, 3) == BarElement.word(unit("a"), unit("a"), unit("a"), coeff=6)


def test_letters_need_positive_adams_degree():
    from mixed_tate.algebra import scalar

    with pytest.raises(ValueError):
        BarElement.word(scalar(1))


def test_is_cocycle_requires_degree_zero():
    with pytest.raises(ValueError):
        is_cocycle(BarElement.word(unit("a") * unit("b")))


def test_kummer_and_li2_words_are_cocycles():
    assert is_cocycle(BarElement.word(unit("a")))
    li2 = BarElement.word(rho(2, "a")) + BarElement.word(unit("a"), rho(1, "a"))
    assert is_cocycle(li2)
    assert not is_cocycle(BarElement.word(rho(2, "a")))


def test_bar_degree_counts_shifts():
    w = BarElement.word(unit("a") * unit("b"), rho(2, "a"))
    assert w.degrees() == {1}
    assert w.adams_degrees() == {4}


def test_seeded_suite_is_reproducible():
    r1, r2 = hopf_suite(20, seed=7), hopf_suite(20, seed=7)
    assert r1.ok and r1.failures == r2.failures


def test_coefficients_are_exact():
    w = BarElement.word(unit("a"), coeff=Fraction(1, 3)) * 3
    assert w == BarElement.word(unit("a"))
