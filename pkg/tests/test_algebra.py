from fractions import Fraction

import pytest
from hypothesis import given

from mixed_tate.algebra import (
    ONE,
    ZERO,
    CdgaElement,
    augmentation,
    differential,
    product,
    rho,
    rho_generator,
    scalar,
    unit,
)
from strategies import cdga_elements, monomials


def test_rho_1_is_the_unit_one_minus_a():
    assert rho(1, "a") == unit("1 - a")
    assert rho(1, "1/3") == unit("2/3")


def test_differential_of_rho():
    assert differential(rho(3, "a")) == -(unit("a") * rho(2, "a"))
    assert differential(rho(2, "a")) == -(unit("a") * unit("1 - a"))
    assert differential(unit("a")) == ZERO


def test_odd_generators_square_to_zero_and_anticommute():
    assert unit("a") * unit("a") == ZERO
    assert unit("a") * rho(2, "a") == -(rho(2, "a") * unit("a"))


def test_degenerate_units_rejected():
    with pytest.raises(ValueError):
        unit(0)
    with pytest.raises(ValueError):
        unit(1)
    with pytest.raises(ValueError):
        rho_generator(2, 1)
    with pytest.raises(ValueError):
        rho(0, "a")


def test_bidegrees():
    z = unit("b") * rho(3, "a")
    assert z.bidegrees() == {(4, 2)}
    assert (z.adams, z.coh) == (4, 2)
    with pytest.raises(ValueError):
        (z + unit("a")).coh


def test_augmentation_and_scalars():
    assert augmentation(scalar(3) + unit("a")) == Fraction(3)
    assert ONE * rho(2, "a") == rho(2, "a")
    assert 2 * unit("a") == unit("a") + unit("a")


@given(cdga_elements())
def test_d_squared_vanishes(z):
    assert not differential(differential(z))


@given(monomials(), cdga_elements())
def test_leibniz(x, y):
    p = x.coh
    assert differential(product(x, y)) == product(differential(x), y) + product(x, differential(y)) * (-1) ** p


@given(monomials(), monomials())
def test_graded_commutativity(x, y):
    assert product(x, y) == product(y, x) * (-1) ** (x.coh * y.coh)


@given(cdga_elements(), cdga_elements(), cdga_elements())
def test_associativity(x, y, z):
    assert product(product(x, y), z) == product(x, product(y, z))


def test_equality_with_scalars_and_hash():
    assert scalar(2) == 2
    assert hash(CdgaElement({(): 1})) == hash(ONE)
