"""Worked examples with independently known answers, one test per example."""

import mpmath
import pytest
import sympy

from mixed_tate import chains as ch
from mixed_tate import cycle_faces as cf
from mixed_tate import hodge, periods
from mixed_tate.algebra import ONE, augmentation, differential, rho, unit
from mixed_tate.bar import BarElement, Tensor, bar_d, coproduct, is_cocycle, shuffle


def _key(x: BarElement):
    (k,) = x.terms
    return k


def test_d_of_b_times_rho2():
    z = unit("b") * rho(2, "a")
    assert differential(z) == unit("b") * unit("a") * rho(1, "a")


def test_augmentation_of_rho2():
    assert augmentation(rho(2, "a")) == 0


def test_product_with_one():
    assert ONE * rho(3, "a") == rho(3, "a")


def test_bar_d_of_rho2_alone():
    assert bar_d(BarElement.word(rho(2, "a"))) == BarElement.word(unit("a") * rho(1, "a"))
    assert not bar_d(BarElement.unit())
    assert is_cocycle(BarElement.unit())


def test_shuffle_of_two_letters():
    x, y = unit("a"), rho(2, "b")
    assert shuffle(BarElement.word(x), BarElement.word(y)) == BarElement.word(x, y) + BarElement.word(y, x)
    assert shuffle(BarElement.word(x), BarElement.word(x)) == BarElement.word(x, x, coeff=2)


def test_coproduct_of_two_letter_word():
    x, y = unit("a"), unit("b")
    e, X, Y, XY = (_key(w) for w in (BarElement.unit(), BarElement.word(x), BarElement.word(y), BarElement.word(x, y)))
    assert coproduct(BarElement.word(x, y)) == Tensor({(e, XY): 1, (X, Y): 1, (XY, e): 1}, 2)
    assert coproduct(BarElement.unit()) == Tensor({(e, e): 1}, 2)


def test_rho_cycle_shapes():
    C3 = cf.rho_cycle(3, "a")
    (r,) = C3.reps
    assert r.coeff == -1 and r.n == 5
    (r2,) = cf.rho_cycle(2, "a").reps
    assert r2.coeff == -1 and r2.n == 3
    assert not cf.alt_equal(cf.rho_cycle(2, "a"), cf.rho_cycle(2, "b"))


def test_faces_of_rho2_by_hand():
    C = cf.rho_cycle(2, "a")
    assert cf.alt_equal(cf.face(C, 3, 0), cf.point("a", "1 - a") * -1)
    assert cf.face(C, 2, 0).is_zero()
    assert cf.boundary(cf.rho_cycle(1, "a")).is_zero()


def test_alt_swap_sign():
    assert cf.alt_equal(cf.point("a", "b"), cf.point("b", "a") * -1)
    assert cf.point("a", "a").is_zero()


def test_chain_examples():
    assert not ch.chain_d(ch.ONE)
    x = ch.eta(3, 1, "a")
    assert ch.circ(ch.ONE, x) == x
    # degree-0 symbols commute under o at the level of the integration map
    y = ch.path_power(2, "1/2")
    z = ch.eta(2, 0, "1/2")
    assert abs(periods.I_map(ch.circ(y, z)) - periods.I_map(ch.circ(z, y))) < 1e-30


def test_smallest_z_and_l():
    e = ch.z_and_l_elements(1, "a")
    assert e["Z"] == {0: ch.ONE, 1: ch.xi(1, "a")}
    assert e["L"] == [{1: ch.ONE}]


def test_li_values():
    with mpmath.workprec(160):
        assert abs(periods.li(1, "1/2") - mpmath.mpf("0.693147180559945309417232121458")) < 1e-28
        assert abs(periods.li(2, "1/2") - (mpmath.pi ** 2 / 12 - mpmath.log(2) ** 2 / 2)) < 1e-28
    assert periods.li(3, 0) == 0


@pytest.mark.parametrize("k,a", [(1, 0.5), (2, 0.5), (2, 0.25)])
def test_quadrature_examples(k, a):
    assert abs(periods.iterated_quadrature(k, a) - float(periods.li(k, a).real)) < 1e-9


def test_cauchy_stokes_radius_zero_rejected():
    with pytest.raises(ValueError):
        periods.cauchy_stokes_demo(0)


@pytest.mark.parametrize("u", ["1/2", "3/4"])
def test_regulator_value(u):
    rep = hodge.regulator_r1(u)
    assert abs(rep.period - mpmath.log(float(sympy.Rational(u)))) < 1e-12
