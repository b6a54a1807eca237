from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from mixed_tate import chains as ch
from mixed_tate import periods as pd


def test_closed_forms_at_one_half():
    with mpmath.workprec(200):
        assert abs(pd.li(1, "1/2", 160) - mpmath.log(2)) < mpmath.mpf(2) ** -150
        want = mpmath.pi ** 2 / 12 - mpmath.log(2) ** 2 / 2
        assert abs(pd.li(2, "1/2", 160) - want) < mpmath.mpf(2) ** -150


@given(st.integers(1, 6), st.fractions(min_value="-9/10", max_value="9/10", max_denominator=50))
def test_series_matches_mpmath(k, q):
    if q == 0:
        return
    got = pd.li(k, f"{q.numerator}/{q.denominator}", 128)
    with mpmath.workprec(160):
        want = mpmath.polylog(k, mpmath.mpf(q.numerator) / q.denominator)
        assert abs(got - want) <= mpmath.mpf(2) ** -120 * max(1, abs(want))


def test_li_rejects_outside_disk():
    with pytest.raises(ValueError):
        pd.li(2, 2)
    with pytest.raises(ValueError):
        pd.li(2, "1/2", prec=32)


@pytest.mark.parametrize("k", range(1, 5))
@pytest.mark.parametrize("a", ["1/4", "1/2", "3/4"])
def test_iterated_integral_is_li(k, a):
    x = float(Fraction(a))
    assert abs(pd.iterated_quadrature(k, x) - float(pd.li(k, a).real)) < 1e-9


def test_i_map_values():
    with mpmath.workprec(160):
        two_pi_i = 2j * mpmath.pi
        v = pd.I_map(ch.eta(2, 0, "1/2"))
        assert abs(v + pd.li(2, "1/2") / two_pi_i ** 2) < 1e-30
        assert pd.I_map(ch.eta(3, 1, "1/2")) == 0
        p2 = pd.I_map(ch.path_power(2, "1/2"))
        assert abs(p2 - (mpmath.log(0.5) / two_pi_i) ** 2) < 1e-15


def test_i_map_on_scalars_and_products():
    assert pd.I_map(ch.ONE * 3) == 3
    x = ch.circ(ch.eta(2, 0, "1/2"), ch.path_power(1, "1/2"))
    with mpmath.workprec(160):
        want = pd.I_map(ch.eta(2, 0, "1/2")) * pd.I_map(ch.path_power(1, "1/2"))
        assert abs(pd.I_map(x) - want) < 1e-30


def test_i_map_rejects_positive_degree():
    with pytest.raises(pd.DegreeError):
        pd.I_map(ch.ChainElement.of(ch.face_symbol(3, 1, "1/2")))


def test_path_changes_only_the_log():
    around = pd.PathSpec("1/2", via=("1j", "-1", "-1j"))
    default = pd.default_path("1/2")
    with mpmath.workprec(160):
        diff = around.log() - default.log()
        assert abs(diff - 2j * mpmath.pi) < 1e-30


def test_path_through_zero_rejected():
    with pytest.raises(ValueError):
        pd.PathSpec("1/2", via=("-1",)).log()


def test_cauchy_stokes():
    rep = pd.cauchy_stokes_demo("1/2")
    assert rep.ok and abs(rep.residual) < 1e-25
