import math
import warnings
from fractions import Fraction

import pytest

from mixed_tate import comodule as cm
from mixed_tate import polylog
from mixed_tate.algebra import rho, unit
from mixed_tate.bar import BarElement, bar_d


def test_li_word_examples():
    assert polylog.li_word(1, "a") == BarElement.word(unit("1 - a"))
    assert polylog.li_word(2, "a") == BarElement.word(rho(2, "a")) + BarElement.word(unit("a"), rho(1, "a"))


@pytest.mark.parametrize("k", range(1, 7))
def test_li_words_are_cocycles(k):
    assert not bar_d(polylog.li_word(k, "a"))


def test_m1_is_kummer_of_one_minus_a():
    assert polylog.build(1, "a").as_comodule.coaction == cm.kummer("1 - a").coaction


@pytest.mark.parametrize("k", range(1, 7))
def test_build(k):
    M = polylog.build(k, "a")
    assert M.as_comodule.dim == k + 1
    assert M.as_comodule.adams == [-j for j in range(k + 1)]
    assert cm.check_axioms(M.as_comodule).ok
    assert polylog.li_entries_match(M)


def test_coaction_of_e_minus_1_in_m2():
    V = polylog.build(2, "a").as_comodule
    assert V.entry("e-1", "e-1") == BarElement.unit()
    assert V.entry("e-1", "e-2") == BarElement.word(unit("a"))
    assert V.entry("e-1", "e0") == BarElement()


@pytest.mark.parametrize("k", range(1, 7))
def test_extension_structure(k):
    rep = polylog.check_extension_structure(polylog.build(k, "a"))
    assert rep.ok, rep.failures
    # e_{-q-1} = f_0^{k-1-q} f_{-1}^q / (k-1-q)!
    expected = [Fraction(1, math.factorial(k - 1 - q)) for q in range(k)]
    expected[-1] = Fraction(1)
    assert rep.factors == expected


def test_extension_small_cases():
    r1 = polylog.check_extension_structure(polylog.build(1, "a"))
    assert r1.sub_ok and r1.quotient_ok and r1.factors == [1]
    r2 = polylog.check_extension_structure(polylog.build(2, "a"))
    assert r2.factors == [1, 1]


def test_dependent_argument_warns():
    with pytest.warns(polylog.DependenceWarning):
        M = polylog.build(2, "1/2")
    assert M.dependent
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert not polylog.build(2, "2/3").dependent
    assert not polylog.build(2, "a").dependent


def test_invalid_arguments():
    for bad in (0, 1):
        with pytest.raises(ValueError):
            polylog.build(2, bad)
    with pytest.raises(ValueError):
        polylog.li_word(0, "a")


def test_truncation_is_m_j():
    M = polylog.build(4, "a")
    assert polylog.truncation(M, 2).coaction == polylog.build(2, "a").as_comodule.coaction
