"""Hypothesis strategies for cdga elements, bar words and cube coordinates."""

from hypothesis import strategies as st

from mixed_tate.algebra import ONE, rho, unit
from mixed_tate.bar import BarElement

SYMBOLS = ["a", "b"]


def generators():
    return st.one_of(
        st.builds(unit, st.sampled_from(SYMBOLS + ["c", "3", "1/5"])),
        st.builds(rho, st.integers(2, 4), st.sampled_from(SYMBOLS)),
    )


@st.composite
def monomials(draw, max_gens=3):
    z = ONE
    for g in draw(st.lists(generators(), min_size=1, max_size=max_gens)):
        if z * g:
            z = z * g
    return z


@st.composite
def cdga_elements(draw, max_terms=3):
    z = draw(monomials())
    for _ in range(draw(st.integers(0, max_terms - 1))):
        z = z + draw(monomials()) * draw(st.sampled_from([1, -1, 2]))
    return z


@st.composite
def letters(draw):
    """A nonzero homogeneous-or-not letter of positive Adams degree."""
    z = draw(monomials(max_gens=2))
    if not z:
        z = draw(generators())
    return z * draw(st.sampled_from([1, -1, 3]))


@st.composite
def bar_words(draw, max_len=4):
    return BarElement.word(*draw(st.lists(letters(), max_size=max_len)))


@st.composite
def homogeneous_words(draw, max_len=3):
    """A single basis word with coefficient, so its degree is defined."""
    x = draw(bar_words(max_len))
    if not x:
        return BarElement.unit()
    (key, c), = list(x.items())[:1]
    return BarElement({key: c})
