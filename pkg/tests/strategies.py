"""Hypothesis strategies shared by the property tests."""

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from starplane.scalars import GaussianRational
from starplane.star import Symbol
from starplane.weyl import NCPoly

# fixed seed, 1000 examples per property
THOROUGH = settings(max_examples=1000, derandomize=True, deadline=None,
                    suppress_health_check=[HealthCheck.too_slow])
QUICK = settings(max_examples=100, derandomize=True, deadline=None)

small_ints = st.integers(min_value=-3, max_value=3)
coeffs = st.builds(GaussianRational, small_ints, small_ints).filter(bool)


def words(letters=(0, 1, 2, 3), max_len=8):
    return st.lists(st.sampled_from(letters), max_size=max_len).map(tuple)


@st.composite
def ncpolys(draw, letters=(0, 1, 2, 3), max_len=8, max_terms=3):
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        key = (draw(st.integers(0, 2)), draw(st.integers(-1, 1)), draw(words(letters, max_len)))
        terms[key] = draw(coeffs)
    return NCPoly(terms)


@st.composite
def inverse_ncpolys(draw, max_len=8):
    """NCPolys with at least one inverse letter."""
    p = draw(ncpolys(max_len=max_len - 1))
    w = draw(words(max_len=max_len - 1))
    w = w + (draw(st.sampled_from((2, 3))),)
    return p + NCPoly.word(w, draw(coeffs))


@st.composite
def laurent_symbols(draw, lo=-2, hi=3, max_terms=3):
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        a, b = draw(st.integers(lo, hi)), draw(st.integers(lo, hi))
        terms[(0, a, b)] = draw(coeffs)
    return Symbol(terms)


@st.composite
def polynomial_symbols(draw, max_deg=4, max_terms=4):
    return draw(laurent_symbols(0, max_deg, max_terms))


@st.composite
def holomorphic_symbols(draw, max_deg=5):
    terms = {(0, draw(st.integers(0, max_deg)), 0): draw(coeffs) for _ in range(draw(st.integers(1, 3)))}
    return Symbol(terms)


rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4).map(Fraction)
