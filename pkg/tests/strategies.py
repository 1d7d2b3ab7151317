from fractions import Fraction

from hypothesis import strategies as st

from merodiff.algebra import MPoly, tp, w, x, y

VARS = [x(), y(), w(1), w(2), tp(-2), tp(3)]

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def monomials(draw, laurent=True):
    lo = -2 if laurent else 0
    vs = draw(st.lists(st.sampled_from(VARS), max_size=3, unique=True))
    return {v: draw(st.integers(lo, 3)) for v in vs}


@st.composite
def mpolys(draw, laurent=True, max_terms=5):
    terms = draw(st.lists(st.tuples(monomials(laurent), rationals), max_size=max_terms))
    acc = MPoly()
    for mono, c in terms:
        acc = acc + MPoly.monomial(mono, c)
    return acc
