"""Hypothesis strategies for monomial ideals and lattice polytopes."""
from hypothesis import strategies as st

from mixedmult.monomial import MonomialIdeal, RingContext


def exponent(n, max_exp=4):
    return st.tuples(*[st.integers(0, max_exp) for _ in range(n)])


@st.composite
def ideals(draw, n=None, max_exp=4, max_gens=4, nonzero=True, proper=True):
    n = n if n is not None else draw(st.integers(1, 3))
    gens = draw(st.lists(exponent(n, max_exp), min_size=1 if nonzero else 0, max_size=max_gens))
    if proper:
        gens = [g for g in gens if any(g)] or [tuple(int(i == 0) for i in range(n))]
    return MonomialIdeal(RingContext(n), gens)


@st.composite
def primary_ideals(draw, n=None, max_exp=4, extra=3):
    n = n if n is not None else draw(st.integers(1, 3))
    pure = [tuple(draw(st.integers(1, max_exp)) if j == i else 0 for j in range(n)) for i in range(n)]
    more = draw(st.lists(exponent(n, max_exp), max_size=extra))
    more = [g for g in more if any(g)]
    return MonomialIdeal(RingContext(n), pure + more)


@st.composite
def lattice_points(draw, n, count=(1, 6), box=3):
    k = draw(st.integers(*count))
    return draw(st.lists(st.tuples(*[st.integers(0, box) for _ in range(n)]), min_size=k, max_size=k))
