from collections import Counter
from fractions import Fraction

from hypothesis import strategies as st


@st.composite
def fractions(draw, bound=9, max_den=7):
    num = draw(st.integers(min_value=-bound, max_value=bound))
    den = draw(st.integers(min_value=1, max_value=max_den))
    return Fraction(num, den)


@st.composite
def partitions(draw, max_n=8):
    n = draw(st.integers(min_value=0, max_value=max_n))
    if n == 0:
        return ()
    k = draw(st.integers(min_value=1, max_value=n))
    bins = draw(st.lists(st.integers(min_value=0, max_value=k - 1), min_size=n, max_size=n))
    return tuple(sorted(Counter(bins).values(), reverse=True))


@st.composite
def box_partitions(draw, max_N=5, max_p=4):
    N = draw(st.integers(min_value=1, max_value=max_N))
    p = draw(st.integers(min_value=1, max_value=max_p))
    parts = draw(st.lists(st.integers(min_value=0, max_value=N), min_size=p, max_size=p))
    lam = tuple(x for x in sorted(parts, reverse=True) if x)
    return N, p, lam


@st.composite
def distinct_points(draw, n, bound=9, max_den=5):
    pts = draw(st.lists(fractions(bound, max_den), min_size=n, max_size=n, unique=True))
    return pts


@st.composite
def rational_gamma(draw):
    return Fraction(draw(st.integers(min_value=-2, max_value=9)), draw(st.integers(min_value=3, max_value=4)))
