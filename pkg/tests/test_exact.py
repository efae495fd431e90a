from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rmtcharpoly.exact import (
    Poly,
    as_fraction,
    cofactor_det,
    det_exact,
    frac_str,
    gamma_ratio,
    inv_factorial,
    poly_arith,
    rising,
)

from strategies import fractions


@st.composite
def matrices(draw, max_n=5):
    n = draw(st.integers(min_value=0, max_value=max_n))
    return [[draw(fractions()) for _ in range(n)] for _ in range(n)]


@st.composite
def polys(draw, max_deg=5):
    return Poly(draw(st.lists(fractions(), min_size=0, max_size=max_deg + 1)))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_bareiss_matches_cofactor(m):
    assert det_exact(m) == cofactor_det(m)


@settings(max_examples=40, deadline=None)
@given(matrices(max_n=4), matrices(max_n=4))
def test_det_multiplicative(a, b):
    n = min(len(a), len(b))
    a = [row[:n] for row in a[:n]]
    b = [row[:n] for row in b[:n]]
    ab = [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    assert det_exact(ab) == det_exact(a) * det_exact(b)


def test_det_examples():
    assert det_exact([[1, 2], [3, 4]]) == -2
    assert det_exact([]) == 1
    assert det_exact([[0, 1], [1, 0]]) == -1
    assert det_exact([[Fraction(1, 2), 0], [0, Fraction(2, 3)]]) == Fraction(1, 3)


def test_det_rejects_non_square():
    with pytest.raises(Exception):
        det_exact([[1, 2, 3], [4, 5, 6]])


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), fractions())
def test_poly_ring_evaluation(a, b, x):
    assert (a + b)(x) == a(x) + b(x)
    assert (a * b)(x) == a(x) * b(x)
    assert (a - b)(x) == a(x) - b(x)


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_derivative_leibniz(a, b):
    assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


def test_poly_arith_dispatch():
    a = Poly([1, 2])
    b = Poly([0, 1])
    assert poly_arith(a, b, "add") == Poly([1, 3])
    assert poly_arith(a, b, "mul") == Poly([0, 1, 2])
    assert poly_arith(a, op="derivative") == Poly([2])
    assert poly_arith(a, op="evaluate", at=Fraction(1, 2)) == 2


def test_poly_trims_and_degree():
    assert Poly([1, 0, 0]).degree == 0
    assert Poly([]).coeffs == ()
    assert Poly([0, 0, 3]).coeff(2) == 3


def test_as_fraction_rejects_floats():
    assert as_fraction("3/4") == Fraction(3, 4)
    assert as_fraction(2) == 2
    with pytest.raises(Exception):
        as_fraction(0.5)
    with pytest.raises(Exception):
        as_fraction(True)


def test_frac_str_round_trip():
    for x in [Fraction(3, 4), Fraction(-7, 2), Fraction(5), Fraction(0)]:
        assert Fraction(frac_str(x)) == x


def test_gamma_helpers():
    assert inv_factorial(3) == Fraction(1, 6)
    assert inv_factorial(-1) == 0
    assert rising(Fraction(1, 2), 3) == Fraction(1, 2) * Fraction(3, 2) * Fraction(5, 2)
    assert gamma_ratio(Fraction(7, 2), Fraction(3, 2)) == Fraction(3, 2) * Fraction(5, 2)
    # pole in the denominator
    assert gamma_ratio(2, -1) == 0
