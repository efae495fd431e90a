from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rmtcharpoly import combinatorics as cb
from rmtcharpoly.errors import SingularPointsError
from rmtcharpoly.expansions import (
    ExpansionTable,
    d_matrix,
    dual_cauchy_sides,
    phi_eval,
    psi,
    schur_bialternant,
    schur_eval,
    schur_jacobi_trudi,
    upsilon,
)
from rmtcharpoly.orthopoly import (
    ensemble_expectation,
    gue,
    jue,
    lue,
    multipoly_from_univariate_product,
    multipoly_mul,
    vandermonde_squared,
)

from strategies import distinct_points, fractions, partitions

SPECS = [gue(3), lue(3, Fraction(1, 2)), jue(3, Fraction(1, 2), Fraction(1, 3))]


@settings(max_examples=40, deadline=None)
@given(partitions(max_n=6), distinct_points(3))
def test_schur_routes_agree(lam, pts):
    if len(lam) > 3:
        assert schur_eval(lam, pts) == 0
        return
    assert schur_jacobi_trudi(lam, pts) == schur_bialternant(lam, pts)


def test_schur_examples():
    assert schur_eval((1,), [1, 2, 3]) == 6
    assert schur_eval((1, 1), [1, 2, 3]) == 11
    assert schur_eval((2,), [Fraction(1, 2)] * 2) == Fraction(3, 4)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.kind)
def test_inverse_pair_box_3(spec):
    parts = list(cb.partitions_in_box(3, 3))
    for lam in parts:
        for nu in parts:
            s = sum(psi(spec, lam, mu, 3) * upsilon(spec, mu, nu, 3) for mu in parts)
            assert s == (1 if lam == nu else 0)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.kind)
def test_unitriangular(spec):
    for lam in cb.partitions_in_box(3, 2):
        assert psi(spec, lam, lam, 2) == 1
        assert upsilon(spec, lam, lam, 2) == 1
        assert psi(spec, (1,), (2,), 2) == 0


def test_d_matrix_dispatch():
    assert d_matrix("H", (2,), ()) == 1
    assert d_matrix("L", (2,), ()) == Fraction(1, 2)
    assert d_matrix("H", (2, 2), (2, 2)) == 1
    with pytest.raises(Exception):
        d_matrix("X", (1,), ())


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SPECS), st.data())
def test_phi_routes_agree(spec, data):
    lam = data.draw(st.sampled_from(list(cb.partitions_in_box(3, 3))))
    pts = data.draw(distinct_points(3))
    assert phi_eval(spec, lam, pts) == phi_eval(spec, lam, pts, route="det")


def test_phi_examples():
    spec = gue(2)
    pts = [Fraction(1, 3), Fraction(2, 5)]
    assert phi_eval(spec, (), pts) == 1
    assert phi_eval(spec, (1,), pts) == sum(pts)
    # single variable with the size-1 weight gives h_2(t) = t^2 - 1
    assert phi_eval(gue(1), (2,), [Fraction(3)]) == 8
    with pytest.raises(SingularPointsError):
        phi_eval(spec, (1,), [1, 1], route="det")


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=1, max_value=3), st.integers(min_value=1, max_value=3), st.data())
def test_dual_cauchy(N, p, data):
    t = data.draw(st.lists(fractions(), min_size=p, max_size=p))
    x = data.draw(st.lists(fractions(), min_size=N, max_size=N))
    for spec in [None, gue(N), lue(N, Fraction(1, 2)), jue(N, Fraction(1, 2), Fraction(1, 3))]:
        lhs, rhs = dual_cauchy_sides(spec, t, x)
        assert lhs == rhs


@pytest.mark.parametrize("mu,nu", [((), ()), ((1,), (1,)), ((2,), (2,)), ((1, 1), (1, 1)), ((2,), (1, 1)), ((1,), ())])
def test_multivariate_hermite_orthogonality(mu, nu):
    # <H_mu, H_nu> in two variables = N^{-|mu|} C_mu(2) delta
    from rmtcharpoly.expansions import C_lambda

    N = 2
    spec = gue(N)

    def as_multipoly(lam):
        # H_lam = det[h_{lam_j+n-j}(x_k)] / Delta with n = 2
        from rmtcharpoly.orthopoly import monic

        a, b = cb.padded(lam, 2)
        pa, pb = monic(spec, a + 1), monic(spec, b)
        num = multipoly_from_univariate_product([pa, pb])
        swap = multipoly_from_univariate_product([pb, pa])
        diff = dict(num)
        for e, c in swap.items():
            diff[e] = diff.get(e, 0) - c
        diff = {e: c for e, c in diff.items() if c}
        # divide by (x1 - x2): exact synthetic division on the exponent lattice
        quot = {}
        rem = dict(diff)
        while rem:
            e = max(rem, key=lambda k: (k[0], -k[1]))
            c = rem.pop(e)
            if e[0] == 0:
                raise AssertionError("not divisible")
            q = (e[0] - 1, e[1])
            quot[q] = quot.get(q, 0) + c
            f = (e[0] - 1, e[1] + 1)
            rem[f] = rem.get(f, 0) + c
            if rem[f] == 0:
                del rem[f]
        return quot

    val = ensemble_expectation(spec, multipoly_mul(as_multipoly(mu), as_multipoly(nu)))
    expected = Fraction(C_lambda(mu, 2), N ** cb.weight(mu)) if mu == nu else 0
    assert val == expected


def test_expansion_table_csv():
    table = ExpansionTable(gue(2), 2, 2, "psi")
    assert table[(2, 2), ()] == psi(gue(2), (2, 2), (), 2)
    text = table.to_csv()
    assert text.splitlines()[0] == "lambda,nu,value"
    assert len(table.partitions()) == cb.box_count(2, 2)
