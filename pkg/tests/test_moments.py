from fractions import Fraction
from math import prod

import pytest
from hypothesis import given, settings, strategies as st

from rmtcharpoly.errors import DomainError, ResourceError
from rmtcharpoly.exact import Poly
from rmtcharpoly.moments import (
    MomentResult,
    correlation,
    correlation_function,
    cd_exact,
    cd_factorial_form,
    gamma_p,
    gue_moment_t0,
    moment,
    moment_box_phi,
    moment_derivative_det,
    moment_poly,
    one_point_density,
    one_point_density_relation,
    second_moment_coeff,
    second_moment_poly,
    table_check,
    two_point_density,
)
from rmtcharpoly.orthopoly import charpoly_multipoly, ensemble_expectation, gue, jue, lue, monic, multipoly_mul

from strategies import fractions


def specs(N):
    return [gue(N), lue(N, Fraction(1, 2)), jue(N, Fraction(1, 2), Fraction(1, 3))]


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=4), st.integers(min_value=1, max_value=3), fractions(), st.integers(0, 2))
def test_three_routes_agree(N, p, t, which):
    spec = specs(N)[which]
    v = moment_poly(spec, p)(t)
    assert v == moment_derivative_det(spec, p, t)
    assert v == moment_box_phi(spec, p, t)


@pytest.mark.parametrize("spec", [gue(2), lue(2, 1), jue(2, 1, 2)], ids=lambda s: s.kind)
def test_moment_matches_brute_force(spec):
    t = Fraction(1, 3)
    f = charpoly_multipoly(t, spec.N)
    assert ensemble_expectation(spec, multipoly_mul(f, f)) == moment(spec, 2, t).value
    assert ensemble_expectation(spec, multipoly_mul(multipoly_mul(f, f), f)) == moment(spec, 3, t).value


@pytest.mark.parametrize("N", range(1, 6))
def test_first_moment_is_monic(N):
    for spec in specs(N):
        assert moment_poly(spec, 1) == monic(spec, N)


def test_correlation_distinct_points():
    spec = lue(3, 1)
    pts = [Fraction(1, 2), Fraction(-1, 3)]
    f = multipoly_mul(charpoly_multipoly(pts[0], 3), charpoly_multipoly(pts[1], 3))
    assert correlation(spec, pts) == ensemble_expectation(spec, f)


def test_known_values():
    assert moment(gue(2), 2, 0).value == Fraction(3, 4)
    assert moment(gue(2), 2, 0, route="DerivativeDet").value == Fraction(3, 4)
    assert gue_moment_t0(2, 1) == Fraction(3, 4)
    assert moment(gue(3), 1, 0).value == 0  # h_3 is odd


def test_moment_result_json():
    r = moment(gue(2), 2)
    d = r.to_dict()
    assert d["coefficients"][0] == "3/4"
    assert Fraction(moment(gue(2), 2, Fraction(1, 2)).to_dict()["value"]) == moment(gue(2), 2, Fraction(1, 2)).value
    assert isinstance(r.to_json(), str)


def test_moment_parity_support():
    poly = moment_poly(gue(4), 2)
    assert all(c == 0 for k, c in enumerate(poly.coeffs) if k % 2)


@pytest.mark.parametrize("N", range(1, 9))
@pytest.mark.parametrize("p", [1, 2])
def test_t0_closed_form(N, p):
    assert gue_moment_t0(N, p) == moment_poly(gue(N), 2 * p)(0)
    assert cd_exact(N, p) == cd_factorial_form(N, p)


def test_gamma_p():
    assert gamma_p(1) == 1
    assert gamma_p(2) == Fraction(1, 12)


@pytest.mark.parametrize("N", range(1, 13))
def test_second_moment_sums(N):
    assert second_moment_poly(N) == moment_poly(gue(N), 2)


def test_second_moment_examples():
    assert second_moment_coeff(4, 0) == 1
    assert second_moment_coeff(4, 1) == 0
    assert second_moment_coeff(3, 5) == 0


def test_odd_bracket_t2():
    for N in (3, 5, 7):
        for p in (1, 2, 3):
            poly = moment_poly(gue(N), 2 * p)
            assert poly.coeff(2) / poly.coeff(0) == N * p


@pytest.mark.parametrize("N", [4, 5, 6, 7])
@pytest.mark.parametrize("p", [1, 2, 3])
def test_table_ratios(N, p):
    for nu, got, expected in table_check(N, p):
        assert got == expected, nu


def _gauss_integral(poly, N):
    # int poly(t) sqrt(N/2pi) e^{-N t^2/2} dt = sum c_k (k-1)!! / N^{k/2}
    total = Fraction(0)
    for k, c in enumerate(poly.coeffs):
        if k % 2 == 0:
            total += c * prod(range(k - 1, 0, -2)) / Fraction(N) ** (k // 2)
    return total


@pytest.mark.parametrize("N", range(1, 7))
def test_one_point_density_normalization(N):
    r = one_point_density(N).rational
    assert _gauss_integral(r, N) == N
    assert _gauss_integral(r * Poly([0, 0, 1]), N) == N  # E[Tr M^2] = N


def test_one_point_density_relation():
    r = one_point_density(2).rational
    assert r.degree == 2
    assert one_point_density_relation(2, Fraction(1, 2)) == r(Fraction(1, 2))
    with pytest.raises(DomainError):
        one_point_density_relation(1, 0)


def test_two_point_density():
    d = two_point_density(3, Fraction(1, 2), Fraction(1, 2))
    assert d.rational == 0
    a = two_point_density(4, Fraction(1, 3), Fraction(-1, 2)).rational
    b = two_point_density(4, Fraction(-1, 2), Fraction(1, 3)).rational
    assert a == b > 0
    with pytest.raises(DomainError):
        correlation_function(3, [0, 1, 2])


def test_budget_guard(monkeypatch):
    monkeypatch.setenv("RMT_CHARPOLY_PARTITION_BUDGET", "10")
    with pytest.raises(ResourceError):
        moment_poly(gue(5), 3)


def test_unknown_route():
    with pytest.raises(DomainError):
        moment(gue(2), 2, 0, route="Nope")
    with pytest.raises(DomainError):
        moment(lue(2), 2, 0, route="ClosedFormT0")
