from fractions import Fraction

import numpy as np
import pytest

from rmtcharpoly.errors import DomainError, UnsupportedEnsembleError
from rmtcharpoly.montecarlo import (
    Correlation,
    MCConfig,
    Moment,
    SecularProduct,
    concordance,
    elementary_symmetric,
    estimate,
    exact_value,
    functional_from,
    sample_spectra,
    sample_spectrum,
)
from rmtcharpoly.orthopoly import gue, jue, lue


def test_supports():
    rng = np.random.default_rng(0)
    assert (sample_spectra(lue(3, 2), rng, 200) >= 0).all()
    x = sample_spectra(jue(3, 1, 2), rng, 200)
    assert ((x >= 0) & (x <= 1)).all()
    assert len(sample_spectrum(gue(5), rng)) == 5


def test_gue_semicircle_second_moment():
    rng = np.random.default_rng(2)
    eig = sample_spectra(gue(50), rng, 10**4)
    vals = (eig**2).sum(axis=1) / 50
    assert abs(vals.mean() - 1) < 4 * vals.std(ddof=1) / np.sqrt(len(vals))


def test_elementary_symmetric():
    eig = np.array([[1.0, 2.0, 3.0]])
    e = elementary_symmetric(eig, 3)
    assert e[0].tolist() == [1.0, 6.0, 11.0, 6.0]


def test_products_with_signs():
    eig = np.array([[1.0, -2.0], [0.5, 0.25]])
    m = Moment(3, Fraction(0))(eig)
    assert np.allclose(m, [(-1 * 2) ** 3, (-0.5 * -0.25) ** 3])
    c = Correlation((Fraction(1), Fraction(-1)))(eig)
    assert np.allclose(c, [(0 * 3) * (-2 * 1), (0.5 * 0.75) * (-1.5 * -1.25)])


@pytest.mark.parametrize(
    "spec,functional",
    [
        (gue(2), Moment(2, Fraction(0))),
        (gue(4), SecularProduct((2,))),
        (lue(2, 1), Correlation((Fraction(1, 2), Fraction(3, 2)))),
        (jue(2, 1, 0), Moment(2, Fraction(1, 3))),
        (gue(3), Moment(2, Fraction(10))),
    ],
)
def test_concordance(spec, functional):
    est, exact, ok = concordance(MCConfig(spec, 40000, seed=3), functional)
    assert ok, (est, exact)


def test_exact_values():
    assert exact_value(gue(2), Moment(2, Fraction(0))) == Fraction(3, 4)
    assert exact_value(gue(4), SecularProduct((2,))) == Fraction(-3, 2)
    assert exact_value(jue(3, 1, 1), Moment(1, Fraction(1, 2))) == 0


def test_determinism_across_workers():
    f = Moment(2, Fraction(1, 2))
    runs = [estimate(MCConfig(gue(4), 20000, 42, w, 1500), f) for w in (1, 2, 8)]
    assert len({(r.mean, r.stderr) for r in runs}) == 1
    other = estimate(MCConfig(gue(4), 20000, 43, 1, 1500), f)
    assert other.mean != runs[0].mean


def test_coverage_calibration():
    f = Moment(2, Fraction(0))
    exact = exact_value(gue(2), f)
    hits = 0
    for seed in range(50):
        est = estimate(MCConfig(gue(2), 2000, seed, block_size=500), f)
        hits += abs(est.mean - float(exact)) <= 2 * est.stderr
    assert hits >= 40


def test_config_validation():
    with pytest.raises(DomainError):
        MCConfig(gue(2), 0)
    with pytest.raises(UnsupportedEnsembleError):
        MCConfig(lue(2, Fraction(1, 2)), 10)
    with pytest.raises(DomainError):
        functional_from("nope")


def test_overflow_flag():
    est = estimate(MCConfig(gue(3), 100, 0), Moment(400, Fraction(10**3)))
    assert est.overflow
