"""Monte Carlo estimates over sampled GUE/LUE/JUE spectra.

Samples are drawn in fixed-size blocks. Block ``b`` gets its own generator
seeded from ``(seed, b)``, so a given configuration yields the same numbers
no matter how many worker threads share the blocks. Block summaries are
merged in a fixed pairwise tree.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

import numpy as np

from . import combinatorics as cb
from .errors import DomainError, UnsupportedEnsembleError
from .orthopoly import EnsembleSpec

BLOCK_SIZE = 8192


@dataclass(frozen=True)
class MCConfig:
    ensemble: EnsembleSpec
    samples: int
    seed: int = 0
    workers: int = 1
    block_size: int = BLOCK_SIZE

    def __post_init__(self):
        if self.samples < 1:
            raise DomainError("samples must be >= 1")
        if self.workers < 1:
            raise DomainError("workers must be >= 1")
        if self.block_size < 2:
            raise DomainError("block size must be >= 2")
        _check_integer_parameters(self.ensemble)


@dataclass
class MCEstimate:
    mean: float
    stderr: float
    samples: int
    functional: str
    overflow: bool = False

    def z_score(self, exact) -> float:
        if self.stderr == 0:
            return 0.0 if float(exact) == self.mean else math.inf
        return (self.mean - float(exact)) / self.stderr

    def to_dict(self):
        return {
            "functional": self.functional,
            "samples": self.samples,
            "mean": self.mean,
            "stderr": self.stderr,
            "overflow": self.overflow,
        }


# --- functionals ------------------------------------------------------------------

@dataclass(frozen=True)
class Moment:
    """det(t - M)^p."""

    p: int
    t: Fraction

    def describe(self):
        return f"moment(p={self.p}, t={self.t})"

    def __call__(self, eig):
        return _signed_product(float(self.t) - eig, self.p)


@dataclass(frozen=True)
class Correlation:
    """prod_j det(t_j - M)."""

    points: Tuple[Fraction, ...]

    def describe(self):
        return "correlation(" + ", ".join(str(t) for t in self.points) + ")"

    def __call__(self, eig):
        logabs = np.zeros(eig.shape[0])
        neg = np.zeros(eig.shape[0], dtype=bool)
        for t in self.points:
            d = float(t) - eig
            with np.errstate(divide="ignore"):
                logabs += np.log(np.abs(d)).sum(axis=1)
            neg ^= (np.signbit(d).sum(axis=1) % 2).astype(bool)
        return np.where(neg, -1.0, 1.0) * np.exp(logabs)


@dataclass(frozen=True)
class SecularProduct:
    """prod_j sc_{lam_j}(M), products of elementary symmetric polynomials."""

    lam: Tuple[int, ...]

    def describe(self):
        return f"secular_product({list(self.lam)})"

    def __call__(self, eig):
        e = elementary_symmetric(eig, max(self.lam, default=0))
        out = np.ones(eig.shape[0])
        for r in self.lam:
            out = out * e[:, r]
        return out


def _signed_product(d, power):
    # log|.| of an exact zero is -inf, which exponentiates back to 0
    with np.errstate(divide="ignore"):
        logabs = power * np.log(np.abs(d)).sum(axis=1)
    neg = (np.signbit(d).sum(axis=1) * power) % 2 == 1
    return np.where(neg, -1.0, 1.0) * np.exp(logabs)


def elementary_symmetric(eig, r_max: int):
    """Columns e_0 .. e_{r_max} of each row of eigenvalues."""
    batch, n = eig.shape
    e = np.zeros((batch, r_max + 1))
    e[:, 0] = 1.0
    for j in range(n):
        x = eig[:, j]
        for r in range(min(j + 1, r_max), 0, -1):
            e[:, r] += x * e[:, r - 1]
    return e


def functional_from(kind: str, **kw):
    if kind == "moment":
        return Moment(int(kw["p"]), Fraction(kw.get("t", 0)))
    if kind == "correlation":
        return Correlation(tuple(Fraction(t) for t in kw["points"]))
    if kind == "secular":
        return SecularProduct(tuple(cb.partition(sorted(kw["lam"], reverse=True))))
    raise DomainError(f"unknown functional {kind!r}")


# --- samplers ---------------------------------------------------------------------

def _check_integer_parameters(spec: EnsembleSpec):
    for name in ("gamma", "gamma1", "gamma2"):
        v = getattr(spec, name)
        if v.denominator != 1 or v < 0:
            raise UnsupportedEnsembleError(f"Monte Carlo needs non-negative integer {name}, got {v}")


def _complex_gaussian(rng, shape):
    # E|z|^2 = 1
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)


def sample_spectra(spec: EnsembleSpec, rng: np.random.Generator, batch: int) -> np.ndarray:
    """Eigenvalues of ``batch`` independent matrices, shape (batch, N)."""
    _check_integer_parameters(spec)
    N = spec.N
    s = float(spec.scale)
    if spec.kind == "GUE":
        # weight exp(-s Tr M^2 / 2)
        z = _complex_gaussian(rng, (batch, N, N))
        h = (z + np.conj(np.swapaxes(z, 1, 2))) / math.sqrt(2 * s)
        return np.linalg.eigvalsh(h)
    if spec.kind == "LUE":
        g = _complex_gaussian(rng, (batch, N, N + int(spec.gamma)))
        w = g @ np.conj(np.swapaxes(g, 1, 2))
        return np.linalg.eigvalsh(w) / (2 * s)
    ga = _complex_gaussian(rng, (batch, N, N + int(spec.gamma1)))
    gb = _complex_gaussian(rng, (batch, N, N + int(spec.gamma2)))
    a = ga @ np.conj(np.swapaxes(ga, 1, 2))
    b = gb @ np.conj(np.swapaxes(gb, 1, 2))
    chol = np.linalg.cholesky(a + b)
    # L^{-1} A L^{-H} has the spectrum of (A+B)^{-1/2} A (A+B)^{-1/2}
    x = np.linalg.solve(chol, a)
    x = np.linalg.solve(chol, np.conj(np.swapaxes(x, 1, 2)))
    x = (x + np.conj(np.swapaxes(x, 1, 2))) / 2
    return np.clip(np.linalg.eigvalsh(x), 0.0, 1.0)


def sample_spectrum(spec: EnsembleSpec, rng: np.random.Generator):
    """Eigenvalues of one sampled matrix as a list of floats."""
    return sample_spectra(spec, rng, 1)[0].tolist()


# --- estimation -------------------------------------------------------------------

def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed & (2**64 - 1), block]))


def _block_summary(config: MCConfig, functional, block: int):
    start = block * config.block_size
    size = min(config.block_size, config.samples - start)
    eig = sample_spectra(config.ensemble, _block_rng(config.seed, block), size)
    with np.errstate(over="ignore", invalid="ignore"):
        vals = functional(eig)
        mean = float(np.mean(vals))
        m2 = float(np.sum((vals - mean) ** 2))
    return size, mean, m2


def _merge(a, b):
    na, ma, sa = a
    nb, mb, sb = b
    n = na + nb
    delta = mb - ma
    return n, ma + delta * nb / n, sa + sb + delta * delta * na * nb / n


def _tree_reduce(parts):
    while len(parts) > 1:
        nxt = [_merge(parts[i], parts[i + 1]) for i in range(0, len(parts) - 1, 2)]
        if len(parts) % 2:
            nxt.append(parts[-1])
        parts = nxt
    return parts[0]


def estimate(config: MCConfig, functional) -> MCEstimate:
    """Sample mean and standard error of ``functional`` over ``config.samples`` spectra."""
    n_blocks = -(-config.samples // config.block_size)
    blocks = range(n_blocks)
    if config.workers == 1:
        parts = [_block_summary(config, functional, b) for b in blocks]
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            parts = list(pool.map(lambda b: _block_summary(config, functional, b), blocks))
    with np.errstate(over="ignore", invalid="ignore"):
        n, mean, m2 = _tree_reduce(parts)
    var = m2 / (n - 1) if n > 1 else 0.0
    stderr = math.sqrt(var / n)
    overflow = not (math.isfinite(mean) and math.isfinite(stderr))
    return MCEstimate(mean, stderr, n, functional.describe(), overflow)


def exact_value(spec: EnsembleSpec, functional) -> Fraction:
    """The exact counterpart of a functional from the exact modules."""
    from .moments import correlation, moment
    from .secular import secular_joint, secular_mean

    if isinstance(functional, Moment):
        return moment(spec, functional.p, functional.t).value
    if isinstance(functional, Correlation):
        return correlation(spec, list(functional.points))
    if isinstance(functional, SecularProduct):
        if len(functional.lam) <= 1:
            return secular_mean(spec, functional.lam[0] if functional.lam else 0)
        return secular_joint(spec, functional.lam)
    raise DomainError("unknown functional")


def concordance(config: MCConfig, functional, sigmas: float = 4.0):
    """(estimate, exact, |z| <= sigmas)."""
    est = estimate(config, functional)
    exact = exact_value(config.ensemble, functional)
    return est, exact, (not est.overflow) and abs(est.z_score(exact)) <= sigmas
