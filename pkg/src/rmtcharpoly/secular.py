"""Secular coefficients: the elementary symmetric polynomials of the eigenvalues.

det(t - M) = sum_j (-1)^j sc_j(M) t^{N-j}. Expanding e_r (or a product
e_lam) in the multivariate orthogonal basis and keeping the constant
component gives the expectations below.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict

from . import combinatorics as cb
from .errors import DomainError, UnsupportedEnsembleError
from .exact import Poly, frac_str, gamma_ratio
from .expansions import C_lambda, G_ratio, psi
from .orthopoly import EnsembleSpec, monic


def _ones(r: int):
    return (1,) * r


def secular_mean(spec: EnsembleSpec, r: int) -> Fraction:
    """E[sc_r(M)]; zero for r > N."""
    if r < 0:
        raise DomainError("index must be >= 0")
    N = spec.N
    if r > N:
        return Fraction(0)
    if r == 0:
        return Fraction(1)
    s = spec.scale
    if spec.kind == "GUE":
        if r % 2:
            return Fraction(0)
        h = r // 2
        return Fraction((-1) ** h, factorial(h)) / (2 * s) ** h * Fraction(factorial(N), factorial(N - r))
    if spec.kind == "LUE":
        g = spec.gamma
        return (
            1 / (2 * s) ** r
            / factorial(r)
            * Fraction(factorial(N), factorial(N - r))
            * gamma_ratio(N + g + 1, N - r + g + 1)
        )
    return secular_mean_expansion(spec, r)


def secular_mean_expansion(spec: EnsembleSpec, r: int) -> Fraction:
    """E[e_r] as the constant coefficient of e_r = S_{(1^r)} in the multivariate basis."""
    if r > spec.N:
        return Fraction(0)
    return psi(spec, _ones(r), (), spec.N)


def psi_hermite_column(N: int, r: int, j: int) -> Fraction:
    """Closed form of the coefficient of H_{(1^{r-2j})} in e_r."""
    return Fraction((-1) ** j * factorial(N - r + 2 * j), (2 * N) ** j * factorial(j) * factorial(N - r))


def secular_pair_gue(N: int, r: int, s: int, parity_class: str) -> Fraction:
    """E[sc_{2r} sc_{2s}] ("even") or E[sc_{2r+1} sc_{2s+1}] ("odd"); "mixed" gives 0."""
    if parity_class == "mixed":
        return Fraction(0)
    if parity_class not in ("even", "odd"):
        raise DomainError(f"parity class must be even, odd or mixed, got {parity_class!r}")
    off = 0 if parity_class == "even" else 1
    if 2 * max(r, s) + off > N:
        return Fraction(0)
    total = Fraction(0)
    for j in range(min(r, s) + 1):
        total += Fraction(
            4**j * factorial(N - off) * factorial(N - 2 * j - off),
            factorial(r - j) * factorial(s - j) * factorial(N - 2 * r - off) * factorial(N - 2 * s - off),
        )
    return Fraction(-1, 2 * N) ** (r + s) * total


def secular_joint(spec: EnsembleSpec, lam) -> Fraction:
    """E[prod_j sc_{lam_j}(M)] via e_lam = sum_mu K_{mu' lam} S_mu (GUE and LUE)."""
    lam = cb.partition(sorted((int(x) for x in lam if x), reverse=True))
    N = spec.N
    if spec.kind == "JUE":
        raise UnsupportedEnsembleError("joint secular moments are only available for GUE and LUE")
    if any(x > N for x in lam):
        return Fraction(0)
    n = cb.weight(lam)
    s = spec.scale
    total = Fraction(0)
    if spec.kind == "GUE":
        if n % 2:
            return Fraction(0)
        h = n // 2
        for mu in cb.partitions_of(n, max_length=N):
            k = cb.kostka(cb.conjugate(mu), lam)
            if not k:
                continue
            chi = cb.character(mu, (2,) * h)
            if chi:
                total += Fraction(k * chi * C_lambda(mu, N), factorial(h)) / (2 * s) ** h
        return total
    g = spec.gamma
    for mu in cb.partitions_of(n, max_length=N):
        k = cb.kostka(cb.conjugate(mu), lam)
        if not k:
            continue
        ratio = G_ratio(mu, (), N, g) * G_ratio(mu, (), N, 0)
        total += ratio * Fraction(k * cb.dim_V(mu), factorial(n))
    return total / (2 * s) ** n


@dataclass
class GeneratingReport:
    ensemble: Dict[str, str]
    generated: Poly
    expected: Poly

    @property
    def ok(self) -> bool:
        return self.generated == self.expected

    def to_dict(self):
        return {
            "ensemble": self.ensemble,
            "generated": self.generated.to_strings(),
            "expected": self.expected.to_strings(),
            "ok": self.ok,
        }


def secular_generating_check(spec: EnsembleSpec) -> GeneratingReport:
    """sum_j (-1)^j E[sc_j] t^{N-j} against the degree-N monic orthogonal polynomial."""
    N = spec.N
    if N > 12:
        raise DomainError("generating check supports N <= 12")
    coeffs = [Fraction(0)] * (N + 1)
    for j in range(N + 1):
        coeffs[N - j] = (-1) ** j * secular_mean(spec, j)
    return GeneratingReport(spec.describe(), Poly(coeffs), monic(spec, N))


def secular_result(spec: EnsembleSpec, lam) -> dict:
    lam = cb.partition(sorted((int(x) for x in lam if x), reverse=True))
    if spec.kind == "JUE":
        if len(lam) > 1:
            raise UnsupportedEnsembleError("only first moments of secular coefficients are available for JUE")
        value = secular_mean(spec, lam[0] if lam else 0)
    else:
        value = secular_joint(spec, lam)
    return {"ensemble": spec.describe(), "lambda": list(lam), "value": frac_str(value)}
