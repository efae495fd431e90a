"""Ensemble descriptions and monic Hermite / Laguerre / Jacobi polynomials.

Hermite convention: the classical polynomials ``H_n`` here are the
*probabilists'* ones, orthogonal for ``exp(-x**2/2)`` with norm
``sqrt(2*pi) * n!``. The ensemble polynomials are rescaled so they are monic
and orthogonal for the ensemble weights

* GUE: ``exp(-s x**2 / 2)`` on the real line,
* LUE: ``x**g * exp(-2 s x)`` on ``[0, inf)``,
* JUE: ``x**g1 * (1 - x)**g2`` on ``[0, 1]``,

where ``s`` is the weight scale (the matrix size ``N`` unless overridden).
All parameters are rational; weight integrals are represented as a rational
multiple of a fixed per-ensemble unit so orthogonality is an exact identity.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from math import comb, factorial
from typing import Dict, Optional, Sequence, Tuple

from .errors import DomainError
from .exact import Poly, as_fraction, det_exact, rising

KINDS = ("GUE", "LUE", "JUE")
FAMILY_OF = {"GUE": "H", "LUE": "L", "JUE": "J"}


@dataclass(frozen=True)
class EnsembleSpec:
    """Which ensemble, its matrix size and its weight parameters.

    ``scale`` is the number multiplying the exponent in the GUE/LUE weight.
    It equals ``N`` for the ensembles themselves; a different value is only
    needed when a size-``N`` integral carries the weight of another size (as
    in the one-point density relation).
    """

    kind: str
    N: int
    gamma: Fraction = Fraction(0)
    gamma1: Fraction = Fraction(0)
    gamma2: Fraction = Fraction(0)
    scale: Optional[Fraction] = field(default=None)

    def __post_init__(self):
        kind = self.kind.upper()
        object.__setattr__(self, "kind", kind)
        if kind not in KINDS:
            raise DomainError(f"unknown ensemble {self.kind!r}")
        if not isinstance(self.N, int) or self.N < 1:
            raise DomainError(f"matrix size must be a positive integer, got {self.N!r}")
        for name in ("gamma", "gamma1", "gamma2"):
            v = as_fraction(getattr(self, name))
            object.__setattr__(self, name, v)
            if v <= -1:
                raise DomainError(f"{name} must exceed -1, got {v}")
        s = Fraction(self.N) if self.scale is None else as_fraction(self.scale)
        if s <= 0:
            raise DomainError("weight scale must be positive")
        object.__setattr__(self, "scale", s)

    @property
    def family(self) -> str:
        return FAMILY_OF[self.kind]

    def with_size(self, N: int) -> "EnsembleSpec":
        """Same weight (including its scale), different number of eigenvalues."""
        return EnsembleSpec(self.kind, N, self.gamma, self.gamma1, self.gamma2, self.scale)

    def describe(self) -> Dict[str, str]:
        out = {"kind": self.kind, "N": self.N}
        if self.kind == "LUE":
            out["gamma"] = str(self.gamma)
        if self.kind == "JUE":
            out["gamma1"] = str(self.gamma1)
            out["gamma2"] = str(self.gamma2)
        if self.scale != self.N:
            out["scale"] = str(self.scale)
        return out


def gue(N, scale=None):
    return EnsembleSpec("GUE", N, scale=scale)


def lue(N, gamma=0, scale=None):
    return EnsembleSpec("LUE", N, gamma=as_fraction(gamma), scale=scale)


def jue(N, gamma1=0, gamma2=0):
    return EnsembleSpec("JUE", N, gamma1=as_fraction(gamma1), gamma2=as_fraction(gamma2))


# --- monic polynomials -------------------------------------------------------

@lru_cache(maxsize=None)
def _hermite_monic(n: int, s: Fraction) -> Poly:
    if n == 0:
        return Poly([1])
    prev, cur = Poly([1]), Poly([0, 1])
    for k in range(1, n):
        prev, cur = cur, Poly.t() * cur - prev * (Fraction(k) / s)
    return cur


def hermite_monic(n: int, N) -> Poly:
    """h_n(x) = N^{-n/2} He_n(sqrt(N) x); three-term recurrence h_{k+1} = x h_k - (k/N) h_{k-1}."""
    if n < 0:
        raise DomainError("degree must be >= 0")
    return _hermite_monic(n, as_fraction(N))


@lru_cache(maxsize=None)
def _laguerre_monic(n: int, s: Fraction, g: Fraction) -> Poly:
    # coefficient of x^k: (-1)^{n-k} n!/k! * C(n+g, n-k) * (2s)^{k-n}
    out = []
    for k in range(n + 1):
        binom = rising(k + g + 1, n - k) / factorial(n - k)
        out.append((-1) ** (n - k) * Fraction(factorial(n), factorial(k)) * binom / (2 * s) ** (n - k))
    return Poly(out)


def laguerre_monic(n: int, N, gamma) -> Poly:
    """l_n^{(gamma)}(x) = (-1)^n n! (2N)^{-n} L_n^{(gamma)}(2 N x)."""
    gamma = as_fraction(gamma)
    if gamma <= -1:
        raise DomainError("Laguerre parameter must exceed -1")
    if n < 0:
        raise DomainError("degree must be >= 0")
    return _laguerre_monic(n, as_fraction(N), gamma)


@lru_cache(maxsize=None)
def _jacobi_monic(n: int, g1: Fraction, g2: Fraction) -> Poly:
    g = g1 + g2
    # 2F1(-n, n+g+1; g1+1; x) up to normalization, made monic
    terms = [rising(-n, k) * rising(n + g + 1, k) / (rising(g1 + 1, k) * factorial(k)) for k in range(n + 1)]
    lead = terms[-1]
    return Poly(c / lead for c in terms)


def jacobi_monic(n: int, gamma1, gamma2) -> Poly:
    """Monic orthogonal polynomial for x^g1 (1-x)^g2 on [0, 1]."""
    g1, g2 = as_fraction(gamma1), as_fraction(gamma2)
    if g1 <= -1 or g2 <= -1:
        raise DomainError("Jacobi parameters must exceed -1")
    if n < 0:
        raise DomainError("degree must be >= 0")
    return _jacobi_monic(n, g1, g2)


def monic(spec: EnsembleSpec, n: int) -> Poly:
    """The degree-n monic orthogonal polynomial for the ensemble weight."""
    if spec.kind == "GUE":
        return hermite_monic(n, spec.scale)
    if spec.kind == "LUE":
        return laguerre_monic(n, spec.scale, spec.gamma)
    return jacobi_monic(n, spec.gamma1, spec.gamma2)


# --- classical normalizations ------------------------------------------------

def hermite_classical(n: int) -> Poly:
    """Probabilists' He_n, orthogonal for exp(-x^2/2)."""
    return hermite_monic(n, 1)


def laguerre_classical(n: int, gamma) -> Poly:
    """L_n^{(gamma)}(y) = sum_k (-1)^k C(n+gamma, n-k) y^k / k!."""
    g = as_fraction(gamma)
    return Poly((-1) ** k * rising(k + g + 1, n - k) / factorial(n - k) / factorial(k) for k in range(n + 1))


def jacobi_classical(n: int, gamma1, gamma2) -> Poly:
    """J_n with j_n = (-1)^n n! Gamma(n+g+1)/Gamma(2n+g+1) J_n, g = gamma1 + gamma2."""
    g = as_fraction(gamma1) + as_fraction(gamma2)
    factor = (-1) ** n * factorial(n) / rising(n + g + 1, n)
    return jacobi_monic(n, gamma1, gamma2) * (1 / factor)


# --- weight integrals ---------------------------------------------------------

class WeightMomentFunctional:
    """Exact moments of an ensemble weight.

    ``moment(k)`` returns the rational r_k with ``int x^k w(x) dx = r_k * unit``
    where the unit is the zeroth moment:

    * GUE: sqrt(2 pi / s)
    * LUE: Gamma(g + 1) / (2 s)^(g + 1)
    * JUE: B(g1 + 1, g2 + 1)
    """

    def __init__(self, spec: EnsembleSpec, classical: bool = False):
        self.spec = spec
        self.classical = classical

    @property
    def unit(self) -> str:
        k = self.spec.kind
        if self.classical:
            return {"GUE": "sqrt(2*pi)", "LUE": "Gamma(gamma+1)", "JUE": "B(gamma1+1,gamma2+1)"}[k]
        return {"GUE": "sqrt(2*pi/N)", "LUE": "Gamma(gamma+1)/(2N)^(gamma+1)", "JUE": "B(gamma1+1,gamma2+1)"}[k]

    def moment(self, k: int) -> Fraction:
        if k < 0:
            raise DomainError("moment order must be >= 0")
        spec = self.spec
        if spec.kind == "GUE":
            if k % 2:
                return Fraction(0)
            s = Fraction(1) if self.classical else spec.scale
            dfact = 1
            for i in range(k - 1, 0, -2):
                dfact *= i
            return Fraction(dfact) / s ** (k // 2)
        if spec.kind == "LUE":
            s2 = Fraction(1) if self.classical else 2 * spec.scale
            return rising(spec.gamma + 1, k) / s2**k
        return rising(spec.gamma1 + 1, k) / rising(spec.gamma1 + spec.gamma2 + 2, k)

    def integrate(self, poly: Poly) -> Fraction:
        return sum((c * self.moment(k) for k, c in enumerate(poly.coeffs)), Fraction(0))

    def inner(self, a: Poly, b: Poly) -> Fraction:
        return self.integrate(a * b)


def classical_norm(kind: str, n: int, gamma=0, gamma1=0, gamma2=0) -> Fraction:
    """Stated squared norm of the classical polynomial, in units of the classical weight mass."""
    kind = kind.upper()
    if kind == "GUE":
        return Fraction(factorial(n))
    if kind == "LUE":
        g = as_fraction(gamma)
        # Gamma(n+g+1)/Gamma(n+1) divided by Gamma(g+1)
        return rising(g + 1, n) / factorial(n)
    g1, g2 = as_fraction(gamma1), as_fraction(gamma2)
    g = g1 + g2
    # (1/(2n+g+1)) Gamma(n+g1+1)Gamma(n+g2+1)/(n! Gamma(n+g+1)) divided by B(g1+1, g2+1)
    return rising(g1 + 1, n) * rising(g2 + 1, n) * rising(g + 1, 1) / (
        (2 * n + g + 1) * factorial(n) * rising(g + 1, n)
    )


def monic_norm(spec: EnsembleSpec, n: int) -> Fraction:
    """Squared norm of the monic polynomial in units of the ensemble weight mass.

    Derived from the classical norms through the monic rescalings.
    """
    if spec.kind == "GUE":
        return Fraction(factorial(n)) / spec.scale**n
    if spec.kind == "LUE":
        return factorial(n) * rising(spec.gamma + 1, n) / (2 * spec.scale) ** (2 * n)
    g = spec.gamma1 + spec.gamma2
    c = factorial(n) / rising(n + g + 1, n)
    return c * c * classical_norm("JUE", n, gamma1=spec.gamma1, gamma2=spec.gamma2)


@dataclass
class OrthogonalityReport:
    family: str
    normalization: str
    n_max: int
    gram: Tuple[Tuple[Fraction, ...], ...]
    expected_norms: Tuple[Fraction, ...]
    unit: str

    @property
    def ok(self) -> bool:
        n = len(self.gram)
        return all(
            self.gram[i][j] == (self.expected_norms[i] if i == j else 0) for i in range(n) for j in range(n)
        )


def check_orthogonality(spec: EnsembleSpec, n_max: int, normalization: str = "monic") -> OrthogonalityReport:
    """Exact Gram matrix of phi_0..phi_{n_max} under the weight moment functional.

    ``normalization="classical"`` checks H_n, L_n^{(g)}, J_n against their
    stated norms (weights exp(-x^2/2), x^g exp(-x), x^g1 (1-x)^g2);
    ``"monic"`` checks the ensemble polynomials against :func:`monic_norm`.
    """
    if n_max > 12:
        raise DomainError("n_max above 12 is outside the supported range")
    classical = normalization == "classical"
    if classical:
        builders = {
            "GUE": lambda n: hermite_classical(n),
            "LUE": lambda n: laguerre_classical(n, spec.gamma),
            "JUE": lambda n: jacobi_classical(n, spec.gamma1, spec.gamma2),
        }
        polys = [builders[spec.kind](n) for n in range(n_max + 1)]
        norms = tuple(
            classical_norm(spec.kind, n, spec.gamma, spec.gamma1, spec.gamma2) for n in range(n_max + 1)
        )
    else:
        polys = [monic(spec, n) for n in range(n_max + 1)]
        norms = tuple(monic_norm(spec, n) for n in range(n_max + 1))
    functional = WeightMomentFunctional(spec, classical=classical)
    gram = tuple(tuple(functional.inner(a, b) for b in polys) for a in polys)
    return OrthogonalityReport(spec.family, normalization, n_max, gram, norms, functional.unit)


# --- brute-force ensemble expectations ---------------------------------------

MultiPoly = Dict[Tuple[int, ...], Fraction]


def multipoly_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    out: MultiPoly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def vandermonde_squared(n: int) -> MultiPoly:
    out: MultiPoly = {(0,) * n: Fraction(1)}
    for i in range(n):
        for j in range(i + 1, n):
            ei = tuple(1 if k == i else 0 for k in range(n))
            ej = tuple(1 if k == j else 0 for k in range(n))
            diff = {ei: Fraction(1), ej: Fraction(-1)}
            out = multipoly_mul(out, multipoly_mul(diff, diff))
    return out


def ensemble_expectation(spec: EnsembleSpec, f: MultiPoly) -> Fraction:
    """E[f(x_1..x_n)] over the eigenvalue density, by exact monomial integration.

    ``n = spec.N`` variables with density proportional to Delta^2 prod w(x_j).
    Expands the integrand fully, so it is only practical for n <= 4.
    """
    n = spec.N
    functional = WeightMomentFunctional(spec)
    vd = vandermonde_squared(n)
    cache: Dict[int, Fraction] = {}

    def mom(k):
        if k not in cache:
            cache[k] = functional.moment(k)
        return cache[k]

    def integral(poly):
        total = Fraction(0)
        for e, c in poly.items():
            term = c
            for k in e:
                term *= mom(k)
                if not term:
                    break
            total += term
        return total

    return integral(multipoly_mul(vd, f)) / integral(vd)


def elementary_multipoly(r: int, n: int) -> MultiPoly:
    from itertools import combinations

    out: MultiPoly = {}
    for idx in combinations(range(n), r):
        out[tuple(1 if k in idx else 0 for k in range(n))] = Fraction(1)
    return out


def charpoly_multipoly(t, n: int) -> MultiPoly:
    """prod_j (t - x_j) as a polynomial in x_1..x_n (t a rational number)."""
    t = as_fraction(t)
    out: MultiPoly = {(0,) * n: Fraction(1)}
    for j in range(n):
        ej = tuple(1 if k == j else 0 for k in range(n))
        factor = {(0,) * n: t, ej: Fraction(-1)}
        factor = {e: c for e, c in factor.items() if c}
        out = multipoly_mul(out, factor)
    return out


def multipoly_from_univariate_product(polys: Sequence[Poly]) -> MultiPoly:
    """prod_j p_j(x_j) as a multivariate polynomial."""
    n = len(polys)
    out: MultiPoly = {}
    for exps in iproduct(*(range(len(p.coeffs)) for p in polys)):
        c = Fraction(1)
        for p, e in zip(polys, exps):
            c *= p.coeffs[e]
        if c:
            out[tuple(exps)] = out.get(tuple(exps), 0) + c
    return out
