"""Finite-N moments and correlations of characteristic polynomials.

Three independent routes to E[det(t - M)^p]:

* ``PartitionSum``: sum over nu inside (N^p) of dim V_nu / |nu|! times a
  D determinant, giving the whole polynomial in t at once;
* ``BoxPhi``: the multivariate polynomial Phi_{(N^p)} at p coincident
  points, evaluated through the Schur basis;
* ``DerivativeDet``: the confluent limit of the determinant ratio, a p x p
  determinant of derivatives of the univariate monic polynomials.

Plus the t = 0 closed forms for even GUE moments, the closed j-sums for the
second moment, and the one- and two-point densities built from them.
"""

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import List, Optional, Sequence

from . import combinatorics as cb
from .errors import DomainError, ResourceError
from .exact import Poly, as_fraction, det_exact, frac_str, inv_factorial
from .expansions import C_lambda, G_ratio, d_hermite, d_jacobi_tilde, d_laguerre, phi_eval, schur_eval
from .orthopoly import EnsembleSpec, gue, monic

ROUTES = ("BoxPhi", "PartitionSum", "DerivativeDet", "ClosedFormT0", "AppendixB")

DEFAULT_BUDGET = 10**6


def partition_budget() -> int:
    return int(os.environ.get("RMT_CHARPOLY_PARTITION_BUDGET", DEFAULT_BUDGET))


def _guard(N: int, p: int, budget: Optional[int]):
    budget = partition_budget() if budget is None else budget
    count = cb.box_count(N, p)
    if count > budget:
        raise ResourceError(f"box ({N}^{p}) has {count} sub-partitions, above the budget of {budget}")


@dataclass
class MomentResult:
    ensemble: EnsembleSpec
    p: int
    route: str
    value: object  # Poly, or Fraction at a fixed t
    t: Optional[Fraction] = None

    def to_dict(self):
        out = {"ensemble": self.ensemble.kind, "N": self.ensemble.N, "p": self.p, "route": self.route}
        out.update({k: v for k, v in self.ensemble.describe().items() if k not in ("kind", "N")})
        if isinstance(self.value, Poly):
            out["coefficients"] = self.value.to_strings()
        else:
            out["t"] = frac_str(self.t)
            out["value"] = frac_str(self.value)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


# --- partition sum -------------------------------------------------------------

def _term(spec: EnsembleSpec, p: int, nu) -> Fraction:
    """Coefficient of t^{|nu|} contributed by nu, for lam = (N^p)."""
    N = spec.N
    lam = cb.box(N, p)
    w = cb.weight(nu)
    dim_over = Fraction(cb.dim_V(nu), factorial(w))
    s = spec.scale
    if spec.kind == "GUE":
        diff = N * p - w
        if diff % 2:
            return Fraction(0)
        d = d_hermite(lam, nu)
        if not d:
            return d
        return (-1 / (2 * s)) ** (diff // 2) * dim_over * d
    if spec.kind == "LUE":
        d = d_laguerre(lam, nu)
        if not d:
            return d
        return (-2 * s) ** w * G_ratio(lam, nu, p, spec.gamma) * dim_over * d
    g = spec.gamma1 + spec.gamma2
    d = d_jacobi_tilde(lam, nu, p, g)
    if not d:
        return d
    return (-1) ** w * G_ratio(lam, nu, p, spec.gamma1) * dim_over * d


def _prefactor(spec: EnsembleSpec, p: int) -> Fraction:
    N = spec.N
    c = Fraction(C_lambda(cb.box(N, p), p))
    if spec.kind == "GUE":
        return c
    if spec.kind == "LUE":
        return (-1 / (2 * spec.scale)) ** (N * p) * c
    return (-1) ** (N * p) * c


def moment_coefficient(spec: EnsembleSpec, p: int, k: int) -> Fraction:
    """Coefficient of t^k in E[det(t - M)^p], summing only over |nu| = k."""
    if p < 1:
        raise DomainError("moment order must be >= 1")
    if k < 0 or k > spec.N * p:
        return Fraction(0)
    if spec.kind == "GUE" and (spec.N * p - k) % 2:
        return Fraction(0)
    total = sum((_term(spec, p, nu) for nu in cb.partitions_of(k, spec.N, p)), Fraction(0))
    return _prefactor(spec, p) * total


def moment_poly(spec: EnsembleSpec, p: int, budget: int = None) -> Poly:
    """E[det(t - M)^p] as an exact polynomial of degree N p in t."""
    if p < 1:
        raise DomainError("moment order must be >= 1")
    _guard(spec.N, p, budget)
    N = spec.N
    coeffs = [Fraction(0)] * (N * p + 1)
    filt = "none"
    if spec.kind == "GUE":
        # only |nu| with the parity of N p has non-vanishing D
        filt = "even" if (N * p) % 2 == 0 else "none"
    for nu in cb.partitions_in_box(N, p, filt):
        w = cb.weight(nu)
        if spec.kind == "GUE" and (N * p - w) % 2:
            continue
        coeffs[w] += _term(spec, p, nu)
    pref = _prefactor(spec, p)
    return Poly(c * pref for c in coeffs)


# --- box partition route ------------------------------------------------------------

def correlation(spec: EnsembleSpec, points: Sequence, budget: int = None) -> Fraction:
    """E[prod_j det(t_j - M)] = Phi_{(N^p)}(t_1..t_p) through the Schur basis."""
    pts = [as_fraction(x) for x in points]
    if not pts:
        raise DomainError("need at least one point")
    _guard(spec.N, len(pts), budget)
    return phi_eval(spec, cb.box(spec.N, len(pts)), pts, route="schur")


def moment_box_phi(spec: EnsembleSpec, p: int, t) -> Fraction:
    return correlation(spec, [as_fraction(t)] * p)


# --- derivative determinant -----------------------------------------------------------

def moment_derivative_det(spec: EnsembleSpec, p: int, t) -> Fraction:
    """det[phi_{N+j}^{(i)}(t)]_{i,j<p} / prod_{i<p} i!.

    This is the coincident-point limit of det[phi_{N+j}(t_k)] / prod_{j<k}(t_k - t_j).
    """
    if p < 1:
        raise DomainError("moment order must be >= 1")
    t = as_fraction(t)
    rows = []
    polys = [monic(spec, spec.N + j) for j in range(p)]
    for i in range(p):
        rows.append([q(t) for q in polys])
        polys = [q.derivative() for q in polys]
    return det_exact(rows) / prod(factorial(i) for i in range(p))


def moment(spec: EnsembleSpec, p: int, t=None, route: str = "PartitionSum") -> MomentResult:
    """Dispatch to one route and wrap the result."""
    if route == "PartitionSum":
        poly = moment_poly(spec, p)
        if t is None:
            return MomentResult(spec, p, route, poly)
        t = as_fraction(t)
        return MomentResult(spec, p, route, poly(t), t)
    if t is None:
        raise DomainError(f"route {route} needs a value of t")
    t = as_fraction(t)
    if route == "BoxPhi":
        return MomentResult(spec, p, route, moment_box_phi(spec, p, t), t)
    if route == "DerivativeDet":
        return MomentResult(spec, p, route, moment_derivative_det(spec, p, t), t)
    if route == "ClosedFormT0":
        if spec.kind != "GUE" or t != 0 or p % 2:
            raise DomainError("closed form exists only for even GUE moments at t = 0")
        return MomentResult(spec, p, route, gue_moment_t0(spec.N, p // 2), t)
    if route == "AppendixB":
        if spec.kind != "GUE" or p != 2:
            raise DomainError("the finite-sum route covers only the GUE second moment")
        poly = second_moment_poly(spec.N)
        return MomentResult(spec, p, route, poly(t), t)
    raise DomainError(f"unknown route {route!r}")


# --- t = 0 closed forms -----------------------------------------------------------

def d_even(N: int, p: int) -> Fraction:
    """D_e(N) = prod_{j<p} j!^2 / (m+j)!^2 for N = 2m."""
    if N % 2:
        raise DomainError("D_e is defined for even N")
    m = N // 2
    return prod((Fraction(factorial(j), factorial(m + j)) ** 2 for j in range(p)), start=Fraction(1))


def d_odd(N: int, p: int) -> Fraction:
    """D_o(N) = (-1)^p m!/(m+p)! prod_{j<p} j!^2/(m+j)!^2 for N = 2m+1."""
    if N % 2 == 0:
        raise DomainError("D_o is defined for odd N")
    m = (N - 1) // 2
    base = prod((Fraction(factorial(j), factorial(m + j)) ** 2 for j in range(p)), start=Fraction(1))
    return (-1) ** p * Fraction(factorial(m), factorial(m + p)) * base


def d_box(N: int, p: int) -> Fraction:
    """D_e or D_o according to the parity of N."""
    return d_even(N, p) if N % 2 == 0 else d_odd(N, p)


def gamma_p(p: int) -> Fraction:
    """prod_{j<p} j!/(p+j)!."""
    return prod((Fraction(factorial(j), factorial(p + j)) for j in range(p)), start=Fraction(1))


def cd_exact(N: int, p: int) -> Fraction:
    """C_{(N^{2p})}(2p) times D_e or D_o."""
    return C_lambda(cb.box(N, 2 * p), 2 * p) * d_box(N, p)


def cd_factorial_form(N: int, p: int) -> Fraction:
    """The same quantity written as ratios of factorials (gamma_p explicit)."""
    if N % 2 == 0:
        m = N // 2
        out = Fraction(1)
        for j in range(p):
            out *= Fraction(factorial(2 * m + j) * factorial(2 * m + p + j), factorial(m + j) ** 2)
            out *= Fraction(factorial(j), factorial(p + j))
        return out
    m = (N - 1) // 2
    out = (-1) ** p * Fraction(factorial(m), factorial(m + p))
    for j in range(p):
        out *= Fraction(factorial(2 * m + 1 + j) * factorial(2 * m + 1 + p + j), factorial(m + j) ** 2)
        out *= Fraction(factorial(j), factorial(p + j))
    return out


def gue_moment_t0(N: int, p: int) -> Fraction:
    """E[det M^{2p}] for the N x N GUE, exactly."""
    if N < 1 or p < 1:
        raise DomainError("need N, p >= 1")
    return Fraction(-1, 2 * N) ** (N * p) * cd_exact(N, p)


# --- second moment (p = 1) closed sums -----------------------------------------------

def second_moment_coeff(N: int, k: int) -> Fraction:
    """Coefficient of t^{2k} in E[det(t-M)^2], divided by (-1/2N)^N C_{(N,N)}(2) D_{(N,N),0}.

    Evaluated from the closed single sums over j (separate forms for even and
    odd N); 1/n! is taken as 0 for negative n.
    """
    if N < 1:
        raise DomainError("N must be positive")
    if k < 0 or k > N:
        return Fraction(0)
    f, g = factorial, inv_factorial
    total = Fraction(0)
    if N % 2 == 0:
        m = N // 2
        for j in range((k - 1) // 2 + 1 if k >= 1 else 0):
            a = Fraction(2 * k + 1 - 4 * j, f(2 * k + 1 - 2 * j) * f(2 * j))
            b = Fraction(2 * k - 1 - 4 * j, f(2 * k - 2 * j) * f(2 * j + 1))
            total += (a - b) * f(m) ** 2 * g(m - k + j) * g(m - j)
        if k % 2 == 0:
            total += Fraction(1, f(k) * f(k + 1)) * f(m) ** 2 * g(m - k // 2) ** 2
    else:
        m = (N - 1) // 2
        for j in range((k - 2) // 2 + 1 if k >= 2 else 0):
            a = Fraction(2 * k - 1 - 4 * j, f(2 * k - 2 * j) * f(2 * j + 1))
            b = Fraction(2 * k - 3 - 4 * j, f(2 * k - 2 * j - 1) * f(2 * j + 2))
            total += (b - a) * f(m) * f(m + 1) * g(m + 1 - k + j) * g(m - j)
        total += Fraction(1, f(2 * k)) * f(m) * g(m - k)
        if k % 2 == 1:
            total -= Fraction(1, f(k) * f(k + 1)) * f(m) * f(m + 1) * g(m - (k - 1) // 2) ** 2
    return (-2 * Fraction(N)) ** k * total


def second_moment_poly(N: int) -> Poly:
    """E[det(t-M)^2] for the GUE assembled from :func:`second_moment_coeff`."""
    pref = Fraction(-1, 2 * N) ** N * C_lambda((N, N), 2) * d_hermite((N, N), ())
    coeffs = [Fraction(0)] * (2 * N + 1)
    for k in range(N + 1):
        coeffs[2 * k] = pref * second_moment_coeff(N, k)
    return Poly(coeffs)


# --- correlation functions --------------------------------------------------------

@dataclass
class DensityResult:
    """An exact density: rational part times a symbolic transcendental unit."""

    rational: object  # Poly in t (one point) or Fraction (two points)
    unit: str
    N: int
    points: List[Fraction] = field(default_factory=list)

    def evaluate(self, t=None) -> float:
        import math

        N = self.N
        if isinstance(self.rational, Poly):
            x = float(t)
            return float(self.rational(as_fraction(t))) * math.sqrt(N / (2 * math.pi)) * math.exp(-N * x * x / 2)
        s = sum(float(x) ** 2 for x in self.points)
        return float(self.rational) / (2 * math.pi) * math.exp(-N * s / 2)


def one_point_density(N: int) -> DensityResult:
    """R_1 for the N x N GUE as (polynomial in t) * sqrt(N/(2 pi)) * exp(-N t^2/2).

    The size-(N-1) second moment is taken with the size-N weight exp(-N x^2/2),
    which is what integrating one eigenvalue out of the size-N density leaves.
    """
    if N < 1:
        raise DomainError("N must be positive")
    sub = gue(N - 1, scale=N) if N > 1 else None
    # N * Z_{N-1}/Z_N = N^N / N! / sqrt(2 pi / N), with both partition functions at scale N
    ratio = Fraction(N**N, factorial(N))
    if sub is None:
        second = Poly([1])
    else:
        second = moment_poly(sub, 2)
    return DensityResult(second * ratio, "sqrt(N/(2*pi))*exp(-N*t^2/2)", N)


def two_point_density(N: int, t1, t2) -> DensityResult:
    """R_2(t1, t2) for the N x N GUE as rational * exp(-N(t1^2+t2^2)/2) / (2 pi)."""
    if N < 2:
        raise DomainError("two-point density needs N >= 2")
    t1, t2 = as_fraction(t1), as_fraction(t2)
    # N!/(N-2)! * Z_{N-2}/Z_N at scale N = N^{2N-2} / ((N-2)! (N-1)!) / (2 pi)
    ratio = Fraction(N ** (2 * N - 2), factorial(N - 2) * factorial(N - 1))
    if N == 2:
        e = Fraction(1)
    else:
        e = correlation(gue(N - 2, scale=N), [t1, t1, t2, t2])
    return DensityResult(ratio * (t1 - t2) ** 2 * e, "exp(-N*(t1^2+t2^2)/2)/(2*pi)", N, [t1, t2])


def correlation_function(N: int, points: Sequence) -> DensityResult:
    """p-point correlation of the N x N GUE for p = len(points) <= 2."""
    if len(points) == 1:
        d = one_point_density(N)
        d.points = [as_fraction(points[0])]
        return d
    if len(points) == 2:
        return two_point_density(N, *points)
    raise DomainError("correlation functions are provided for p <= 2 only")


def one_point_density_relation(N: int, t) -> Fraction:
    """Rational part of R_1(t); multiply by sqrt(N/(2 pi)) exp(-N t^2/2) for the density."""
    if N < 2:
        raise DomainError("the relation needs N >= 2")
    return one_point_density(N).rational(as_fraction(t))


# --- box-partition D ratios ----------------------------------------------------------

TABLE_PARTITIONS = ((), (2,), (1, 1), (4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))


def table_ratio(nu, N: int, p: int) -> Fraction:
    """Closed form of D^(H)_{lam nu} / D_{e|o} for lam = (N^{2p}), |nu| <= 4.

    Written in m = floor(N/2); the two columns are N = 2m and N = 2m + 1.
    """
    nu = cb.partition(nu)
    m = N // 2
    odd = N % 2
    half = Fraction(1, 2)
    table = {
        (): (1, 1),
        (2,): (m * p, m * p),
        (1, 1): (-m * p, -(m + 1) * p),
        (4,): (half * m * (m - 1) * p * (p + 1),) * 2,
        (3, 1): (-half * m * (m - 1) * p * (p + 1), -half * m * (m + 1) * p * (p + 1)),
        (2, 2): (m * m * p * p, m * (m + 1) * p * p),
        (2, 1, 1): (-half * m * (m + 1) * p * (p - 1),) * 2,
        (1, 1, 1, 1): (half * m * (m + 1) * p * (p - 1), half * (m + 2) * (m + 1) * p * (p - 1)),
    }
    if nu not in table:
        raise DomainError(f"no closed form stored for nu = {nu}")
    return Fraction(table[nu][odd])


def table_check(N: int, p: int):
    """[(nu, computed ratio, closed form)] for the stored partitions."""
    lam = cb.box(N, 2 * p)
    base = d_hermite(lam, ())
    return [(nu, d_hermite(lam, nu) / base, table_ratio(nu, N, p)) for nu in TABLE_PARTITIONS]
