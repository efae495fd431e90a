"""Schur polynomials and the Schur <-> multivariate-orthogonal change of basis.

For an ensemble weight, Phi_lam (script H, L or J) is the symmetric
polynomial built from the monic univariate orthogonal polynomials as a ratio
of determinants. It is unitriangular in the Schur basis:

    S_lam = sum_{nu in lam} Psi[lam, nu] Phi_nu
    Phi_lam = sum_{mu in lam} Upsilon[lam, mu] S_mu

Both tables are products of a rational prefactor and a small determinant
(the D matrices). Every Gamma function that appears comes in ratios whose
arguments differ by integers, so all entries are exact rationals; the
determinants are formed from already-normalized entries.
"""

import csv
import io
import threading
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Iterator, Optional, Sequence, Tuple

from . import combinatorics as cb
from .errors import DomainError, SingularPointsError
from .exact import as_fraction, det_exact, frac_str, gamma_ratio, inv_factorial, rising
from .orthopoly import EnsembleSpec, monic

Partition = Tuple[int, ...]


# --- symmetric polynomial evaluation -----------------------------------------

def complete_homogeneous(k: int, points: Sequence[Fraction]) -> Fraction:
    if k < 0:
        return Fraction(0)
    # h_k(x_1..x_n) via h_k^{(i)} = h_k^{(i-1)} + x_i h_{k-1}^{(i)}
    row = [Fraction(1)] + [Fraction(0)] * k
    for x in points:
        for j in range(1, k + 1):
            row[j] += x * row[j - 1]
    return row[k]


def elementary(k: int, points: Sequence[Fraction]) -> Fraction:
    if k < 0 or k > len(points):
        return Fraction(0)
    row = [Fraction(1)] + [Fraction(0)] * k
    for x in points:
        for j in range(k, 0, -1):
            row[j] += x * row[j - 1]
    return row[k]


def schur_jacobi_trudi(lam: Partition, points: Sequence) -> Fraction:
    """S_lam = det[h_{lam_i - i + j}], division free, any points."""
    lam = cb.partition(lam)
    pts = [as_fraction(x) for x in points]
    if len(lam) > len(pts):
        return Fraction(0)
    l = len(lam)
    top = (lam[0] + l) if lam else 0
    h = [complete_homogeneous(k, pts) for k in range(top + 1)]
    m = [[h[lam[i] - i + j] if 0 <= lam[i] - i + j <= top else Fraction(0) for j in range(l)] for i in range(l)]
    return det_exact(m)


def vandermonde(points: Sequence[Fraction]) -> Fraction:
    """prod_{j<k} (t_j - t_k), the sign convention of the determinant ratios."""
    out = Fraction(1)
    for j in range(len(points)):
        for k in range(j + 1, len(points)):
            out *= points[j] - points[k]
    return out


def schur_bialternant(lam: Partition, points: Sequence) -> Fraction:
    pts = [as_fraction(x) for x in points]
    n = len(pts)
    lam = cb.partition(lam)
    if len(lam) > n:
        return Fraction(0)
    lp = cb.padded(lam, n)
    den = vandermonde(pts)
    if den == 0:
        raise SingularPointsError("bialternant needs pairwise distinct points")
    num = det_exact([[x ** (lp[j] + n - 1 - j) for x in pts] for j in range(n)])
    return num / den


def schur_eval(lam: Partition, points: Sequence) -> Fraction:
    """Exact S_lam(points); bialternant for distinct points, Jacobi-Trudi otherwise.

    Returns 0 when lam has more parts than there are points.
    """
    pts = [as_fraction(x) for x in points]
    lam = cb.partition(lam)
    if len(lam) > len(pts):
        return Fraction(0)
    if len(set(pts)) == len(pts):
        return schur_bialternant(lam, pts)
    return schur_jacobi_trudi(lam, pts)


def schur_at_ones(lam: Partition, n: int) -> Fraction:
    """S_lam(1^n) via Jacobi-Trudi with h_k(1^n) = C(n+k-1, k)."""
    lam = cb.partition(lam)
    if len(lam) > n:
        return Fraction(0)
    l = len(lam)

    def h(k):
        return Fraction(comb(n + k - 1, k)) if k >= 0 else Fraction(0)

    return det_exact([[h(lam[i] - i + j) for j in range(l)] for i in range(l)])


# --- constants C and G ---------------------------------------------------------

def C_lambda(lam: Partition, n: int) -> int:
    """prod_{j=1}^{n} (lam_j + n - j)! / (n - j)!; zero when l(lam) > n."""
    lam = cb.partition(lam)
    if len(lam) > n:
        return 0
    out = 1
    for j, part in enumerate(lam, start=1):
        out *= factorial(part + n - j) // factorial(n - j)
    return out


def G_ratio(lam: Partition, nu: Partition, n: int, gamma) -> Fraction:
    """G_lam(n, gamma) / G_nu(n, gamma) with G_lam = prod_j Gamma(lam_j + n - j + gamma + 1)."""
    g = as_fraction(gamma)
    a, b = cb.padded(cb.partition(lam), n), cb.padded(cb.partition(nu), n)
    out = Fraction(1)
    for j in range(1, n + 1):
        out *= gamma_ratio(a[j - 1] + n - j + g + 1, b[j - 1] + n - j + g + 1)
    return out


# --- D determinants ----------------------------------------------------------

def _dims(lam, nu, size):
    lam, nu = cb.partition(lam), cb.partition(nu)
    if not cb.contains(lam, nu):
        return None
    return cb.padded(lam, size), cb.padded(nu, size)


@lru_cache(maxsize=None)
def d_hermite(lam: Partition, nu: Partition) -> Fraction:
    """det[ 1{d even} / (d/2)! ] with d = lam_j - nu_k - j + k, over l(lam) rows."""
    l = len(cb.partition(lam))
    pair = _dims(lam, nu, l)
    if pair is None:
        return Fraction(0)
    a, b = pair

    def entry(j, k):
        d = a[j] - b[k] - j + k
        if d < 0 or d % 2:
            return Fraction(0)
        return inv_factorial(d // 2)

    return det_exact([[entry(j, k) for k in range(l)] for j in range(l)])


@lru_cache(maxsize=None)
def d_laguerre(lam: Partition, nu: Partition) -> Fraction:
    """det[ 1{d >= 0} / d! ] with d = lam_i - nu_j - i + j, over l(lam) rows."""
    l = len(cb.partition(lam))
    pair = _dims(lam, nu, l)
    if pair is None:
        return Fraction(0)
    a, b = pair
    return det_exact([[inv_factorial(a[i] - b[j] - i + j) for j in range(l)] for i in range(l)])


@lru_cache(maxsize=None)
def d_jacobi_psi(lam: Partition, nu: Partition, n: int, g: Fraction) -> Fraction:
    """Column-normalized Psi-side Jacobi determinant.

    Returns prod_k Gamma(2 nu_k + 2n - 2k + g + 2) * det[1{d>=0} / (d! Gamma(2n + lam_j + nu_k - j - k + g + 2))],
    with g = gamma1 + gamma2 and the column factors pulled inside the determinant.
    """
    pair = _dims(lam, nu, n)
    if pair is None:
        return Fraction(0)
    a, b = pair

    def entry(j, k):
        d = a[j - 1] - b[k - 1] - j + k
        if d < 0:
            return Fraction(0)
        base = 2 * b[k - 1] + 2 * n - 2 * k + g + 2
        return 1 / (factorial(d) * rising(base, d))

    return det_exact([[entry(j, k) for k in range(1, n + 1)] for j in range(1, n + 1)])


@lru_cache(maxsize=None)
def d_jacobi_tilde(lam: Partition, mu: Partition, n: int, g: Fraction) -> Fraction:
    """Row-normalized Upsilon-side Jacobi determinant.

    Returns prod_j 1/Gamma(2 lam_j + 2n - 2j + g + 1) * det[1{d>=0} Gamma(2n + lam_j + mu_k - j - k + g + 1) / d!].
    """
    pair = _dims(lam, mu, n)
    if pair is None:
        return Fraction(0)
    a, b = pair

    def entry(j, k):
        d = a[j - 1] - b[k - 1] - j + k
        if d < 0:
            return Fraction(0)
        top = 2 * n + a[j - 1] + b[k - 1] - j - k + g + 1
        return 1 / (factorial(d) * rising(top, d))

    return det_exact([[entry(j, k) for k in range(1, n + 1)] for j in range(1, n + 1)])


def d_matrix(family: str, lam: Partition, nu: Partition, n: int = None, g=0) -> Fraction:
    """Family dispatcher: ``H``, ``L``, ``J`` (Psi side) or ``Jt`` (Upsilon side).

    The Jacobi variants are returned normalized as described in
    :func:`d_jacobi_psi` / :func:`d_jacobi_tilde`; ``n`` is the number of variables.
    """
    lam, nu = cb.partition(lam), cb.partition(nu)
    if family == "H":
        return d_hermite(lam, nu)
    if family == "L":
        return d_laguerre(lam, nu)
    if family in ("J", "Jt"):
        if n is None:
            raise DomainError("Jacobi D determinant needs the number of variables")
        fn = d_jacobi_psi if family == "J" else d_jacobi_tilde
        return fn(lam, nu, n, as_fraction(g))
    raise DomainError(f"unknown family {family!r}")


# --- change-of-basis coefficients ------------------------------------------------

def _check_vars(lam, n):
    if len(lam) > n:
        raise DomainError(f"{lam} needs more than {n} variables")


def psi(spec: EnsembleSpec, lam: Partition, nu: Partition, n: int) -> Fraction:
    """Coefficient of Phi_nu in the expansion of S_lam in n variables."""
    lam, nu = cb.partition(lam), cb.partition(nu)
    _check_vars(lam, n)
    if not cb.contains(lam, nu):
        return Fraction(0)
    diff = cb.weight(lam) - cb.weight(nu)
    s = spec.scale
    if spec.kind == "GUE":
        if diff % 2:
            return Fraction(0)
        return (1 / (2 * s)) ** (diff // 2) * Fraction(C_lambda(lam, n), C_lambda(nu, n)) * d_hermite(lam, nu)
    if spec.kind == "LUE":
        return (
            (1 / (2 * s)) ** diff
            * G_ratio(lam, nu, n, spec.gamma)
            * Fraction(C_lambda(lam, n), C_lambda(nu, n))
            * d_laguerre(lam, nu)
        )
    g = spec.gamma1 + spec.gamma2
    return G_ratio(lam, nu, n, spec.gamma1) * Fraction(C_lambda(lam, n), C_lambda(nu, n)) * d_jacobi_psi(lam, nu, n, g)


def upsilon(spec: EnsembleSpec, lam: Partition, mu: Partition, n: int) -> Fraction:
    """Coefficient of S_mu in Phi_lam in n variables."""
    lam, mu = cb.partition(lam), cb.partition(mu)
    _check_vars(lam, n)
    if not cb.contains(lam, mu):
        return Fraction(0)
    diff = cb.weight(lam) - cb.weight(mu)
    s = spec.scale
    if spec.kind == "GUE":
        if diff % 2:
            return Fraction(0)
        return (-1 / (2 * s)) ** (diff // 2) * Fraction(C_lambda(lam, n), C_lambda(mu, n)) * d_hermite(lam, mu)
    if spec.kind == "LUE":
        return (
            (-1 / (2 * s)) ** diff
            * G_ratio(lam, mu, n, spec.gamma)
            * Fraction(C_lambda(lam, n), C_lambda(mu, n))
            * d_laguerre(lam, mu)
        )
    g = spec.gamma1 + spec.gamma2
    sign = -1 if diff % 2 else 1
    return sign * G_ratio(lam, mu, n, spec.gamma1) * Fraction(C_lambda(lam, n), C_lambda(mu, n)) * d_jacobi_tilde(
        lam, mu, n, g
    )


def sub_partitions(lam: Partition) -> Iterator[Partition]:
    """Every nu contained in lam."""
    lam = cb.partition(lam)

    def rec(i, cap):
        if i == len(lam):
            yield ()
            return
        for first in range(min(cap, lam[i]), 0, -1):
            for rest in rec(i + 1, first):
                yield (first,) + rest
        yield ()

    seen = set()
    for nu in rec(0, lam[0] if lam else 0):
        nu = cb.partition(nu)
        if nu not in seen:
            seen.add(nu)
            yield nu


# --- Phi evaluation --------------------------------------------------------------

def phi_eval(spec: EnsembleSpec, lam: Partition, points: Sequence, route: str = "schur") -> Fraction:
    """Phi_lam(points) for the ensemble's weight.

    ``route="schur"`` (default) sums Upsilon[lam, mu] S_mu and works for any
    points, including coincident ones. ``route="det"`` is the determinant-ratio
    construction from the univariate polynomials; it needs distinct points.
    """
    pts = [as_fraction(x) for x in points]
    lam = cb.partition(lam)
    n = len(pts)
    if len(lam) > n:
        raise DomainError(f"{lam} needs more than {n} variables")
    if route == "schur":
        total = Fraction(0)
        for mu in sub_partitions(lam):
            u = upsilon(spec, lam, mu, n)
            if u:
                total += u * schur_eval(mu, pts)
        return total
    if route == "det":
        den = vandermonde(pts)
        if den == 0:
            raise SingularPointsError("determinant-ratio route needs pairwise distinct points")
        lp = cb.padded(lam, n)
        rows = []
        for j in range(n):
            poly = monic(spec, lp[j] + n - 1 - j)
            rows.append([poly(x) for x in pts])
        return det_exact(rows) / den
    raise DomainError(f"unknown route {route!r}")


# --- tables -------------------------------------------------------------------

class ExpansionTable:
    """Lazily filled, memoized Psi or Upsilon table over the box (boxN^boxP).

    Writes go through a lock; recomputation of a key is idempotent.
    """

    def __init__(self, spec: EnsembleSpec, boxN: int, boxP: int, direction: str = "psi", n_vars: int = None):
        if direction not in ("psi", "upsilon"):
            raise DomainError(f"direction must be psi or upsilon, got {direction!r}")
        self.spec = spec
        self.boxN = boxN
        self.boxP = boxP
        self.direction = direction
        self.n_vars = boxP if n_vars is None else n_vars
        if self.n_vars < boxP:
            raise DomainError("need at least boxP variables")
        self._entries: Dict[Tuple[Partition, Partition], Fraction] = {}
        self._lock = threading.Lock()

    @property
    def family(self):
        return self.spec.family

    def __getitem__(self, key) -> Fraction:
        lam, nu = cb.partition(key[0]), cb.partition(key[1])
        k = (lam, nu)
        try:
            return self._entries[k]
        except KeyError:
            pass
        fn = psi if self.direction == "psi" else upsilon
        val = fn(self.spec, lam, nu, self.n_vars)
        with self._lock:
            self._entries.setdefault(k, val)
        return val

    def partitions(self):
        return list(cb.partitions_in_box(self.boxN, self.boxP))

    def rows(self, lam_filter=None):
        """Yield (lam, nu, value) for nonzero entries, in iterator order."""
        parts = self.partitions()
        for lam in parts:
            if lam_filter is not None and lam != cb.partition(lam_filter):
                continue
            for nu in parts:
                if cb.contains(lam, nu):
                    v = self[lam, nu]
                    if v:
                        yield lam, nu, v

    def to_csv(self, lam_filter=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lambda", "nu", "value"])
        for lam, nu, v in self.rows(lam_filter):
            w.writerow([partition_str(lam), partition_str(nu), frac_str(v)])
        return buf.getvalue()


def partition_str(lam: Partition) -> str:
    return "[" + ",".join(str(x) for x in lam) + "]"


# --- dual Cauchy ------------------------------------------------------------------

def dual_cauchy_sides(spec: Optional[EnsembleSpec], t_points: Sequence, x_points: Sequence):
    """Both sides of prod_{i,j}(t_i - x_j) = sum_lam (-1)^{|lam~|} F_lam(t) F_lam~(x).

    ``F`` is the Schur polynomial when ``spec`` is None and the multivariate
    orthogonal polynomial of ``spec`` otherwise. Returns (lhs, rhs).
    """
    t = [as_fraction(v) for v in t_points]
    x = [as_fraction(v) for v in x_points]
    p, N = len(t), len(x)
    lhs = Fraction(1)
    for a in t:
        for b in x:
            lhs *= a - b

    def f(lam, pts):
        return schur_eval(lam, pts) if spec is None else phi_eval(spec, lam, pts)

    rhs = Fraction(0)
    for lam in cb.partitions_in_box(N, p):
        lt = cb.tilde(lam, N, p)
        term = f(lam, t) * f(lt, x)
        rhs += -term if cb.weight(lt) % 2 else term
    return lhs, rhs
