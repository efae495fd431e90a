"""Large-N series for the t = 0 normalization and the parity-averaged moments.

The GUE even moments carry the factor C_{(N^{2p})}(2p) D_{e|o}(N), whose
large-N behaviour is

    (+-1)^p e^{-Np} (2N)^{Np+p^2} gamma_p * [1 + sum_k c_k N^{-k}]

with different coefficient sequences for even and odd N. Stored tables
hold c_k as exact polynomials in p (k <= 6) and as numbers for p = 1
(k <= 9). :func:`cd_series_generated` recomputes any coefficient from
Stirling's series with Bernoulli polynomials, which is how the tables are
audited.

:func:`semicircle_recovery` multiplies the exact finite-N t-expansion
(interpolated in N from the partition-sum route) by these series, averages
the two parities coefficient-wise and reads off the N -> infinity limit.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Sequence, Tuple

from .errors import DomainError, OrderStarvationError, ResourceError
from .exact import Poly, as_fraction, frac_str
from .moments import cd_exact, gamma_p, moment_coefficient
from .orthopoly import gue

PARITIES = ("even", "odd")


# --- Bernoulli ---------------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """B_n with B_1 = -1/2."""
    if n == 0:
        return Fraction(1)
    return -sum((comb(n + 1, k) * bernoulli_number(k) for k in range(n)), Fraction(0)) / (n + 1)


@lru_cache(maxsize=None)
def bernoulli_poly(n: int) -> Poly:
    """B_n(h) = sum_k C(n, k) B_k h^{n-k}."""
    return Poly(comb(n, n - j) * bernoulli_number(n - j) for j in range(n + 1))


class BernoulliTable:
    def __init__(self, bound: int = 40):
        self.bound = bound
        self.polys = [bernoulli_poly(j) for j in range(bound + 1)]

    def __getitem__(self, j):
        if j > self.bound:
            raise ResourceError(f"Bernoulli table holds degrees <= {self.bound}")
        return self.polys[j]


# --- series helpers -------------------------------------------------------------

def series_exp(log_coeffs: Sequence[Fraction], order: int) -> List[Fraction]:
    """exp of sum_{r>=1} a_r x^r, truncated to x^order (a_0 ignored)."""
    a = [Fraction(0)] + [Fraction(x) for x in log_coeffs[1:order + 1]]
    a += [Fraction(0)] * (order + 1 - len(a))
    out = [Fraction(1)] + [Fraction(0)] * order
    # n b_n = sum_{k=1}^n k a_k b_{n-k}
    for n in range(1, order + 1):
        out[n] = sum((k * a[k] * out[n - k] for k in range(1, n + 1)), Fraction(0)) / n
    return out


def series_mul(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> List[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j, y in enumerate(b[: order + 1 - i]):
                out[i + j] += x * y
    return out


@dataclass
class AsymptoticSeries:
    """1 + sum_k c_k x^{-k} multiplying a stated leading factor."""

    leading: str
    coefficients: Tuple[Fraction, ...]
    parity: str
    p: object = None
    variable: str = "N"

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def to_dict(self):
        return {
            "leading": self.leading,
            "parity": self.parity,
            "p": self.p,
            "variable": self.variable,
            "order": self.order,
            "coefficients": [frac_str(c) for c in self.coefficients],
        }

    def evaluate(self, x, upto=None):
        upto = self.order if upto is None else upto
        return sum(c / x**k for k, c in enumerate(self.coefficients[: upto + 1]))


def gamma_ratio_series(h1, h2, order: int, table: BernoulliTable = None) -> AsymptoticSeries:
    """Gamma(z+h1)/Gamma(z+h2) = z^{h1-h2} [1 + sum_k c_k z^{-k}] as z -> infinity."""
    h1, h2 = as_fraction(h1), as_fraction(h2)
    table = table or BernoulliTable(max(order + 1, 2))
    if order + 1 > table.bound:
        raise ResourceError(f"order {order} exceeds the Bernoulli table bound")
    logc = [Fraction(0)] * (order + 1)
    for r in range(1, order + 1):
        j = r + 1
        logc[r] = Fraction((-1) ** j, j * (j - 1)) * (table[j](h1) - table[j](h2))
    return AsymptoticSeries(f"z^({h1 - h2})", tuple(series_exp(logc, order)), "n/a", variable="z")


def _stirling_log_coeff(h: Fraction, r: int, table: BernoulliTable) -> Fraction:
    """Coefficient of z^{-r} in log Gamma(z+h) beyond the leading terms."""
    j = r + 1
    return Fraction((-1) ** j, j * (j - 1)) * table[j](h)


def cd_series_generated(p: int, parity: str, order: int) -> AsymptoticSeries:
    """Exact 1/N series of C_{(N^{2p})}(2p) D_{e|o} / [(+-1)^p e^{-Np}(2N)^{Np+p^2} gamma_p].

    Even N: prod_j (N+j)!(N+p+j)!/((N/2+j)!)^2; odd N additionally has
    Gamma(N/2+1/2)/Gamma(N/2+1/2+p) and the denominator Gamma(N/2+j+1/2)^2.
    Each Gamma is expanded with Stirling's series; half-size arguments
    contribute 2^r at order N^{-r}.
    """
    if parity not in PARITIES:
        raise DomainError(f"parity must be even or odd, got {parity!r}")
    table = BernoulliTable(order + 2)
    half = Fraction(1, 2)
    logc = [Fraction(0)] * (order + 1)
    for r in range(1, order + 1):
        acc = Fraction(0)
        two = Fraction(2) ** r
        for j in range(p):
            acc += _stirling_log_coeff(Fraction(j + 1), r, table)
            acc += _stirling_log_coeff(Fraction(p + j + 1), r, table)
            den_h = Fraction(j + 1) if parity == "even" else j + half
            acc -= 2 * two * _stirling_log_coeff(den_h, r, table)
        if parity == "odd":
            acc += two * (_stirling_log_coeff(half, r, table) - _stirling_log_coeff(p + half, r, table))
        logc[r] = acc
    return AsymptoticSeries(_leading(parity), tuple(series_exp(logc, order)), parity, p)


def _leading(parity):
    sign = "(-1)^p " if parity == "odd" else ""
    return sign + "e^(-N p) (2N)^(N p + p^2) gamma_p"


# --- stored tables ---------------------------------------------------------------

def _pp(coeffs_high_first: Sequence[int], p_power: int, den: int):
    """p^{p_power} * (poly in p^2 given high-degree first) / den."""
    return (p_power, tuple(coeffs_high_first), den)


# c_k = p^{a} * Q(p^2) / den, Q listed from the highest power of p^2 down
_EVEN_TABLE = {
    1: _pp([4, 1], 1, 6),
    2: _pp([16, -16, -11], 2, 72),
    3: _pp([320, -1200, 708, 1265, -756], 1, 6480),
    4: _pp([1280, -10240, 25248, -6400, -56371, 51408], 2, 155520),
    5: _pp([7168, -98560, 499072, -982688, -399844, 4606735, -5598936, 1607040], 1, 6531840),
    6: _pp(
        [143360, -3010560, 25294080, -103093760, 158864016, 298943760, -1697420809, 2663679600, -1390123296],
        2,
        1175731200,
    ),
}

_ODD_TABLE = {
    1: _pp([2, -1], 1, 3),
    2: _pp([4, -10, 7], 2, 18),
    3: _pp([40, -240, 516, -455, 108], 1, 810),
    4: _pp([80, -880, 3828, -8356, 9509, -4320], 2, 9720),
    5: _pp([224, -3920, 28616, -113428, 266818, -372127, 255528, -51840], 1, 204120),
    6: _pp([2240, -57120, 628320, -3919160, 15363624, -39481170, 65605589, -62864640, 25046496], 2, 18370800),
}

_P1_EVEN = [
    Fraction(1), Fraction(5, 6), Fraction(-11, 72), Fraction(337, 6480), Fraction(985, 31104),
    Fraction(-360013, 6531840), Fraction(-46723609, 1175731200), Fraction(224766221, 1410877440),
    Fraction(41757020981, 338610585600), Fraction(-889926952101377, 1005673439232000),
]

_P1_ODD = [
    Fraction(1), Fraction(1, 3), Fraction(1, 18), Fraction(-31, 810), Fraction(-139, 9720),
    Fraction(9871, 204120), Fraction(324179, 18370800), Fraction(-8225671, 55112400),
    Fraction(-69685339, 1322697600), Fraction(1674981058019, 1964205936000),
]

SYMBOLIC_ORDER = 6
P1_ORDER = 9


def stored_coefficient(k: int, parity: str, p) -> Fraction:
    """Evaluate the stored polynomial-in-p coefficient c_k at p."""
    table = _EVEN_TABLE if parity == "even" else _ODD_TABLE
    if k == 0:
        return Fraction(1)
    if k not in table:
        raise ResourceError(f"no stored symbolic coefficient for k = {k}")
    a, q, den = table[k]
    p = as_fraction(p)
    x = p * p
    acc = Fraction(0)
    for c in q:
        acc = acc * x + c
    return p**a * acc / den


def stored_coefficient_poly(k: int, parity: str) -> Poly:
    """The stored c_k as a polynomial in p."""
    table = _EVEN_TABLE if parity == "even" else _ODD_TABLE
    if k == 0:
        return Poly([1])
    a, q, den = table[k]
    deg = a + 2 * (len(q) - 1)
    coeffs = [Fraction(0)] * (deg + 1)
    for i, c in enumerate(q):
        coeffs[a + 2 * (len(q) - 1 - i)] = Fraction(c, den)
    return Poly(coeffs)


def cd_series(p: int, parity: str, order: int) -> AsymptoticSeries:
    """Stored series for C_{(N^{2p})}(2p) D_{e|o}; order <= 6 (<= 9 when p = 1)."""
    if parity not in PARITIES:
        raise DomainError(f"parity must be even or odd, got {parity!r}")
    if order < 0:
        raise DomainError("order must be >= 0")
    if p == 1 and order <= P1_ORDER:
        data = _P1_EVEN if parity == "even" else _P1_ODD
        return AsymptoticSeries(_leading(parity), tuple(data[: order + 1]), parity, p)
    if order > SYMBOLIC_ORDER:
        limit = P1_ORDER if p == 1 else SYMBOLIC_ORDER
        raise ResourceError(f"stored series reach order {limit} for p = {p}; requested {order}")
    coeffs = tuple(stored_coefficient(k, parity, p) for k in range(order + 1))
    return AsymptoticSeries(_leading(parity), coeffs, parity, p)


def parity_average(even: AsymptoticSeries, odd: AsymptoticSeries) -> AsymptoticSeries:
    """Coefficient-wise mean of the even-N and odd-N bracketed series."""
    if even.order != odd.order:
        raise ResourceError(f"order mismatch: {even.order} vs {odd.order}")
    if even.p != odd.p:
        raise DomainError("series belong to different p")
    coeffs = tuple((a + b) / 2 for a, b in zip(even.coefficients, odd.coefficients))
    return AsymptoticSeries("e^(-N p) (2N)^(N p + p^2) gamma_p", coeffs, "averaged", even.p)


# --- numerical checks ---------------------------------------------------------------

WORKING_PRECISION = 200


def truncation_error(p: int, N: int, K: int, series: AsymptoticSeries = None):
    """|CD / leading - sum_{k<=K} c_k N^{-k}| in 200-bit floating point."""
    import mpmath

    parity = "even" if N % 2 == 0 else "odd"
    series = series or cd_series(p, parity, K)
    with mpmath.workprec(WORKING_PRECISION):
        exact = cd_exact(N, p)
        val = mpmath.mpf(exact.numerator) / mpmath.mpf(exact.denominator)
        g = gamma_p(p)
        lead = mpmath.exp(-N * p) * mpmath.mpf(2 * N) ** (N * p + p * p) * mpmath.mpf(g.numerator) / g.denominator
        if parity == "odd":
            lead *= (-1) ** p
        partial = mpmath.mpf(0)
        for k in range(K + 1):
            c = series.coefficients[k]
            partial += mpmath.mpf(c.numerator) / c.denominator / mpmath.mpf(N) ** k
        return abs(val / lead - partial)


def observed_order(p: int, K: int, N1: int, N2: int) -> float:
    """Empirical decay exponent of the order-K truncation error between N1 and N2."""
    import mpmath

    with mpmath.workprec(WORKING_PRECISION):
        e1, e2 = truncation_error(p, N1, K), truncation_error(p, N2, K)
        return float(mpmath.log(e1 / e2) / mpmath.log(mpmath.mpf(N2) / N1))


# --- semicircle ----------------------------------------------------------------------

def binomial_series(a, order: int, x_scale=Fraction(-1, 4)) -> Poly:
    """(1 + x_scale t^2)^a through t^order."""
    a = as_fraction(a)
    coeffs = [Fraction(0)] * (order + 1)
    c = Fraction(1)
    for k in range(order // 2 + 1):
        coeffs[2 * k] = c * x_scale**k
        c = c * (a - k) / (k + 1)
    return Poly(coeffs)


def semicircle_taylor(order: int) -> Poly:
    """Taylor coefficients of pi * rho_sc(t) = sqrt(1 - t^2/4) through t^order."""
    if order % 2:
        raise DomainError("order must be even")
    return binomial_series(Fraction(1, 2), order)


# --- exact finite-N t-expansion as polynomials in N ----------------------------------

def _lagrange(nodes: Sequence[int], values: Sequence[Fraction]) -> Poly:
    result = Poly()
    for i, xi in enumerate(nodes):
        basis = Poly([1])
        den = Fraction(1)
        for j, xj in enumerate(nodes):
            if j != i:
                basis = basis * Poly([-xj, 1])
                den *= xi - xj
        result = result + basis * (values[i] / den)
    return result


@lru_cache(maxsize=None)
def moment_bracket(p: int, K: int, parity: str) -> Poly:
    """Coefficient of t^{2K} in E[det(t-M)^{2p}] / E[det M^{2p}], as a polynomial in N.

    Built by exact interpolation over N of the given parity from the
    partition-sum route (all partitions of weight 2K fit once N >= 2K), then
    confirmed at three further N.
    """
    deg = 2 * K
    start = max(2 * K, 2)
    if (start % 2 == 0) != (parity == "even"):
        start += 1
    nodes = [start + 2 * i for i in range(deg + 4)]
    values = []
    for N in nodes:
        spec = gue(N)
        values.append(moment_coefficient(spec, 2 * p, 2 * K) / moment_coefficient(spec, 2 * p, 0))
    poly = _lagrange(nodes[: deg + 1], values[: deg + 1])
    for N, v in zip(nodes[deg + 1:], values[deg + 1:]):
        if poly(N) != v:
            raise ArithmeticError(f"bracket for p={p}, K={K}, {parity} N is not a polynomial of degree <= {deg}")
    return poly


Laurent = Dict[int, Fraction]


@dataclass
class ParityExpansion:
    """t-coefficients of one parity (or their average) as Laurent series in N.

    ``coeffs[K]`` maps a power of N to its coefficient; powers below
    ``exact_from[K]`` are not determined by the series order used.
    """

    p: int
    parity: str
    coeffs: List[Laurent]
    exact_from: List[int]

    def leading_part(self, K: int) -> Laurent:
        return {e: c for e, c in self.coeffs[K].items() if e >= 0 and c}


def _poly_times_series(poly: Poly, series: Sequence[Fraction]) -> Tuple[Laurent, int]:
    out: Laurent = {}
    for a, ca in enumerate(poly.coeffs):
        if not ca:
            continue
        for k, ck in enumerate(series):
            out[a - k] = out.get(a - k, 0) + ca * ck
    return {e: c for e, c in out.items() if c}, (poly.degree - (len(series) - 1)) if poly.coeffs else 0


def parity_expansion(p: int, parity: str, t_order: int, n_order: int, damp: bool) -> ParityExpansion:
    """E[det(t-M)^{2p}] / [(2N)^{p^2} e^{-Np} gamma_p], optionally times e^{-N p t^2/2}.

    Each t^{2K} coefficient is a polynomial in N times the order-``n_order``
    1/N series, expanded as a Laurent series in N.
    """
    if t_order % 2:
        raise DomainError("t order must be even")
    series = cd_series(p, parity, n_order).coefficients
    coeffs, floors = [], []
    brackets = [moment_bracket(p, K, parity) for K in range(t_order // 2 + 1)]
    for K in range(t_order // 2 + 1):
        poly = Poly()
        for j in range(K + 1):
            i = K - j
            if i and not damp:
                continue
            factor = Poly.monomial(i, Fraction(-p, 2) ** i / factorial(i))
            poly = poly + factor * brackets[j]
        lau, floor = _poly_times_series(poly, series)
        coeffs.append(lau)
        floors.append(floor)
    return ParityExpansion(p, parity, coeffs, floors)


def average_expansions(a: ParityExpansion, b: ParityExpansion) -> ParityExpansion:
    out, floors = [], []
    for ca, cb_, fa, fb in zip(a.coeffs, b.coeffs, a.exact_from, b.exact_from):
        keys = set(ca) | set(cb_)
        out.append({e: (ca.get(e, 0) + cb_.get(e, 0)) / 2 for e in keys if ca.get(e, 0) + cb_.get(e, 0)})
        floors.append(max(fa, fb))
    return ParityExpansion(a.p, "averaged", out, floors)


@dataclass
class RecoveryReport:
    p: int
    t_order: int
    n_order: int
    limit: List[Fraction]
    target: List[Fraction]
    divergent: Dict[int, Laurent] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.limit == self.target and not self.divergent

    def to_dict(self):
        return {
            "p": self.p,
            "t_order": self.t_order,
            "n_order": self.n_order,
            "limit": [frac_str(x) for x in self.limit],
            "target": [frac_str(x) for x in self.target],
            "divergent_terms": {
                str(2 * K): {str(e): frac_str(c) for e, c in sorted(d.items())} for K, d in self.divergent.items()
            },
            "ok": self.ok,
        }


def required_n_order(p: int, t_order: int, floor: int = 0) -> int:
    """Smallest series order that fixes every t-coefficient down to N^floor."""
    need = 0
    for parity in PARITIES:
        for K in range(t_order // 2 + 1):
            deg = max(
                (moment_bracket(p, j, parity).degree + (K - j) for j in range(K + 1) if moment_bracket(p, j, parity).coeffs),
                default=0,
            )
            need = max(need, deg - floor)
    return need


def semicircle_recovery(p: int, t_order: int, n_order: int = None) -> RecoveryReport:
    """Average the damped even/odd expansions and compare the N -> infinity limit
    with the Taylor series of (pi rho_sc(t))^{p^2}.

    Positive powers of N must cancel in the average; any survivors are
    reported in ``divergent``.
    """
    if p < 1:
        raise DomainError("p must be >= 1")
    if t_order % 2:
        raise DomainError("t order must be even")
    need = required_n_order(p, t_order)
    limit_order = P1_ORDER if p == 1 else SYMBOLIC_ORDER
    if n_order is None:
        n_order = need
    if need > n_order or need > limit_order:
        raise OrderStarvationError(
            f"t order {t_order} at p = {p} needs the 1/N series through order {need}"
            f" (requested {n_order}, stored up to {limit_order})",
            need,
        )
    even = parity_expansion(p, "even", t_order, n_order, damp=True)
    odd = parity_expansion(p, "odd", t_order, n_order, damp=True)
    avg = average_expansions(even, odd)
    target = binomial_series(Fraction(p * p, 2), t_order).coeffs
    target = [target[2 * K] if 2 * K < len(target) else Fraction(0) for K in range(t_order // 2 + 1)]
    limit, divergent = [], {}
    for K in range(t_order // 2 + 1):
        lead = avg.leading_part(K)
        limit.append(lead.get(0, Fraction(0)))
        pos = {e: c for e, c in lead.items() if e > 0}
        if pos:
            divergent[K] = pos
    return RecoveryReport(p, t_order, n_order, limit, target, divergent)


def subleading_bracket(p: int, t_order: int, n_order: int) -> List[Laurent]:
    """Averaged expansion divided by e^{Np t^2/2} (pi rho_sc)^{p^2}, per t^{2K}.

    Returns Laurent series in N, each truncated at the power below which the
    series order stops determining it.
    """
    even = parity_expansion(p, "even", t_order, n_order, damp=True)
    odd = parity_expansion(p, "odd", t_order, n_order, damp=True)
    avg = average_expansions(even, odd)
    inv_rho = binomial_series(Fraction(-p * p, 2), t_order).coeffs
    out = []
    for K in range(t_order // 2 + 1):
        acc: Laurent = {}
        floor = -10**9
        for j in range(K + 1):
            r = inv_rho[2 * (K - j)] if 2 * (K - j) < len(inv_rho) else Fraction(0)
            if not r:
                continue
            floor = max(floor, avg.exact_from[j])
            for e, c in avg.coeffs[j].items():
                acc[e] = acc.get(e, 0) + r * c
        out.append({e: c for e, c in acc.items() if c and e >= floor})
    return out


def parity_leading_brackets(p: int, t_order: int, n_order: int = None) -> Dict[str, List[Laurent]]:
    """Non-negative powers of N in each t-coefficient, per parity, without damping."""
    n_order = SYMBOLIC_ORDER if n_order is None else n_order
    out = {}
    for parity in PARITIES:
        exp = parity_expansion(p, parity, t_order, n_order, damp=False)
        for K, floor in enumerate(exp.exact_from):
            if floor > 0:
                raise OrderStarvationError(
                    f"t^{2 * K} coefficient needs series order {n_order + floor}", n_order + floor
                )
        out[parity] = [exp.leading_part(K) for K in range(t_order // 2 + 1)]
    return out
