"""Exact rational kernel: scalars, dense univariate polynomials, determinants.

Scalars are :class:`fractions.Fraction`, which already keeps every value in
lowest terms with a positive denominator. Polynomials are immutable dense
coefficient tuples. Determinants use fraction-free (Bareiss) elimination on
an integer matrix obtained by clearing row denominators.
"""

from fractions import Fraction
from math import factorial, lcm
from typing import Iterable, Sequence

from .errors import DimensionError, DomainError

__all__ = [
    "Fraction",
    "as_fraction",
    "frac_str",
    "Poly",
    "det_exact",
    "cofactor_det",
    "poly_arith",
    "rising",
    "gamma_ratio",
    "inv_factorial",
]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-3/7"`` to a Fraction.

    Floats are rejected: the exact path never accepts rounded input.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError("booleans are not exact scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational literal: {value!r}") from exc
    if isinstance(value, float):
        raise DomainError(f"floating point value {value!r} rejected in exact path")
    raise DomainError(f"cannot interpret {value!r} as an exact scalar")


def frac_str(x: Fraction) -> str:
    """Serialize as ``num/den`` (``num`` alone when the denominator is 1)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def inv_factorial(n: int) -> Fraction:
    """1/n! with the convention 1/n! = 0 for negative integers n."""
    if n < 0:
        return Fraction(0)
    return Fraction(1, factorial(n))


def rising(a, k: int) -> Fraction:
    """Pochhammer symbol (a)_k = a (a+1) ... (a+k-1) for integer k >= 0."""
    if k < 0:
        raise DomainError("rising factorial needs k >= 0")
    a = as_fraction(a)
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


def gamma_ratio(a, b) -> Fraction:
    """Gamma(a) / Gamma(b) for rationals with a - b an integer.

    Poles in the numerator are an error; poles in the denominator give 0.
    """
    a, b = as_fraction(a), as_fraction(b)
    d = a - b
    if d.denominator != 1:
        raise DomainError(f"Gamma ratio with non-integer shift {d}")
    d = int(d)

    def is_pole(z):
        return z.denominator == 1 and z <= 0

    if is_pole(a):
        raise DomainError(f"Gamma pole at {a}")
    if is_pole(b):
        return Fraction(0)
    if d >= 0:
        return rising(b, d)
    return 1 / rising(a, -d)


class Poly:
    """Dense univariate polynomial with Fraction coefficients.

    ``coeffs[k]`` multiplies ``t**k``; trailing zeros are trimmed so the zero
    polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def t(cls) -> "Poly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[frac_str(c) for c in self.coeffs]})"

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly([as_fraction(other)])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_fraction(other)
            return Poly(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly([1])
        for _ in range(n):
            out = out * self
        return out

    def derivative(self) -> "Poly":
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def __call__(self, x) -> Fraction:
        x = as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_scale(self, s) -> "Poly":
        """p(s t) as a polynomial in t."""
        s = as_fraction(s)
        return Poly(c * s**k for k, c in enumerate(self.coeffs))

    def to_strings(self):
        return [frac_str(c) for c in self.coeffs]


def poly_arith(a: Poly, b=None, op: str = "add", at=None):
    """Dispatch helper mirroring the kernel contract (add|mul|derivative|evaluate)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "derivative":
        return a.derivative()
    if op == "evaluate":
        return a(at)
    raise DomainError(f"unknown polynomial op {op!r}")


def _square(m: Sequence[Sequence]) -> int:
    n = len(m)
    for row in m:
        if len(row) != n:
            raise DimensionError(f"matrix is not square ({n} rows, row of length {len(row)})")
    return n


def det_exact(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant via Bareiss fraction-free elimination.

    Each row is scaled to integers by the lcm of its denominators; the integer
    determinant is then divided by the product of those scales.
    """
    n = _square(m)
    if n == 0:
        return Fraction(1)
    rows = []
    scale = 1
    for row in m:
        fr = [as_fraction(x) for x in row]
        den = lcm(*(x.denominator for x in fr))
        rows.append([x.numerator * (den // x.denominator) for x in fr])
        scale *= den
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = rows[k][k]
        for i in range(k + 1, n):
            ri, rk = rows[i], rows[k]
            lead = ri[k]
            for j in range(k + 1, n):
                # exact division is the Bareiss invariant
                ri[j] = (pivot * ri[j] - lead * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return Fraction(sign * rows[n - 1][n - 1], scale)


def cofactor_det(m: Sequence[Sequence]) -> Fraction:
    """Laplace expansion along the first row; exponential, for cross-checks only."""
    n = _square(m)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return as_fraction(m[0][0])
    total = Fraction(0)
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = as_fraction(m[0][j]) * cofactor_det(minor)
        total += term if j % 2 == 0 else -term
    return total
