"""Partitions, Young diagrams, Kostka numbers and symmetric-group characters.

Partitions are plain tuples of positive integers in weakly decreasing order.
:func:`partition` normalizes any integer sequence (dropping trailing zeros)
and should be used at every public boundary.
"""

from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterator, Sequence, Tuple

from .errors import ContainmentError, DomainError

Partition = Tuple[int, ...]


def partition(parts: Sequence[int] = ()) -> Partition:
    parts = tuple(int(x) for x in parts)
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    for a, b in zip(parts, parts[1:]):
        if a < b:
            raise DomainError(f"{parts} is not weakly decreasing")
    if parts and parts[-1] < 0:
        raise DomainError(f"{parts} has negative parts")
    return parts


def weight(lam: Partition) -> int:
    return sum(lam)


def padded(lam: Partition, n: int) -> Tuple[int, ...]:
    """``lam`` padded with zeros to length ``n`` (must already fit)."""
    if len(lam) > n:
        raise ContainmentError(f"{lam} has more than {n} parts")
    return tuple(lam) + (0,) * (n - len(lam))


def contains(lam: Partition, mu: Partition) -> bool:
    """True when the diagram of ``mu`` sits inside the diagram of ``lam``."""
    if len(mu) > len(lam):
        return False
    return all(m <= l for l, m in zip(lam, mu))


def box(n: int, p: int) -> Partition:
    """The rectangle (n^p): p rows of length n."""
    return (n,) * p if n > 0 else ()


def conjugate(lam: Partition) -> Partition:
    lam = partition(lam)
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > i) for i in range(lam[0]))


def tilde(lam: Partition, N: int, p: int) -> Partition:
    """Complement of the conjugate inside the (p^N) box.

    For lam inside (N^p) returns (p - lam'_N, ..., p - lam'_1), which lies in
    (p^N); the map is a bijection between the two boxes.
    """
    lam = partition(lam)
    if not contains(box(N, p), lam):
        raise ContainmentError(f"{lam} is not contained in ({N}^{p})")
    conj = padded(conjugate(lam), N)
    return partition(p - conj[N - 1 - i] for i in range(N))


def dominates(lam: Partition, mu: Partition) -> bool:
    if weight(lam) != weight(mu):
        return False
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def dim_V(lam: Partition) -> int:
    """Dimension of the irreducible S_n representation indexed by ``lam``.

    Uses |lam|! prod_{j<k}(lam_j - lam_k - j + k) / prod_j (lam_j + l - j)!.
    """
    lam = partition(lam)
    l = len(lam)
    num = factorial(weight(lam))
    for j in range(l):
        for k in range(j + 1, l):
            num *= lam[j] - lam[k] + k - j
    den = prod(factorial(lam[j] + l - 1 - j) for j in range(l))
    q, r = divmod(num, den)
    assert r == 0
    return q


def hook_length_dim(lam: Partition) -> int:
    lam = partition(lam)
    conj = conjugate(lam)
    hooks = prod(lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i]))
    return factorial(weight(lam)) // hooks


def partitions_of(n: int, max_part: int = None, max_length: int = None) -> Iterator[Partition]:
    """Partitions of n in reverse-lexicographic order."""
    if max_part is None:
        max_part = n
    if max_length is None:
        max_length = n

    def rec(remaining, cap, slots):
        if remaining == 0:
            yield ()
            return
        if slots == 0:
            return
        for first in range(min(remaining, cap), 0, -1):
            if first * slots < remaining:
                break
            for rest in rec(remaining - first, first, slots - 1):
                yield (first,) + rest

    yield from rec(n, max_part, max_length)


def partitions_in_box(N: int, p: int, filter: str = "none", fixed_weight: int = None) -> Iterator[Partition]:
    """Every partition inside (N^p), reverse-lexicographic on the part vector.

    ``filter`` is ``"none"``, ``"even"`` (even weight only) or ``"weight"``
    (exactly ``fixed_weight``). The unfiltered count is C(N+p, p).
    """
    if N < 0 or p < 0:
        raise DomainError("box dimensions must be non-negative")
    if filter not in ("none", "even", "weight"):
        raise DomainError(f"unknown filter {filter!r}")
    if filter == "weight":
        if fixed_weight is None:
            raise DomainError("filter='weight' needs fixed_weight")
        yield from partitions_of(fixed_weight, N, p)
        return

    def rec(cap, slots):
        if slots == 0:
            yield ()
            return
        for first in range(cap, 0, -1):
            for rest in rec(first, slots - 1):
                yield (first,) + rest
        yield ()

    for lam in rec(N, p):
        if filter == "even" and weight(lam) % 2:
            continue
        yield lam


def box_count(N: int, p: int) -> int:
    return comb(N + p, p)


@lru_cache(maxsize=None)
def _kostka(shape: Partition, content: Tuple[int, ...]) -> int:
    # peel off the largest letter: its boxes form a horizontal strip
    if not content:
        return 1 if not shape else 0
    last = content[-1]
    rest = content[:-1]
    total = 0
    for inner in _horizontal_strip_removals(shape, last):
        total += _kostka(inner, rest)
    return total


def _horizontal_strip_removals(shape: Partition, size: int):
    """Partitions nu with shape/nu a horizontal strip of ``size`` boxes."""
    l = len(shape)

    def rec(i, left, acc):
        if i == l:
            if left == 0:
                yield partition(acc)
            return
        lower = shape[i + 1] if i + 1 < l else 0
        for take in range(0, min(left, shape[i] - lower) + 1):
            yield from rec(i + 1, left - take, acc + (shape[i] - take,))

    yield from rec(0, size, ())


def kostka(lam: Partition, mu: Sequence[int]) -> int:
    """Number of semistandard tableaux of shape ``lam`` and content ``mu``.

    ``mu`` may be any composition; zero entries are ignored.
    """
    lam = partition(lam)
    content = tuple(int(x) for x in mu if x)
    if weight(lam) != sum(content):
        return 0
    return _kostka(lam, content)


def _rim_hooks(lam: Partition, r: int):
    """Yield (remaining partition, height) for each border strip of size r."""
    # beta-number description: removing an r-hook moves one bead down by r
    l = len(lam)
    beta = [lam[i] + (l - 1 - i) for i in range(l)]
    bset = set(beta)
    for b in beta:
        nb = b - r
        if nb < 0 or nb in bset:
            continue
        height = sum(1 for x in beta if nb < x < b)
        new = sorted((bset - {b}) | {nb}, reverse=True)
        parts = [new[i] - (l - 1 - i) for i in range(l)]
        yield partition(parts), height


@lru_cache(maxsize=None)
def _mn(lam: Partition, rho: Partition) -> int:
    if not rho:
        return 1 if not lam else 0
    r = rho[0]
    rest = rho[1:]
    total = 0
    for inner, height in _rim_hooks(lam, r):
        term = _mn(inner, rest)
        total += -term if height % 2 else term
    return total


def character(mu: Partition, rho: Sequence[int]) -> int:
    """chi^mu evaluated on the class of cycle type ``rho`` (Murnaghan-Nakayama)."""
    mu = partition(mu)
    rho = partition(sorted((int(x) for x in rho if x), reverse=True))
    if weight(mu) != weight(rho):
        raise DomainError(f"|{mu}| != |{rho}|")
    return _mn(mu, rho)


def centralizer_order(rho: Partition) -> int:
    """z_rho = prod_i i^{m_i} m_i!."""
    rho = partition(rho)
    out = 1
    for i in set(rho):
        m = rho.count(i)
        out *= i**m * factorial(m)
    return out
