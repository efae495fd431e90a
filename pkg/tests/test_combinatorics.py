from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from rmtcharpoly import combinatorics as cb
from rmtcharpoly.errors import ContainmentError, DomainError

from strategies import box_partitions, partitions


@given(partitions())
def test_conjugate_is_involution(lam):
    assert cb.conjugate(cb.conjugate(lam)) == lam
    assert cb.weight(cb.conjugate(lam)) == cb.weight(lam)


@given(box_partitions())
def test_tilde_is_involutive_bijection(data):
    N, p, lam = data
    t = cb.tilde(lam, N, p)
    assert cb.contains(cb.box(p, N), t)
    assert cb.tilde(t, p, N) == lam
    assert cb.weight(lam) + cb.weight(t) == N * p


def test_tilde_examples():
    assert cb.tilde((), 3, 2) == (2, 2, 2)
    assert cb.tilde((3, 3), 3, 2) == ()
    assert cb.tilde((2, 1), 3, 2) == (2, 1)
    with pytest.raises(ContainmentError):
        cb.tilde((4,), 3, 2)


@given(partitions(max_n=10))
def test_dim_formulas_agree(lam):
    assert cb.dim_V(lam) == cb.hook_length_dim(lam)
    assert cb.dim_V(lam) == cb.character(lam, (1,) * cb.weight(lam))


@pytest.mark.parametrize("n", range(1, 9))
def test_dims_square_sum(n):
    assert sum(cb.dim_V(l) ** 2 for l in cb.partitions_of(n)) == factorial(n)


def test_dim_examples():
    assert cb.dim_V((2, 1)) == 2
    assert cb.dim_V((3, 2)) == 5
    assert cb.dim_V(()) == 1


@pytest.mark.parametrize("N,p", [(0, 3), (2, 2), (3, 4), (5, 3), (4, 0)])
def test_box_enumeration(N, p):
    parts = list(cb.partitions_in_box(N, p))
    assert len(parts) == cb.box_count(N, p) == comb(N + p, p)
    assert len(set(parts)) == len(parts)
    # reverse-lexicographic: padded vectors strictly decrease
    padded = [cb.padded(l, p) for l in parts]
    assert padded == sorted(padded, reverse=True)


def test_box_filters():
    even = list(cb.partitions_in_box(3, 2, "even"))
    assert all(cb.weight(l) % 2 == 0 for l in even)
    fixed = list(cb.partitions_in_box(3, 2, "weight", 3))
    assert fixed == [(3,), (2, 1)]
    with pytest.raises(DomainError):
        list(cb.partitions_in_box(3, 2, "odd"))


def test_kostka_examples():
    assert cb.kostka((2, 1), (1, 1, 1)) == 2
    assert cb.kostka((3,), (1, 1, 1)) == 1
    assert cb.kostka((2, 2), (2, 1, 1)) == 1
    assert cb.kostka((1, 1), (2,)) == 0
    assert cb.kostka((2, 1), (1, 0, 2)) == cb.kostka((2, 1), (1, 2)) == 1


@settings(max_examples=40, deadline=None)
@given(partitions(max_n=7), partitions(max_n=7))
def test_kostka_triangular(lam, mu):
    if cb.weight(lam) != cb.weight(mu):
        assert cb.kostka(lam, mu) == 0
        return
    k = cb.kostka(lam, mu)
    if lam == mu:
        assert k == 1
    if k:
        assert cb.dominates(lam, mu)


@pytest.mark.parametrize("n", range(1, 8))
def test_character_orthogonality(n):
    parts = list(cb.partitions_of(n))
    for rho in parts:
        for sigma in parts:
            s = sum(cb.character(mu, rho) * cb.character(mu, sigma) for mu in parts)
            assert s == (cb.centralizer_order(rho) if rho == sigma else 0)


def test_character_examples():
    assert cb.character((2, 1), (3,)) == -1
    assert cb.character((2, 2), (2, 2)) == 2
    assert cb.character((3, 1), (2, 2)) == -1
    assert cb.character((1, 1, 1), (2, 1)) == -1
    with pytest.raises(DomainError):
        cb.character((2,), (1,))


def test_partition_normalizes_and_validates():
    assert cb.partition([3, 1, 0, 0]) == (3, 1)
    with pytest.raises(DomainError):
        cb.partition([1, 2])
    with pytest.raises(DomainError):
        cb.partition([2, -1])
