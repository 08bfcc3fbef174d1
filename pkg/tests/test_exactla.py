from itertools import combinations
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from chevorbit import exactla
from chevorbit.exactla import (
    NotNilpotentError,
    Partition,
    SpanMod,
    elementary_divisors,
    exceptional_primes,
    hermite_form,
    integer_echelon,
    jordan_partition,
    kernel_mod_p,
    minor_gcd,
    rank_mod_p,
    rank_q,
    rref_mod_p,
    saturated_kernel,
)

PRIMES = [2, 3, 5, 7, 11, 13]


# independent oracles: plain Python, no numpy

def _rank_mod_p_naive(rows, p):
    A = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        for i in range(len(A)):
            if i != rank and A[i][c]:
                f = A[i][c] * inv
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


def _bareiss_det(M):
    M = [list(r) for r in M]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _determinantal_divisor(rows, k):
    g = 0
    for ri in combinations(range(len(rows)), k):
        for ci in combinations(range(len(rows[0])), k):
            g = gcd(g, _bareiss_det([[rows[i][j] for j in ci] for i in ri]))
    return g


small_int_matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: arrays(np.int64, (r, c), elements=st.integers(-6, 6))))


# ---------------------------------------------------------------- Partition


def test_partition_normalizes_and_round_trips():
    lam = Partition((1, 3, 0, 2, 3))
    assert lam.parts == (3, 3, 2, 1)
    assert lam.total == 9
    assert str(lam) == "3-3-2-1"
    assert Partition.parse("3-3-2-1") == lam
    assert Partition.parse("") == Partition(())


@given(st.lists(st.integers(1, 9), max_size=12))
def test_conjugate_is_an_involution(parts):
    lam = Partition(tuple(parts))
    assert lam.conjugate().conjugate() == lam
    assert lam.conjugate().total == lam.total


# ---------------------------------------------------------------- mod p


@pytest.mark.parametrize("p", PRIMES)
def test_rref_identity_and_zero(p):
    R, piv = rref_mod_p(np.eye(4, dtype=np.int64), p)
    assert piv == [0, 1, 2, 3]
    assert np.array_equal(R, np.eye(4, dtype=np.int64))
    R, piv = rref_mod_p(np.zeros((3, 5), dtype=np.int64), p)
    assert R.shape == (0, 5) and piv == []


def test_rank_depends_on_characteristic():
    M = np.array([[2, 0], [0, 3]])
    assert rank_mod_p(M, 2) == 1
    assert rank_mod_p(M, 3) == 1
    assert rank_mod_p(M, 5) == 2
    assert rank_q(M) == 2


@settings(max_examples=150, deadline=None)
@given(small_int_matrices, st.sampled_from(PRIMES))
def test_rank_mod_p_matches_naive_elimination(M, p):
    assert rank_mod_p(M, p) == _rank_mod_p_naive(M.tolist(), p)


@settings(max_examples=100, deadline=None)
@given(small_int_matrices, st.sampled_from(PRIMES))
def test_rref_is_reduced_and_spans_the_rows(M, p):
    R, piv = rref_mod_p(M, p)
    assert len(piv) == rank_mod_p(M, p)
    for i, c in enumerate(piv):
        assert R[i, c] == 1
        assert np.count_nonzero(R[:, c]) == 1
    # same row space: stacking adds nothing
    assert rank_mod_p(np.vstack([R, M % p]), p) == len(piv)


@settings(max_examples=100, deadline=None)
@given(small_int_matrices, st.sampled_from(PRIMES))
def test_kernel_mod_p(M, p):
    K = kernel_mod_p(M, p)
    assert K.shape[0] == M.shape[0] - rank_mod_p(M, p)
    if K.size:
        assert not np.any((K @ (M % p)) % p)
        assert rank_mod_p(K, p) == K.shape[0]


@settings(max_examples=80, deadline=None)
@given(small_int_matrices, small_int_matrices, st.sampled_from(PRIMES))
def test_spanmod_incremental_equals_batch(A, B, p):
    if A.shape[1] != B.shape[1]:
        B = np.resize(B, (B.shape[0], A.shape[1]))
    span = SpanMod(A.shape[1], p)
    span.add(A)
    span.add(B, batch=1)
    both = np.vstack([A, B])
    assert span.dim == rank_mod_p(both, p)
    for row in both:
        assert span.contains(row)


def test_spanmod_cap_stops_early():
    span = SpanMod(6, 7)
    span.add(np.eye(6, dtype=np.int64), batch=1, cap=3)
    assert span.dim == 3


# ---------------------------------------------------------------- over Z


def test_elementary_divisors_diagonal():
    assert elementary_divisors(np.diag([6, 4])) == [2, 12]
    assert elementary_divisors(np.zeros((2, 2), dtype=np.int64)) == []
    assert exceptional_primes(np.diag([6, 4])) == {2, 3}


def test_elementary_divisors_handle_big_entries():
    # forces the switch to Python integers
    M = np.array([[2**40, 3], [5, 2**41 + 1], [7, 11]], dtype=np.int64)
    divs = elementary_divisors(M)
    rows = M.tolist()
    assert divs[0] == _determinantal_divisor(rows, 1)
    assert divs[0] * divs[1] == _determinantal_divisor(rows, 2)


def test_snf_minor_gcd_oracle_on_500_random_matrices():
    rng = np.random.default_rng(20240917)
    for _ in range(500):
        r, c = rng.integers(1, 5, size=2)
        M = rng.integers(-9, 10, size=(r, c))
        if rng.random() < 0.3:
            # make it rank deficient / divisible on purpose
            M[-1] = 2 * M[0]
            M *= int(rng.choice([1, 2, 3, 6]))
        divs = elementary_divisors(M)
        rows = M.tolist()
        for a, b in zip(divs, divs[1:]):
            assert b % a == 0
        prod = 1
        for k in range(1, min(r, c) + 1):
            dk = _determinantal_divisor(rows, k)
            if k <= len(divs):
                prod *= divs[k - 1]
                assert dk == prod, (M, divs)
            else:
                assert dk == 0


def test_minor_gcd_helper_agrees_with_oracle():
    M = np.array([[2, 4, 6], [1, 3, 5], [0, 2, 8]])
    for k in (1, 2, 3):
        assert minor_gcd(M, k) == abs(_determinantal_divisor(M.tolist(), k))


@settings(max_examples=100, deadline=None)
@given(small_int_matrices)
def test_rank_q_is_rank_at_large_prime(M):
    assert rank_q(M) == _rank_mod_p_naive(M.tolist(), 1000003)


@settings(max_examples=100, deadline=None)
@given(small_int_matrices)
def test_integer_echelon_preserves_lattice(M):
    E = integer_echelon(M)
    assert E.shape[0] == rank_q(M)
    assert elementary_divisors(E) == elementary_divisors(M)
    # every original row reduces to zero mod the echelon lattice: the
    # stacked matrix has the same divisors
    assert elementary_divisors(np.vstack([E, M])) == elementary_divisors(M)


@settings(max_examples=100, deadline=None)
@given(small_int_matrices)
def test_saturated_kernel(M):
    K = saturated_kernel(M)
    assert K.shape[0] == M.shape[0] - rank_q(M)
    if K.size:
        assert not np.any(K.astype(object) @ M.astype(object))
        # saturated: all elementary divisors are 1
        assert set(elementary_divisors(K)) == {1}


def test_saturated_kernel_is_not_just_any_kernel():
    # kernel of [2, 4]^T over Z is spanned by (2, -1), not (4, -2)
    K = saturated_kernel(np.array([[2], [4]]))
    assert K.shape == (1, 2)
    assert sorted(abs(int(x)) for x in K[0]) == [1, 2]


@settings(max_examples=60, deadline=None)
@given(small_int_matrices)
def test_hermite_form_is_canonical(M):
    if rank_q(M) == 0:
        return
    H = hermite_form(integer_echelon(M))
    rng = np.random.default_rng(0)
    # a unimodular change of basis gives the same Hermite form
    U = np.eye(H.shape[0], dtype=np.int64)
    for _ in range(3):
        i, j = rng.choice(H.shape[0], 2, replace=True)
        if i != j:
            U[i] += int(rng.integers(-2, 3)) * U[j]
    H2 = hermite_form(integer_echelon(U @ H))
    assert np.array_equal(np.asarray(H, dtype=object), np.asarray(H2, dtype=object))
    for i in range(H.shape[0]):
        c = int(np.flatnonzero(H[i])[0])
        assert H[i, c] > 0
        assert all(0 <= H[k, c] < H[i, c] for k in range(i))


# ---------------------------------------------------------------- Jordan


def _jordan_block_matrix(sizes):
    n = sum(sizes)
    N = np.zeros((n, n), dtype=np.int64)
    at = 0
    for s in sizes:
        for k in range(s - 1):
            N[at + k, at + k + 1] = 1
        at += s
    return N


def _unimodular(n, rng):
    U = np.eye(n, dtype=np.int64)
    if n < 2:
        return U
    for _ in range(2 * n):
        i, j = rng.choice(n, 2, replace=False)
        U[i] += int(rng.integers(-1, 2)) * U[j]
    return U


def _inverse_unimodular(U):
    from fractions import Fraction

    n = U.shape[0]

    A = [[Fraction(int(x)) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(U.tolist())]
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        A[c] = [x / A[c][c] for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    inv = np.array([[int(x) for x in r[n:]] for r in A], dtype=np.int64)
    assert np.array_equal(U @ inv, np.eye(n, dtype=np.int64))
    return inv


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=5), st.sampled_from(PRIMES),
       st.integers(0, 2**31))
def test_jordan_partition_of_conjugated_blocks(sizes, p, seed):
    N = _jordan_block_matrix(sizes)
    rng = np.random.default_rng(seed)
    U = _unimodular(N.shape[0], rng)
    M = U @ N @ _inverse_unimodular(U)
    lam = jordan_partition(M, p)
    assert lam == Partition(tuple(sizes))
    assert lam.total == N.shape[0]


def test_jordan_partition_sees_the_characteristic():
    # 2 * (single 2-block) vanishes mod 2
    N = 2 * _jordan_block_matrix([2])
    assert jordan_partition(N, 2) == Partition((1, 1))
    assert jordan_partition(N, 3) == Partition((2,))


def test_jordan_partition_rejects_non_nilpotent():
    with pytest.raises(NotNilpotentError):
        jordan_partition(np.eye(3, dtype=np.int64), 5)
    with pytest.raises(ValueError):
        jordan_partition(np.zeros((2, 3), dtype=np.int64), 5)


@pytest.mark.parametrize("p", [5, 998244353])
def test_matmul_mod_is_exact(p):
    rng = np.random.default_rng(p)
    A = rng.integers(0, p, size=(40, 40))
    B = rng.integers(0, p, size=(40, 40))
    expect = (A.astype(object) @ B.astype(object)) % p
    assert np.array_equal(exactla._matmul_mod(A, B, p), expect.astype(np.int64))
