"""Exact linear algebra over Z and F_p.

Everything here is exact.  Mod-p elimination is vectorized in int64 (all
supported primes are far below 2**31, so a product of two residues fits).
Integer elimination starts in int64 and switches to Python integers as soon
as an entry could overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

import numpy as np

_I64_SAFE = 2**62


class NotNilpotentError(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        p = tuple(sorted((int(x) for x in self.parts if x > 0), reverse=True))
        object.__setattr__(self, "parts", p)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition(())
        return Partition(tuple(sum(1 for x in self.parts if x >= j) for j in range(1, self.parts[0] + 1)))

    def __str__(self):
        return "-".join(str(x) for x in self.parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip()
        return cls(tuple(int(x) for x in text.split("-")) if text else ())

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)


# ---------------------------------------------------------------- mod p


def _as_mod(M, p: int) -> np.ndarray:
    A = np.asarray(M)
    if A.dtype == object:
        A = np.vectorize(lambda x: int(x) % p, otypes=[np.int64])(A) if A.size else A.astype(np.int64)
    return np.asarray(A, dtype=np.int64) % p


def rref_mod_p(M, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p.  Returns (nonzero rows, pivot columns)."""
    A = _as_mod(M, p).copy()
    if A.ndim != 2:
        raise ValueError("expected a matrix")
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.flatnonzero(col)
        if nzr.size:
            A[nzr] = (A[nzr] - np.outer(col[nzr], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_mod_p(M, p: int) -> int:
    A = np.asarray(M)
    if A.size == 0:
        return 0
    return len(_echelon_mod_p(_as_mod(A, p), p))


def _echelon_mod_p(A: np.ndarray, p: int) -> np.ndarray:
    """Row echelon basis (not reduced) of the row space; cheaper than rref
    when only the rank or the span is needed.  Works on the smaller side."""
    A = A.copy()
    rows, cols = A.shape
    out = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        below = r + 1 + np.flatnonzero(A[r + 1:, c])
        if below.size:
            A[below] = (A[below] - np.outer(A[below, c], A[r])) % p
        r += 1
    return A[:r]


class SpanMod:
    """Incrementally maintained row space over F_p, in reduced echelon form."""

    def __init__(self, ncols: int, p: int):
        self.p = p
        self.ncols = ncols
        self.rows = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, V: np.ndarray) -> np.ndarray:
        V = _as_mod(np.atleast_2d(V), self.p)
        if self.pivots and V.size:
            V = (V - _matmul_mod(V[:, self.pivots], self.rows, self.p)) % self.p
        return V

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))

    def add(self, V, batch: int = 512, cap: int | None = None) -> int:
        """Add rows; returns the number of new dimensions.  Stops early once
        the span reaches ``cap`` (default: the full space)."""
        V = np.atleast_2d(np.asarray(V))
        before = self.dim
        cap = self.ncols if cap is None else cap
        for s in range(0, V.shape[0], batch):
            if self.dim >= cap:
                break
            W = self.reduce(V[s:s + batch])
            W = W[np.any(W, axis=1)]
            if not W.size:
                continue
            R, piv = rref_mod_p(W, self.p)
            if not piv:
                continue
            # clear new pivot columns from existing rows, then merge
            if self.pivots:
                self.rows = (self.rows - _matmul_mod(self.rows[:, piv], R, self.p)) % self.p
            rows = np.vstack([self.rows, R])
            pivots = self.pivots + piv
            order = np.argsort(pivots)
            self.rows = rows[order]
            self.pivots = [pivots[i] for i in order]
        return self.dim - before


def kernel_mod_p(M, p: int) -> np.ndarray:
    """Basis of {v : v M = 0} over F_p, in reduced echelon form."""
    A = _as_mod(M, p)
    rows = A.shape[0]
    # v M = 0  <=>  M^T v^T = 0
    R, piv = rref_mod_p(A.T, p)
    free = [j for j in range(rows) if j not in set(piv)]
    K = np.zeros((len(free), rows), dtype=np.int64)
    for t, f in enumerate(free):
        K[t, f] = 1
        for i, c in enumerate(piv):
            K[t, c] = (-R[i, f]) % p
    if K.size:
        K, _ = rref_mod_p(K, p)
    return K


def nullspace_mod_p(M, p: int) -> np.ndarray:
    """Basis (rows) of {x : M x = 0} over F_p."""
    return kernel_mod_p(np.asarray(M).T, p)


# ---------------------------------------------------------------- over Z


def _to_object(A: np.ndarray) -> np.ndarray:
    out = np.empty(A.shape, dtype=object)
    out[...] = [[int(x) for x in row] for row in A.tolist()] if A.ndim == 2 else A.tolist()
    return out


def _safe_int64(A: np.ndarray, growth: int) -> bool:
    if A.dtype == object:
        return False
    if not A.size:
        return True
    m = int(np.abs(A).max())
    return m * growth < _I64_SAFE ** 0.5


def rank_q(M) -> int:
    """Rank over Q (number of nonzero elementary divisors)."""
    A = np.asarray(M)
    if A.size == 0:
        return 0
    return len(elementary_divisors(A))


def integer_echelon(M, batch: int = 256) -> np.ndarray:
    """Row echelon form over Z (same row lattice), zero rows dropped.

    Pivots are chosen by minimal absolute value and other rows are reduced
    by rounded quotients, i.e. a Euclidean reduction column by column.  Tall
    matrices are fed in batches so the working matrix never has more than
    ``cols + batch`` rows.
    """
    A = np.asarray(M)
    if A.ndim != 2 or A.size == 0:
        return np.zeros((0, A.shape[1] if A.ndim == 2 else 0), dtype=np.int64)
    A = A.astype(object) if A.dtype == object else A.astype(np.int64)
    A = A[np.any(A != 0, axis=1)]
    cols = A.shape[1]
    E = A[:0]
    for s in range(0, A.shape[0], batch):
        W = np.concatenate([E, A[s:s + batch]]) if E.dtype == A.dtype else np.concatenate(
            [E.astype(object), A[s:s + batch].astype(object)])
        W = _echelon_keep(W, cols)
        E = W[np.any(W != 0, axis=1)]
    for i in range(E.shape[0]):
        c = int(np.flatnonzero(E[i] != 0)[0])
        if E[i, c] < 0:
            E[i] = -E[i]
    return E


def _round_div(a: np.ndarray, b) -> np.ndarray:
    if a.dtype == object:
        b = int(b)
        return np.array([(2 * int(x) + b) // (2 * b) if b > 0 else -((2 * int(x) - b) // (-2 * b)) for x in a], dtype=object)
    b = int(b)
    return np.floor_divide(2 * a + b, 2 * b) if b > 0 else -np.floor_divide(2 * a - b, -2 * b)


def _outer_obj(q: np.ndarray, row: np.ndarray) -> np.ndarray:
    return np.array([[int(x) * int(y) for y in row] for x in q], dtype=object).reshape(len(q), len(row))


def _snf_small(rows: list[list[int]]) -> list[int]:
    """Elementary divisors of a small dense matrix with Python integers."""
    A = [list(r) for r in rows if any(r)]
    divisors = []
    while A:
        m, n = len(A), len(A[0])
        # pick entry of minimal absolute value
        best = None
        for i in range(m):
            for j in range(n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[0], A[i] = A[i], A[0]
        for row in A:
            row[0], row[j] = row[j], row[0]
        while True:
            piv = A[0][0]
            done = True
            for i in range(1, m):
                if A[i][0]:
                    q = A[i][0] // piv
                    A[i] = [x - q * y for x, y in zip(A[i], A[0])]
                    if A[i][0]:
                        done = False
            for j in range(1, n):
                if A[0][j]:
                    q = A[0][j] // piv
                    for row in A:
                        row[j] -= q * row[0]
                    if A[0][j]:
                        done = False
            if done:
                # divisibility: fold any entry not divisible by the pivot into row 0
                bad = next(((i, j) for i in range(1, m) for j in range(1, n) if A[i][j] % piv), None)
                if bad is None:
                    break
                A[0] = [x + y for x, y in zip(A[0], A[bad[0]])]
                done = False
            # move the smallest nonzero entry of row/col 0 to the corner
            cand = [(abs(A[i][0]), i, 0) for i in range(m) if A[i][0]] + [
                (abs(A[0][j]), 0, j) for j in range(n) if A[0][j]
            ]
            _, i, j = min(cand)
            if i:
                A[0], A[i] = A[i], A[0]
            if j:
                for row in A:
                    row[0], row[j] = row[j], row[0]
        divisors.append(abs(A[0][0]))
        A = [row[1:] for row in A[1:]]
        A = [r for r in A if any(r)]
        if A and not A[0]:
            break
    divisors.sort()
    return divisors


def elementary_divisors(M) -> list[int]:
    """Nonzero elementary divisors d_1 | d_2 | ... | d_r of an integer matrix."""
    A = np.asarray(M)
    if A.size == 0:
        return []
    E = integer_echelon(A)
    if E.shape[0] == 0:
        return []
    # Gauss-Jordan on unit pivots: each +-1 pivot splits off a divisor 1.
    E = E.astype(object) if E.dtype == object else E
    rows = [[int(x) for x in r] for r in E.tolist()]
    ones = 0
    changed = True
    while changed and rows:
        changed = False
        for ri, row in enumerate(rows):
            cj = next((j for j, x in enumerate(row) if abs(x) == 1), None)
            if cj is None:
                continue
            s = row[cj]
            for rk in range(len(rows)):
                if rk != ri and rows[rk][cj]:
                    f = rows[rk][cj] * s
                    rows[rk] = [x - f * y for x, y in zip(rows[rk], row)]
            rows.pop(ri)
            rows = [[x for j, x in enumerate(r) if j != cj] for r in rows]
            rows = [r for r in rows if any(r)]
            ones += 1
            changed = True
            break
    if rows:
        cols = [j for j in range(len(rows[0])) if any(r[j] for r in rows)]
        rows = [[r[j] for j in cols] for r in rows]
    rest = _snf_small(rows) if rows else []
    return [1] * ones + rest


def smith_normal_form(M) -> list[int]:
    return elementary_divisors(M)


def _prime_factors(n: int) -> set[int]:
    out = set()
    n = abs(int(n))
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def exceptional_primes(M) -> set[int]:
    out: set[int] = set()
    for d in elementary_divisors(M):
        out |= _prime_factors(d)
    return out


def saturated_kernel(M) -> np.ndarray:
    """Saturated Z-basis of {v in Z^rows : v M = 0}, rows in Hermite form.

    Row operations on [M | I]: rows whose M part vanishes span the kernel
    lattice, and since the transform is unimodular that lattice is saturated.
    """
    A = np.asarray(M)
    rows, cols = A.shape
    if rows == 0:
        return np.zeros((0, 0), dtype=np.int64)
    aug = np.concatenate([A.astype(object) if A.dtype == object else A.astype(np.int64),
                          np.eye(rows, dtype=np.int64)], axis=1)
    E = _echelon_keep(aug, cols)
    K = E[:, cols:][~np.any(E[:, :cols] != 0, axis=1)]
    if K.shape[0] == 0:
        return np.zeros((0, rows), dtype=np.int64)
    return hermite_form(K)


def _echelon_keep(A: np.ndarray, ncols: int) -> np.ndarray:
    """Integer echelon on the first ``ncols`` columns, keeping all rows."""
    A = A.copy()
    r = 0
    for c in range(ncols):
        if r >= A.shape[0]:
            break
        while True:
            col = A[r:, c]
            nz = np.flatnonzero(col != 0)
            if nz.size == 0:
                break
            k = r + int(nz[int(np.argmin(np.abs(col[nz])))])
            if k != r:
                A[[r, k]] = A[[k, r]]
            others = r + 1 + np.flatnonzero(A[r + 1:, c] != 0)
            if others.size == 0:
                break
            piv = A[r, c]
            if A.dtype != object and not _safe_int64(A, int(np.abs(A[others, c]).max() // max(abs(int(piv)), 1) + 1) * 2):
                A = A.astype(object)
                piv = A[r, c]
            q = _round_div(A[others, c], piv)
            A[others] = A[others] - (np.outer(q, A[r]) if A.dtype != object else _outer_obj(q, A[r]))
        if A[r, c] != 0:
            r += 1
    return A


def hermite_form(K) -> np.ndarray:
    """Row-style Hermite normal form of an integer matrix with independent
    rows: echelon, positive pivots, entries above pivots reduced into
    [0, pivot)."""
    E = integer_echelon(K)
    E = E.astype(object) if E.dtype == object else E.copy()
    for i in range(E.shape[0]):
        c = int(np.flatnonzero(E[i] != 0)[0])
        piv = E[i, c]
        for k in range(i):
            q = E[k, c] // piv
            if q:
                E[k] = E[k] - q * E[i]
    if E.dtype == object and all(abs(int(x)) < 2**62 for x in E.ravel()):
        E = E.astype(np.int64)
    return E


# ---------------------------------------------------------------- Jordan


def _matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    n = A.shape[1]
    if n * (p - 1) ** 2 < 2**52:
        return np.rint(A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64) % p
    # split B into low/high halves to stay exact
    h = 1 << ((p.bit_length() + 1) // 2)
    lo, hi = B % h, B // h
    if n * (p - 1) * h < 2**52:
        A_ = A.astype(np.float64)
        a = np.rint(A_ @ lo.astype(np.float64)).astype(np.int64) % p
        b = np.rint(A_ @ hi.astype(np.float64)).astype(np.int64) % p
        return (a + (b * h) % p) % p
    return np.array((A.astype(object) @ B.astype(object)) % p, dtype=np.int64)


def jordan_partition(N, p: int, bound: int | None = None) -> Partition:
    """Jordan block sizes of a nilpotent matrix over F_p from ranks of powers."""
    A = _as_mod(N, p)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("square matrix required")
    bound = n if bound is None else int(bound)
    ranks = [n]
    P = A
    for _ in range(bound + 1):
        r = rank_mod_p(P, p) if np.any(P) else 0
        ranks.append(r)
        if r == 0:
            break
        P = _matmul_mod(P, A, p)
    else:
        raise NotNilpotentError(f"matrix is not nilpotent within {bound} steps")
    # ranks[j] = rank N^{j-1}; blocks of size >= j = rank N^{j-1} - rank N^j
    at_least = [ranks[j] - ranks[j + 1] for j in range(len(ranks) - 1)]
    parts = []
    for j, cnt in enumerate(at_least, start=1):
        nxt = at_least[j] if j < len(at_least) else 0
        parts += [j] * (cnt - nxt)
    return Partition(tuple(parts))


def minor_gcd(M, k: int) -> int:
    """gcd of all k x k minors (brute force, for small matrices)."""
    from itertools import combinations

    A = [[int(x) for x in r] for r in np.asarray(M).tolist()]
    g = 0
    for rows in combinations(range(len(A)), k):
        for cols in combinations(range(len(A[0])), k):
            g = gcd(g, _det([[A[i][j] for j in cols] for i in rows]))
    return g


def _det(A: list[list[int]]) -> int:
    from fractions import Fraction

    n = len(A)
    M = [[Fraction(x) for x in r] for r in A]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return int(det)
