"""Irreducible root systems in simple-root coordinates.

Simple roots follow Bourbaki numbering for every type (see CONVENTIONS.md).
Roots are integer tuples of coefficients over the simple roots; the
symmetrized inner product puts short roots at squared length 2 (long roots
at 4, or 6 for G2; everything at 2 when simply laced).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

Root = tuple[int, ...]

_LABEL_RE = re.compile(r"^\s*([A-Ga-g])\s*(\d+)\s*$")
_MAX_CLASSICAL_RANK = 12


class RootSystemError(ValueError):
    pass


def _chain(n: int, length: int = 2) -> np.ndarray:
    g = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        g[i, i] = length
        if i + 1 < n:
            g[i, i + 1] = g[i + 1, i] = -length // 2
    return g


def _gram_matrix(kind: str, n: int) -> np.ndarray:
    """Inner products (alpha_i, alpha_j) of the simple roots, Bourbaki order."""
    if kind == "A":
        return _chain(n)
    if kind == "B":
        g = _chain(n, 4)
        g[n - 1, n - 1] = 2
        return g
    if kind == "C":
        g = _chain(n, 2)
        g[n - 1, n - 1] = 4
        g[n - 2, n - 1] = g[n - 1, n - 2] = -2
        return g
    if kind == "D":
        g = _chain(n)
        # alpha_{n} hangs off alpha_{n-2}, not alpha_{n-1}
        g[n - 2, n - 1] = g[n - 1, n - 2] = 0
        g[n - 3, n - 1] = g[n - 1, n - 3] = -1
        return g
    if kind == "E":
        g = np.zeros((n, n), dtype=np.int64)
        np.fill_diagonal(g, 2)
        edges = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]
        for i, j in edges:
            if i <= n and j <= n:
                g[i - 1, j - 1] = g[j - 1, i - 1] = -1
        return g
    if kind == "F":
        return np.array(
            [[4, -2, 0, 0], [-2, 4, -2, 0], [0, -2, 2, -1], [0, 0, -1, 2]],
            dtype=np.int64,
        )
    if kind == "G":
        return np.array([[2, -3], [-3, 6]], dtype=np.int64)
    raise RootSystemError(f"unknown Cartan type {kind!r}")


def parse_type_label(type_label: str) -> tuple[str, int]:
    m = _LABEL_RE.match(type_label)
    if not m:
        raise RootSystemError(f"cannot parse type label {type_label!r}")
    kind, n = m.group(1).upper(), int(m.group(2))
    allowed = {
        "A": range(1, _MAX_CLASSICAL_RANK + 1),
        "B": range(2, _MAX_CLASSICAL_RANK + 1),
        "C": range(2, _MAX_CLASSICAL_RANK + 1),
        "D": range(4, _MAX_CLASSICAL_RANK + 1),
        "E": range(6, 9),
        "F": range(4, 5),
        "G": range(2, 3),
    }
    if n not in allowed[kind]:
        raise RootSystemError(f"rank {n} out of supported range for type {kind}")
    return kind, n


@dataclass(frozen=True)
class Coweight:
    """An integer (or rational) vector attached to the simple roots.

    ``kind`` is ``"dynkin"`` when the entries are the values D(alpha_i) of a
    weighted Dynkin diagram, and ``"coroot"`` when they are the coefficients
    a_i of lambda = sum a_i alpha_i^vee.
    """

    coefficients: tuple
    kind: str = "dynkin"

    def __post_init__(self):
        if self.kind not in ("dynkin", "coroot"):
            raise ValueError(f"unknown coweight encoding {self.kind!r}")
        object.__setattr__(self, "coefficients", tuple(self.coefficients))

    def is_weighted_dynkin_diagram(self) -> bool:
        return self.kind == "dynkin" and all(c in (0, 1, 2) for c in self.coefficients)

    def __len__(self):
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)


@dataclass(frozen=True)
class LeviSubset:
    """Sorted, 1-based indices of the simple roots spanning a standard Levi."""

    subset: tuple[int, ...]
    rank: int

    def __post_init__(self):
        s = tuple(int(i) for i in self.subset)
        if len(set(s)) != len(s):
            raise RootSystemError(f"repeated index in Levi subset {s}")
        if any(i < 1 or i > self.rank for i in s):
            raise RootSystemError(f"Levi subset {s} out of range 1..{self.rank}")
        object.__setattr__(self, "subset", tuple(sorted(s)))

    @property
    def zero_based(self) -> tuple[int, ...]:
        return tuple(i - 1 for i in self.subset)

    def __len__(self):
        return len(self.subset)

    def __iter__(self):
        return iter(self.subset)


@dataclass(frozen=True, eq=False)
class RootSystem:
    type_label: str
    rank: int
    gram: np.ndarray = field(repr=False)
    positive_roots: tuple[Root, ...] = field(repr=False)

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))

    @cached_property
    def cartan_matrix(self) -> np.ndarray:
        """a_ij = <alpha_i^vee, alpha_j> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)."""
        d = np.diag(self.gram)
        return (2 * self.gram) // d[:, None]

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        """Positive roots followed by their negatives, in the canonical order."""
        return self.positive_roots + tuple(tuple(-c for c in r) for r in self.positive_roots)

    @cached_property
    def index(self) -> dict[Root, int]:
        return {r: i for i, r in enumerate(self.roots)}

    @cached_property
    def root_array(self) -> np.ndarray:
        return np.array(self.roots, dtype=np.int64).reshape(len(self.roots), self.rank)

    @property
    def num_positive(self) -> int:
        return len(self.positive_roots)

    @property
    def algebra_dim(self) -> int:
        return 2 * self.num_positive + self.rank

    @cached_property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    def is_root(self, v: Iterable[int]) -> bool:
        return tuple(v) in self.index

    def check_root(self, v) -> Root:
        r = tuple(int(c) for c in v)
        if r not in self.index:
            raise RootSystemError(f"{r} is not a root of {self.type_label}")
        return r

    def height(self, r: Root) -> int:
        return sum(r)

    def inner(self, a: Sequence[int], b: Sequence[int]) -> int:
        return int(np.asarray(a) @ self.gram @ np.asarray(b))

    def pairing(self, beta: Sequence[int], alpha: Sequence[int]) -> int:
        """<beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha)."""
        num = 2 * self.inner(beta, alpha)
        den = self.inner(alpha, alpha)
        if num % den:
            raise RootSystemError("pairing of non-roots is not integral")
        return num // den

    def coroot_coordinates(self, alpha: Root) -> tuple[int, ...]:
        """Coefficients c_i with alpha^vee = sum c_i alpha_i^vee."""
        la = self.inner(alpha, alpha)
        d = np.diag(self.gram)
        out = []
        for m, di in zip(alpha, d):
            num = m * int(di)
            if num % la:
                raise RootSystemError(f"coroot of {alpha} is not integral")
            out.append(num // la)
        return tuple(out)

    def is_long(self, alpha: Root) -> bool:
        return self.inner(alpha, alpha) == int(np.max(np.diag(self.gram)))

    def reflect(self, i: int, beta: Sequence[int]) -> Root:
        """Simple reflection s_i (0-based) applied to beta."""
        b = list(beta)
        b[i] -= self.pairing(beta, self.simple_roots[i])
        return tuple(b)

    def levi_roots(self, levi: LeviSubset | Iterable[int], positive_only: bool = False) -> list[Root]:
        """Roots supported on the given (1-based) simple-root indices."""
        idx = set(levi.zero_based if isinstance(levi, LeviSubset) else (i - 1 for i in levi))
        src = self.positive_roots if positive_only else self.roots
        return [r for r in src if all(c == 0 or j in idx for j, c in enumerate(r))]

    def levi(self, indices: Iterable[int]) -> LeviSubset:
        return LeviSubset(tuple(indices), self.rank)

    def __eq__(self, other):
        return isinstance(other, RootSystem) and self.type_label == other.type_label

    def __hash__(self):
        return hash(self.type_label)


def _positive_roots(gram: np.ndarray) -> list[Root]:
    n = gram.shape[0]
    diag = np.diag(gram)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # p = how far the alpha_i-string extends below beta
                p = 0
                b = list(beta)
                while True:
                    b[i] -= 1
                    if tuple(b) in found:
                        p += 1
                    else:
                        break
                pair = 2 * int(np.asarray(beta) @ gram[:, i]) // int(diag[i])
                q = p - pair
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(found, key=lambda r: (sum(r), r))


_CACHE: dict[str, RootSystem] = {}


def build_root_system(type_label: str) -> RootSystem:
    kind, n = parse_type_label(type_label)
    label = f"{kind}{n}"
    if label not in _CACHE:
        gram = _gram_matrix(kind, n)
        gram.setflags(write=False)
        _CACHE[label] = RootSystem(label, n, gram, tuple(_positive_roots(gram)))
    return _CACHE[label]


def root_string(rs: RootSystem, alpha: Sequence[int], beta: Sequence[int]) -> tuple[int, int]:
    """(p, q) with beta - p*alpha, ..., beta + q*alpha the alpha-string through beta."""
    a = rs.check_root(alpha)
    b = rs.check_root(beta)
    if a == b or a == tuple(-c for c in b):
        raise RootSystemError("root string undefined for beta = +-alpha")
    an = np.array(a)
    bn = np.array(b)
    p = 0
    while rs.is_root(bn - (p + 1) * an):
        p += 1
    q = 0
    while rs.is_root(bn + (q + 1) * an):
        q += 1
    return p, q


def dynkin_weight(rs: RootSystem, D: Coweight | Sequence[int], beta: Sequence[int]) -> int:
    d = D.coefficients if isinstance(D, Coweight) else tuple(D)
    if isinstance(D, Coweight) and D.kind != "dynkin":
        d = tuple(dynkin_from_coroot(rs, D).coefficients)
    return int(sum(m * x for m, x in zip(beta, d)))


def dynkin_from_coroot(rs: RootSystem, lam: Coweight) -> Coweight:
    # D_j = <lambda, alpha_j> = sum_i a_i <alpha_i^vee, alpha_j>
    a = [Fraction(x) for x in lam.coefficients]
    A = rs.cartan_matrix
    d = [sum(a[i] * int(A[i, j]) for i in range(rs.rank)) for j in range(rs.rank)]
    return Coweight(tuple(int(x) if x.denominator == 1 else x for x in d), "dynkin")


def coroot_from_dynkin(rs: RootSystem, D: Coweight | Sequence[int]) -> Coweight:
    d = D.coefficients if isinstance(D, Coweight) else tuple(D)
    A = [[Fraction(int(x)) for x in row] for row in rs.cartan_matrix.T.tolist()]
    sol = solve_rational(A, [Fraction(x) for x in d])
    return Coweight(tuple(int(x) if x.denominator == 1 else x for x in sol), "coroot")


def solve_rational(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Solve the square system A x = b over Q; raises on singular A."""
    n = len(A)
    M = [list(row) + [bi] for row, bi in zip(A, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise RootSystemError("singular Gram matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [M[r][n] for r in range(n)]


@dataclass(frozen=True)
class GammaCocharacter:
    coefficients: tuple[Fraction, ...]
    integral: bool
    dynkin: tuple  # <lambda, alpha_j> for each simple root alpha_j


def cocharacter_from_gamma(rs: RootSystem, gamma: Sequence[Sequence[int]]) -> GammaCocharacter:
    """The lambda = sum a_g g^vee with <lambda, g> = 2 for every g in gamma.

    Solves C(Gamma) a = 2 (1, ..., 1), where C(Gamma)_{g,d} = <g, d^vee>
    (so that row g of the system reads sum_d a_d <g, d^vee> = 2).
    """
    roots = [rs.check_root(g) for g in gamma]
    k = len(roots)
    if k == 0:
        return GammaCocharacter((), True, tuple(0 for _ in range(rs.rank)))
    C = [[Fraction(rs.pairing(g, d)) for d in roots] for g in roots]
    a = solve_rational(C, [Fraction(2)] * k)
    # evaluate on simple roots: <d^vee, alpha_j>
    dyn = []
    for j in range(rs.rank):
        aj = rs.simple_roots[j]
        dyn.append(sum(a[t] * rs.pairing(aj, roots[t]) for t in range(k)))
    dyn = tuple(int(x) if x.denominator == 1 else x for x in dyn)
    return GammaCocharacter(tuple(a), all(x.denominator == 1 for x in a), dyn)


def levi_center_dim(rs: RootSystem, levi: LeviSubset | Iterable[int]) -> int:
    if not isinstance(levi, LeviSubset):
        levi = rs.levi(levi)
    return rs.rank - len(levi)


def dominant_conjugate(rs: RootSystem, values: Sequence) -> tuple[tuple, list[int]]:
    """Move a coweight, given by its values on the simple roots, into the
    dominant chamber by simple reflections.

    Returns the dominant values and the reflection sequence applied (0-based
    indices, first applied first).  s_i acts on values by
    v_j -> v_j - <alpha_j, alpha_i^vee> v_i.
    """
    v = list(values)
    A = rs.cartan_matrix
    word = []
    while True:
        i = next((i for i in range(rs.rank) if v[i] < 0), None)
        if i is None:
            return tuple(v), word
        vi = v[i]
        v = [v[j] - int(A[i, j]) * vi for j in range(rs.rank)]
        word.append(i)


def apply_word(rs: RootSystem, word: Sequence[int], beta: Sequence[int]) -> Root:
    """Apply s_{word[-1]} ... s_{word[0]} to beta, i.e. the element built by
    :func:`dominant_conjugate` (first reflection applied first)."""
    b = tuple(beta)
    for i in word:
        b = rs.reflect(i, b)
    return b


def _components(A: np.ndarray) -> list[list[int]]:
    n = A.shape[0]
    comps, seen = [], set()
    for s in range(n):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in range(n):
                if v not in seen and A[u, v] != 0:
                    seen.add(v)
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def component_type(rs: RootSystem, indices: Iterable[int]) -> list[tuple[str, tuple[int, ...]]]:
    """Decompose a set of 1-based simple-root indices into connected
    components and name each component's Cartan type.

    Returns (name, indices) pairs; short-root type-A components in
    non-simply-laced systems are marked with a trailing ``~``.
    """
    idx = sorted(set(indices))
    z = [i - 1 for i in idx]
    A = rs.cartan_matrix[np.ix_(z, z)]
    lengths = [int(rs.gram[i, i]) for i in z]
    max_len = int(np.max(np.diag(rs.gram)))
    return [(_name_cartan(A[np.ix_(c, c)], [lengths[k] for k in c], max_len),
             tuple(idx[k] for k in c)) for c in _components(A)]


def subsystem_type(rs: RootSystem, gamma: Sequence[Sequence[int]]) -> list[tuple[str, tuple[int, ...]]]:
    """Like :func:`component_type` for an arbitrary list of roots, read as
    the simple system of the subsystem it spans.  Indices are 0-based
    positions in ``gamma``; short type-A components carry a trailing ``~``."""
    gamma = [tuple(g) for g in gamma]
    n = len(gamma)
    if n == 0:
        return []
    A = np.array([[rs.pairing(gamma[j], gamma[i]) for j in range(n)] for i in range(n)], dtype=np.int64)
    lengths = [rs.inner(g, g) for g in gamma]
    max_len = int(np.max(np.diag(rs.gram)))
    return [(_name_cartan(A[np.ix_(c, c)], [lengths[k] for k in c], max_len), tuple(c))
            for c in _components(A)]


def _name_component(rs: RootSystem, comp: tuple[int, ...]) -> str:
    (name, _), = component_type(rs, comp)
    return name


def _name_cartan(A: np.ndarray, lengths: list[int], max_len: int) -> str:
    n = A.shape[0]
    degrees = [(A[i] != 0).sum() - 1 for i in range(n)]
    multi = any(A[i, j] * A[j, i] > 1 for i in range(n) for j in range(n) if i != j)
    if n == 1:
        return "A1" if lengths[0] == max_len else "A1~"
    if max(degrees) >= 3:
        centre = degrees.index(max(degrees))
        arms = _arm_lengths(A, centre)
        return f"D{n}" if arms[:2] == [1, 1] else f"E{n}"
    if not multi:
        return f"A{n}" if lengths[0] == max_len else f"A{n}~"
    prod = max(A[i, j] * A[j, i] for i in range(n) for j in range(n) if i != j)
    if prod == 3:
        return "G2"
    n_long = sum(1 for x in lengths if x == max(lengths))
    n_short = n - n_long
    if n == 4 and n_long == 2:
        return "F4"
    if n_short == 1:
        return f"B{n}"
    if n_long == 1:
        return f"C{n}" if n > 2 else "B2"
    raise RootSystemError(f"cannot name Cartan matrix {A.tolist()}")


def _arm_lengths(A: np.ndarray, centre: int) -> list[int]:
    n = A.shape[0]
    arms = []
    for nb in range(n):
        if nb == centre or A[centre, nb] == 0:
            continue
        length, prev, cur = 1, centre, nb
        while True:
            nxt = [k for k in range(n) if k not in (prev, cur) and A[cur, k] != 0]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return sorted(arms)
