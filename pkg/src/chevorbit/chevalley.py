"""Chevalley basis of a simple Lie algebra with integral structure constants.

Basis order: e_beta for the positive roots (canonical order), then e_{-beta}
in the same order, then h_1..h_rank.  The sign of each structure constant is
fixed by the extraspecial-pair method: for every non-simple positive root xi
the pair (alpha0, beta0) with alpha0 the first positive root in the canonical
order such that xi - alpha0 is a root gets N = +(p + 1); everything else
follows from the three- and four-root identities.

Brackets are stored as a sparse list of (left, right, out, coefficient)
triples, which is all the downstream linear algebra needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .rootsys import Root, RootSystem, build_root_system, root_string


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class ModulusError(ValueError):
    pass


def _neg(r: Root) -> Root:
    return tuple(-c for c in r)


def _add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


class _StructureConstants:
    """N_{alpha,beta} for all pairs of roots, memoized."""

    def __init__(self, rs: RootSystem, order: Sequence[Root] | None = None):
        self.rs = rs
        order = list(order) if order is not None else list(rs.positive_roots)
        self.pos = {r: i for i, r in enumerate(order)}
        self.positive = set(rs.positive_roots)
        self.memo: dict[tuple[Root, Root], int] = {}
        self.extraspecial: dict[Root, tuple[Root, Root]] = {}
        for xi in order:
            if sum(xi) == 1:
                continue
            a0 = next(a for a in order if _add(xi, _neg(a)) in self.positive)
            self.extraspecial[xi] = (a0, _add(xi, _neg(a0)))

    def sq(self, r: Root) -> int:
        return self.rs.inner(r, r)

    def __call__(self, a: Root, b: Root) -> int:
        key = (a, b)
        hit = self.memo.get(key)
        if hit is None:
            hit = self._compute(a, b)
            self.memo[key] = hit
        return hit

    def _compute(self, a: Root, b: Root) -> int:
        s = _add(a, b)
        if not self.rs.is_root(s):
            return 0
        pa, pb = a in self.positive, b in self.positive
        if pa and pb:
            if self.pos[a] > self.pos[b]:
                return -self(b, a)
            a0, b0 = self.extraspecial[s]
            p0, _ = root_string(self.rs, a0, b0)
            n0 = p0 + 1
            if (a, b) == (a0, b0):
                return n0
            total = Fraction(0)
            d1 = _add(b, _neg(a0))
            if self.rs.is_root(d1):
                total += Fraction(self(b, _neg(a0)) * self(a, _neg(b0)), self.sq(d1))
            d2 = _add(a, _neg(a0))
            if self.rs.is_root(d2):
                total += Fraction(self(_neg(a0), a) * self(b, _neg(b0)), self.sq(d2))
            val = Fraction(self.sq(s), n0) * total
            assert val.denominator == 1, "non-integral structure constant"
            return int(val)
        if not pa and not pb:
            return -self(_neg(a), _neg(b))
        # mixed signs: rotate through a + b + c = 0 to a same-sign pair,
        # using N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)
        c = _neg(s)
        pc = c in self.positive
        if pb == pc:
            val = Fraction(self.sq(c) * self(b, c), self.sq(a))
        else:
            val = Fraction(self.sq(c) * self(c, a), self.sq(b))
        assert val.denominator == 1
        return int(val)


@dataclass(frozen=True, eq=False)
class ChevalleyAlgebra:
    root_system: RootSystem
    # sparse bracket table: [basis[left], basis[right]] has coefficient
    # ``coef`` on basis[out]; antisymmetric pairs are both present
    left: np.ndarray = field(repr=False)
    right: np.ndarray = field(repr=False)
    out: np.ndarray = field(repr=False)
    coef: np.ndarray = field(repr=False)
    constants: dict = field(repr=False)

    @property
    def dim(self) -> int:
        return self.root_system.algebra_dim

    @property
    def rank(self) -> int:
        return self.root_system.rank

    @property
    def num_positive(self) -> int:
        return self.root_system.num_positive

    def root_index(self, root: Sequence[int]) -> int:
        return self.root_system.index[tuple(int(c) for c in root)]

    def h_index(self, i: int) -> int:
        """Basis position of h_i (1-based i)."""
        return 2 * self.num_positive + i - 1

    def N(self, a: Sequence[int], b: Sequence[int]) -> int:
        return self.constants.get((tuple(a), tuple(b)), 0)

    @cached_property
    def basis_labels(self) -> list[str]:
        labels = []
        for r in self.root_system.roots:
            labels.append("e" + str(r).replace(" ", ""))
        labels += [f"h{i + 1}" for i in range(self.rank)]
        return labels

    @cached_property
    def _by_out(self) -> list[np.ndarray]:
        order = np.argsort(self.out, kind="stable")
        bounds = np.searchsorted(self.out[order], np.arange(self.dim + 1))
        return [order[bounds[c]:bounds[c + 1]] for c in range(self.dim)]

    def element(self, coefficients, modulus: int = 0) -> "AlgElement":
        return AlgElement(coefficients, modulus)

    def zero(self, modulus: int = 0) -> "AlgElement":
        return AlgElement(np.zeros(self.dim, dtype=np.int64), modulus)

    def basis_element(self, j: int, modulus: int = 0) -> "AlgElement":
        v = np.zeros(self.dim, dtype=np.int64)
        v[j] = 1
        return AlgElement(v, modulus)

    def root_vector(self, root: Sequence[int], coefficient: int = 1, modulus: int = 0) -> "AlgElement":
        v = np.zeros(self.dim, dtype=np.int64)
        v[self.root_index(root)] = coefficient
        return AlgElement(v, modulus)

    def grading(self, dynkin: Sequence) -> np.ndarray:
        """Weight of every basis vector under the cocharacter with the given
        values on the simple roots (h_i get weight 0)."""
        d = np.asarray([int(x) for x in dynkin], dtype=np.int64)
        w = self.root_system.root_array @ d
        return np.concatenate([w, np.zeros(self.rank, dtype=np.int64)])


@dataclass(frozen=True, eq=False)
class AlgElement:
    coefficients: np.ndarray
    modulus: int = 0

    def __post_init__(self):
        v = np.asarray(self.coefficients)
        if v.dtype == object:
            v = v.copy()
        else:
            v = v.astype(np.int64, copy=True)
        if self.modulus:
            v = v % self.modulus
        v.setflags(write=False)
        object.__setattr__(self, "coefficients", v)

    def __add__(self, other: "AlgElement") -> "AlgElement":
        _check_moduli(self, other)
        return AlgElement(self.coefficients + other.coefficients, self.modulus)

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        _check_moduli(self, other)
        return AlgElement(self.coefficients - other.coefficients, self.modulus)

    def __rmul__(self, k: int) -> "AlgElement":
        return AlgElement(self.coefficients * int(k), self.modulus)

    def __neg__(self) -> "AlgElement":
        return AlgElement(-self.coefficients, self.modulus)

    def __eq__(self, other):
        return (
            isinstance(other, AlgElement)
            and self.modulus == other.modulus
            and np.array_equal(self.coefficients, other.coefficients)
        )

    def __hash__(self):
        return hash((self.modulus, tuple(self.coefficients.tolist())))

    def is_zero(self) -> bool:
        return not np.any(self.coefficients)

    def __len__(self):
        return len(self.coefficients)


def _check_moduli(x: AlgElement, y: AlgElement):
    if x.modulus != y.modulus:
        raise ModulusError(f"modulus mismatch: {x.modulus} vs {y.modulus}")


_ALG_CACHE: dict[tuple, ChevalleyAlgebra] = {}


def build_algebra(rs: RootSystem | str, order: Sequence[Root] | None = None) -> ChevalleyAlgebra:
    """Chevalley basis for ``rs``.

    ``order`` optionally replaces the canonical positive-root order used to
    choose extraspecial pairs (the signs change, the algebra does not).
    """
    if isinstance(rs, str):
        rs = build_root_system(rs)
    key = (rs.type_label, None if order is None else tuple(order))
    if key in _ALG_CACHE:
        return _ALG_CACHE[key]
    if order is not None and sorted(order) != sorted(rs.positive_roots):
        raise ValueError("order must be a permutation of the positive roots")
    n = rs.num_positive
    roots = rs.roots
    idx = rs.index
    Nfun = _StructureConstants(rs, order)
    L, R, O, V = [], [], [], []
    constants = {}
    cor = {r: rs.coroot_coordinates(r) for r in rs.positive_roots}
    for a in roots:
        ia = idx[a]
        for b in roots:
            ib = idx[b]
            s = _add(a, b)
            if s in idx:
                nab = Nfun(a, b)
                constants[(a, b)] = nab
                L.append(ia), R.append(ib), O.append(idx[s]), V.append(nab)
            elif not any(s):
                # [e_a, e_{-a}] = h_a; h_{-a} = -h_a
                sign = 1 if ia < n else -1
                c = cor[a if ia < n else _neg(a)]
                for i, ci in enumerate(c):
                    if ci:
                        L.append(ia), R.append(ib), O.append(2 * n + i), V.append(sign * ci)
        # [e_a, h_i] = -<a, alpha_i^vee> e_a and [h_i, e_a] = +<a, alpha_i^vee> e_a
        for i in range(rs.rank):
            k = rs.pairing(a, rs.simple_roots[i])
            if k:
                L.append(2 * n + i), R.append(ia), O.append(ia), V.append(k)
                L.append(ia), R.append(2 * n + i), O.append(ia), V.append(-k)
    alg = ChevalleyAlgebra(
        rs,
        np.array(L, dtype=np.int64),
        np.array(R, dtype=np.int64),
        np.array(O, dtype=np.int64),
        np.array(V, dtype=np.int64),
        constants,
    )
    for arr in (alg.left, alg.right, alg.out, alg.coef):
        arr.setflags(write=False)
    _ALG_CACHE[key] = alg
    return alg


def _as_vector(alg: ChevalleyAlgebra, x) -> tuple[np.ndarray, int]:
    if isinstance(x, AlgElement):
        v, m = x.coefficients, x.modulus
    else:
        v, m = np.asarray(x), 0
    if v.shape[-1] != alg.dim:
        raise ValueError(f"vector length {v.shape[-1]} != algebra dim {alg.dim}")
    return v, m


def bracket(alg: ChevalleyAlgebra, x: AlgElement, y: AlgElement) -> AlgElement:
    _check_moduli(x, y)
    xv, yv = x.coefficients, y.coefficients
    dtype = object if object in (xv.dtype, yv.dtype) else np.int64
    terms = xv[alg.left].astype(dtype) * yv[alg.right].astype(dtype) * alg.coef.astype(dtype)
    out = np.zeros(alg.dim, dtype=dtype)
    np.add.at(out, alg.out, terms)
    return AlgElement(out, x.modulus)


def ad_matrix(alg: ChevalleyAlgebra, x: AlgElement | np.ndarray) -> np.ndarray:
    """Matrix whose column j is [x, basis_j]; reduced mod p when x carries a
    modulus."""
    xv, m = _as_vector(alg, x)
    dtype = object if xv.dtype == object else np.int64
    M = np.zeros((alg.dim, alg.dim), dtype=dtype)
    np.add.at(M, (alg.out, alg.right), xv[alg.left].astype(dtype) * alg.coef.astype(dtype))
    return M % m if m else M


def reduce_mod(alg: ChevalleyAlgebra, x: AlgElement, p: int) -> AlgElement:
    if not _is_prime(int(p)):
        raise ModulusError(f"{p} is not prime")
    if x.modulus not in (0, p):
        raise ModulusError(f"cannot reduce an element mod {x.modulus} to mod {p}")
    return AlgElement(x.coefficients, int(p))


def pairwise_brackets(alg: ChevalleyAlgebra, X: np.ndarray, Y: np.ndarray | None = None,
                      modulus: int = 0) -> np.ndarray:
    """All brackets [X_i, Y_j] as an array of shape (len(X), len(Y), dim).

    Works on whole batches: the sparse table is grouped by output basis
    vector and each group becomes one matrix product.  Over F_p the products
    run in float64 whenever that is exact.
    """
    Y = X if Y is None else Y
    X = np.asarray(X)
    Y = np.asarray(Y)
    k, l = X.shape[0], Y.shape[0]
    obj = X.dtype == object or Y.dtype == object
    use_float = False
    if modulus and not obj:
        worst = max((len(g) for g in alg._by_out), default=0) * 6 * (modulus - 1) ** 2
        use_float = worst < 2**52
    if use_float:
        XA = (X[:, alg.left] * alg.coef).astype(np.float64)
        YB = Y[:, alg.right].astype(np.float64)
        out = np.zeros((k, l, alg.dim), dtype=np.int64)
        for c, g in enumerate(alg._by_out):
            if len(g):
                out[:, :, c] = np.rint(XA[:, g] @ YB[:, g].T).astype(np.int64) % modulus
        return out
    dtype = object if obj else np.int64
    XA = X[:, alg.left].astype(dtype) * alg.coef.astype(dtype)
    YB = Y[:, alg.right].astype(dtype)
    out = np.zeros((k, l, alg.dim), dtype=dtype)
    for c, g in enumerate(alg._by_out):
        if len(g):
            out[:, :, c] = XA[:, g] @ YB[:, g].T
    return out % modulus if modulus else out
