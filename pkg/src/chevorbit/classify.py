"""Centralizers, derived subalgebras and reachability of nilpotent elements.

Two tracks:

* over F_p everything is computed directly mod p (centralizer = kernel of
  ad e mod p), so dimension jumps at bad primes are seen as they are;
* over Z the centralizer is a saturated lattice, the bracket matrices are
  integer matrices, and their elementary divisors bound the primes at which
  the answer can differ from characteristic zero.
"""

from __future__ import annotations

import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from . import exactla
from .catalog import CatalogError, OrbitCatalog, OrbitRecord, representative
from .chevalley import AlgElement, ChevalleyAlgebra, ad_matrix, pairwise_brackets
from .exactla import Partition, SpanMod

# stand-in for "large p" where a characteristic-zero quantity is computed mod p
LARGE_PRIMES = (1000003, 998244353)


@dataclass(frozen=True)
class PanyushevResult:
    holds: bool
    depth_r: int
    graded_dims: dict = field(default_factory=dict, compare=False)
    generated_dims: tuple = field(default=(), compare=False)


@dataclass(frozen=True)
class ClassificationReport:
    orbit_label: str
    prime: int
    dim_g: int
    dim_centralizer: int
    dim_derived: int
    reachable: bool
    strongly_reachable: bool
    almost_reachable: bool
    jordan: Partition | None = None
    panyushev: PanyushevResult | None = None
    prime_bound: frozenset | None = None
    type_label: str = ""

    @property
    def c(self) -> int:
        return self.dim_centralizer - self.dim_derived

    @property
    def orbit_dim(self) -> int:
        return self.dim_g - self.dim_centralizer


# ---------------------------------------------------------------- pieces


def _vec(x) -> tuple[np.ndarray, int]:
    if isinstance(x, AlgElement):
        return x.coefficients, x.modulus
    return np.asarray(x), 0


def centralizer_matrix(alg: ChevalleyAlgebra, e, p: int | None = None) -> np.ndarray:
    """Rows form a basis of the centralizer of e: a canonical echelon basis
    over F_p, or a saturated Z-basis when p = 0."""
    v, m = _vec(e)
    p = m if p is None else p
    A = ad_matrix(alg, v)
    if p:
        return exactla.nullspace_mod_p(A, p)
    return exactla.saturated_kernel(A.T)


def centralizer(alg: ChevalleyAlgebra, e: AlgElement) -> list[AlgElement]:
    B = centralizer_matrix(alg, e)
    return [AlgElement(row, e.modulus) for row in B]


def bracket_matrix(alg: ChevalleyAlgebra, basis: np.ndarray, p: int = 0) -> np.ndarray:
    """Rows are the coefficient vectors of [b_i, b_j] for i < j."""
    k = basis.shape[0]
    if k < 2:
        return np.zeros((0, alg.dim), dtype=np.int64)
    out = pairwise_brackets(alg, basis, basis, p)
    iu, ju = np.triu_indices(k, 1)
    M = out[iu, ju]
    return M[np.any(M != 0, axis=1)]


def derived_span_mod_p(alg: ChevalleyAlgebra, basis: np.ndarray, p: int) -> SpanMod:
    span = SpanMod(alg.dim, p)
    k = basis.shape[0]
    # bracket in row blocks so the pair tensor stays small
    step = max(1, 4096 // max(k, 1))
    for s in range(0, k, step):
        block = pairwise_brackets(alg, basis[s:s + step], basis, p)
        rows = block.reshape(-1, alg.dim)
        span.add(rows[np.any(rows, axis=1)], cap=k)
        if span.dim >= k:
            break
    return span


def derived_dim(alg: ChevalleyAlgebra, cent_basis: np.ndarray, p: int) -> tuple[int, np.ndarray | None]:
    """Dimension of the derived subalgebra of the span of ``cent_basis``.

    Over F_p the bracket matrix is reduced on the fly and only its rank is
    kept (None is returned for the matrix); over Z the full matrix M is
    returned for prime bounding.
    """
    if p:
        return derived_span_mod_p(alg, cent_basis, p).dim, None
    M = bracket_matrix(alg, cent_basis, 0)
    return exactla.rank_q(M), M


def jordan_of_ad(alg: ChevalleyAlgebra, e, p: int) -> Partition:
    v, _ = _vec(e)
    A = ad_matrix(alg, v)
    if p:
        return exactla.jordan_partition(A, p)
    # characteristic zero: ranks over Q are the largest ranks seen mod p
    parts = [exactla.jordan_partition(A, q) for q in LARGE_PRIMES]
    return min(parts, key=lambda P: P.conjugate().parts)


def grading_pieces(alg: ChevalleyAlgebra, e, weights: np.ndarray, p: int) -> dict[int, np.ndarray]:
    """g_e(i) = ker(ad e) on the weight-i subspace, as rows over F_p."""
    v, _ = _vec(e)
    A = ad_matrix(alg, v) % p
    out = {}
    for w in sorted(set(weights.tolist())):
        cols = np.flatnonzero(weights == w)
        K = exactla.nullspace_mod_p(A[:, cols], p)
        if K.shape[0]:
            full = np.zeros((K.shape[0], alg.dim), dtype=np.int64)
            full[:, cols] = K
            out[int(w)] = full
    return out


def generate_subalgebra(alg: ChevalleyAlgebra, seed: np.ndarray, p: int, cap: int | None = None) -> SpanMod:
    """Span of all iterated brackets of the seed vectors, over F_p."""
    span = SpanMod(alg.dim, p)
    span.add(seed)
    frontier = span.rows.copy()
    while frontier.shape[0]:
        before = span.dim
        old_pivots = set(span.pivots)
        out = pairwise_brackets(alg, frontier, span.rows, p).reshape(-1, alg.dim)
        span.add(out[np.any(out, axis=1)])
        if span.dim == before or (cap is not None and span.dim >= cap):
            break
        new = [i for i, c in enumerate(span.pivots) if c not in old_pivots]
        # frontier = newly added directions (rows are re-reduced, so take
        # every row touching a new pivot)
        frontier = span.rows[new]
    return span


def panyushev(alg: ChevalleyAlgebra, e, dynkin: Sequence[int], p: int) -> PanyushevResult:
    weights = alg.grading(dynkin)
    pieces = grading_pieces(alg, e, weights, p)
    positive = [w for w in sorted(pieces) if w >= 1]
    target = sum(pieces[w].shape[0] for w in positive)
    dims = {w: pieces[w].shape[0] for w in sorted(pieces)}
    if target == 0:
        return PanyushevResult(True, 1, dims, (0,))
    generated = []
    depth = None
    max_w = max(positive)
    for r in range(1, max_w + 1):
        seeds = [pieces[w] for w in positive if w <= r]
        if not seeds:
            generated.append(0)
            continue
        span = generate_subalgebra(alg, np.vstack(seeds), p, cap=target)
        generated.append(span.dim)
        if span.dim == target:
            depth = r
            break
    assert depth is not None, "seed of all positive pieces must generate"
    return PanyushevResult(depth == 1, depth, dims, tuple(generated))


# ---------------------------------------------------------------- reports


def analyze_element(alg: ChevalleyAlgebra, e: np.ndarray, p: int, label: str = "",
                    dynkin: Sequence[int] | None = None, with_jordan: bool = True,
                    with_panyushev: bool = False, type_label: str = "") -> ClassificationReport:
    """Classify one element (integer coefficient vector) at p (or p = 0)."""
    e = np.asarray(e, dtype=np.int64)
    if p:
        ev = e % p
        B = centralizer_matrix(alg, ev, p)
        span = derived_span_mod_p(alg, B, p)
        dd = span.dim
        reach = span.contains(ev)
        bound = None
    else:
        B = centralizer_matrix(alg, e, 0)
        M = bracket_matrix(alg, B, 0)
        divs = exactla.elementary_divisors(M)
        dd = len(divs)
        Mp = np.vstack([M, e[None, :]]) if M.size else e[None, :]
        divs_e = exactla.elementary_divisors(Mp)
        reach = len(divs_e) == dd
        bound = set()
        A = ad_matrix(alg, e)
        for d in divs + divs_e + exactla.elementary_divisors(A):
            bound |= exactla._prime_factors(d)
        bound = frozenset(bound)
    k = B.shape[0]
    strong = dd == k
    almost = (not reach) and k == dd + 1
    jordan = jordan_of_ad(alg, e, p) if with_jordan else None
    pan = None
    if with_panyushev and p and dynkin is not None:
        pan = panyushev(alg, e, dynkin, p)
    return ClassificationReport(label, p, alg.dim, k, dd, bool(reach), strong, almost,
                                jordan, pan, bound, type_label)


def reachability(alg: ChevalleyAlgebra, cat: OrbitCatalog, label: str, p: int) -> ClassificationReport:
    rec = cat.get(label)
    if not rec.defined_at(p, cat.type_label):
        raise CatalogError(f"orbit not defined at p={p}", rec.label)
    return analyze_element(alg, _terms_vector(cat, rec), p, rec.label, with_jordan=False,
                           type_label=cat.type_label)


def _terms_vector(cat: OrbitCatalog, rec: OrbitRecord) -> np.ndarray:
    alg = cat.algebra
    v = np.zeros(alg.dim, dtype=np.int64)
    for c, root in rec.terms:
        v[alg.root_index(root)] += c
    return v


def bound_exceptional_primes(alg: ChevalleyAlgebra, cat: OrbitCatalog, label: str) -> frozenset:
    rec = cat.get(label)
    if not rec.char0:
        raise CatalogError("orbit is not defined in characteristic 0", rec.label)
    return analyze_element(alg, _terms_vector(cat, rec), 0, rec.label, with_jordan=False).prime_bound


def classify_record(cat: OrbitCatalog, label: str, p: int, jordan: bool = True,
                    panyushev_at_good: bool = True) -> ClassificationReport:
    rec = cat.get(label)
    if not rec.defined_at(p, cat.type_label):
        raise CatalogError(f"orbit not defined at p={p}", rec.label)
    alg = cat.algebra
    good = p and cat.good_prime(p)
    dyn = rec.dynkin_weights.coefficients if rec.dynkin_weights is not None else None
    return analyze_element(alg, _terms_vector(cat, rec), p, rec.label, dyn,
                           with_jordan=jordan,
                           with_panyushev=bool(panyushev_at_good and good and dyn is not None),
                           type_label=cat.type_label)


@dataclass(frozen=True)
class ClassifyOptions:
    jordan: bool = True
    panyushev: bool = True
    char0: bool = True
    jobs: int = 1
    progress: bool = False


def _task(args):
    cat, label, p, opts = args
    return classify_record(cat, label, p, jordan=opts.jordan and p != 0,
                           panyushev_at_good=opts.panyushev)


def classify_all(cat: OrbitCatalog, primes: Iterable[int], options: ClassifyOptions | None = None,
                 errors: list | None = None) -> list[ClassificationReport]:
    """One report per (orbit, prime) where the orbit is defined, plus a
    characteristic-zero report per orbit when ``options.char0`` is set.

    The result order is catalog order, then primes ascending with p = 0 last,
    whatever the parallelism.
    """
    opts = options or ClassifyOptions()
    primes = sorted(set(int(p) for p in primes))
    tasks = []
    for rec in cat.records:
        for p in primes:
            if rec.defined_at(p, cat.type_label):
                tasks.append((cat, rec.label, p, opts))
        if opts.char0 and rec.char0:
            tasks.append((cat, rec.label, 0, opts))
    results: list[ClassificationReport | None] = [None] * len(tasks)
    if opts.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=opts.jobs) as ex:
            futs = {ex.submit(_task, t): i for i, t in enumerate(tasks)}
            for fut in futs:
                i = futs[fut]
                try:
                    results[i] = fut.result()
                except Exception as exc:  # aggregated, non-fatal
                    if errors is not None:
                        errors.append((tasks[i][1], tasks[i][2], repr(exc)))
                if opts.progress:
                    print(f"[{cat.type_label}] {tasks[i][1]} p={tasks[i][2]}", file=sys.stderr)
    else:
        for i, t in enumerate(tasks):
            if opts.progress:
                print(f"[{cat.type_label}] {t[1]} p={t[2]}", file=sys.stderr)
            try:
                results[i] = _task(t)
            except Exception as exc:
                if errors is not None:
                    errors.append((t[1], t[2], repr(exc)))
    return [r for r in results if r is not None]
