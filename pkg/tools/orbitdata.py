"""Derive nilpotent orbit data (weighted Dynkin diagrams, Bala-Carter labels,
representatives) from scratch.  Used offline by curate.py; not part of the
package API.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from chevorbit import exactla  # noqa: E402
from chevorbit.catalog import canonical_label  # noqa: E402
from chevorbit.chevalley import ad_matrix, build_algebra  # noqa: E402
from chevorbit.rootsys import (  # noqa: E402
    apply_word,
    build_root_system,
    component_type,
    dominant_conjugate,
    solve_rational,
)

P = 1000003  # large prime standing in for characteristic zero

DISTINGUISHED_NAMES = {
    "E6": ["E6", "E6(a1)", "E6(a3)"],
    "E7": ["E7", "E7(a1)", "E7(a2)", "E7(a3)", "E7(a4)", "E7(a5)"],
    "E8": ["E8", "E8(a1)", "E8(a2)", "E8(a3)", "E8(a4)", "E8(b4)", "E8(a5)", "E8(b5)",
           "E8(a6)", "E8(b6)", "E8(a7)"],
    "F4": ["F4", "F4(a1)", "F4(a2)", "F4(a3)"],
    "G2": ["G2", "G2(a1)"],
}


def _classical_names(name: str, count: int) -> list[str]:
    return [name] + [f"{name}(a{k})" for k in range(1, count)]


class Levi:
    """Bookkeeping for the Levi subalgebra on a set of 0-based simple roots."""

    def __init__(self, alg, comp):
        self.alg = alg
        rs = alg.root_system
        self.comp = tuple(sorted(comp))
        cset = set(self.comp)
        self.root_ids = [i for i, r in enumerate(rs.roots) if all(c == 0 or j in cset for j, c in enumerate(r))]
        self.h_ids = [alg.h_index(i + 1) for i in self.comp]
        self.basis = np.array(self.root_ids + self.h_ids, dtype=np.int64)

    def weights(self, D: dict[int, int]) -> np.ndarray:
        rs = self.alg.root_system
        w = [sum(rs.roots[i][j] * D.get(j, 0) for j in self.comp) for i in self.root_ids]
        return np.array(w + [0] * len(self.h_ids), dtype=np.int64)

    def h_coefficients(self, D: dict[int, int]) -> list[Fraction]:
        """c_i (i in comp) with sum_i c_i <alpha_j, alpha_i^vee> = D(j)."""
        A = self.alg.root_system.cartan_matrix
        M = [[Fraction(int(A[i, j])) for i in self.comp] for j in self.comp]
        return solve_rational(M, [Fraction(D[j]) for j in self.comp])

    def is_valid(self, D: dict[int, int], rng) -> bool:
        alg = self.alg
        w = self.weights(D)
        b = self.basis
        i2, im2, i0 = b[w == 2], b[w == -2], b[w == 0]
        if len(i2) > len(i0):
            return False
        e = np.zeros(alg.dim, dtype=np.int64)
        e[i2] = rng.integers(1, P, len(i2))
        A = ad_matrix(alg, e) % P
        img = A[np.ix_(i0, im2)]
        h = np.zeros(alg.dim, dtype=np.int64)
        for ci, i in zip(self.h_coefficients(D), self.comp):
            h[alg.h_index(i + 1)] = ci.numerator * pow(ci.denominator, -1, P) % P
        hv = h[i0]
        r = exactla.rank_mod_p(img.T, P) if img.size else 0
        r2 = exactla.rank_mod_p(np.vstack([img.T, hv[None]]), P) if img.size else int(np.any(hv))
        return r == r2

    def dims(self, D: dict[int, int]) -> dict[int, int]:
        w = self.weights(D)
        vals, cnt = np.unique(w, return_counts=True)
        return dict(zip(vals.tolist(), cnt.tolist()))


def valid_diagrams(alg, rng) -> list[tuple[int, ...]]:
    rs = alg.root_system
    L = Levi(alg, range(rs.rank))
    out = []
    for D in itertools.product((0, 1, 2), repeat=rs.rank):
        d = dict(enumerate(D))
        if L.is_valid(d, rng):
            out.append(D)
    return out


@dataclass
class Component:
    name: str  # e.g. "D4", "A2~"
    indices: tuple  # 0-based
    diagrams: list  # distinguished even diagrams, decreasing orbit dim
    names: list


_COMP_CACHE: dict = {}


def distinguished(alg, comp, rng) -> Component:
    key = (alg.root_system.type_label, tuple(comp))
    if key in _COMP_CACHE:
        return _COMP_CACHE[key]
    rs = alg.root_system
    (name, _), = component_type(rs, [i + 1 for i in comp])
    L = Levi(alg, comp)
    found = []
    for vals in itertools.product((0, 2), repeat=len(comp)):
        d = dict(zip(comp, vals))
        dims = L.dims(d)
        if dims.get(0, 0) != dims.get(2, 0):
            continue
        if L.is_valid(d, rng):
            orbit_dim = len(L.basis) - dims.get(0, 0)
            found.append((orbit_dim, vals))
    found.sort(key=lambda t: -t[0])
    ds = [t[0] for t in found]
    if len(set(ds)) != len(ds):
        raise RuntimeError(f"tied distinguished orbit dims in {name} {comp}: {found}")
    base = name.rstrip("~")
    if base in DISTINGUISHED_NAMES:
        names = DISTINGUISHED_NAMES[base]
        if len(names) != len(found):
            raise RuntimeError(f"{base}: expected {len(names)} distinguished orbits, found {len(found)}")
    else:
        names = _classical_names(base, len(found))
    if name.endswith("~"):
        names = ["~" + n for n in names]
    comp_obj = Component(name, tuple(comp), [v for _, v in found], names)
    _COMP_CACHE[key] = comp_obj
    return comp_obj


@dataclass
class LeviOrbit:
    subset: tuple  # 0-based simple roots of the Levi
    values: dict  # D0 on the subset
    comp_labels: list
    diagram: tuple  # dominant diagram in g
    word: list  # simple reflections moving the Levi h to the dominant one
    label: str = ""


def bala_carter(alg, rng) -> list[LeviOrbit]:
    rs = alg.root_system
    n = rs.rank
    A = rs.cartan_matrix
    out = []
    for size in range(0, n + 1):
        for subset in itertools.combinations(range(n), size):
            comps = component_type(rs, [i + 1 for i in subset]) if subset else []
            comp_objs = [distinguished(alg, [i - 1 for i in idx], rng) for _, idx in comps]
            for choice in itertools.product(*[range(len(c.diagrams)) for c in comp_objs]):
                values = {}
                labels = []
                for c, k in zip(comp_objs, choice):
                    values.update(zip(c.indices, c.diagrams[k]))
                    labels.append(c.names[k])
                if subset:
                    coeffs = Levi(alg, subset).h_coefficients(values)
                    g_vals = [sum(ci * int(A[i, j]) for ci, i in zip(coeffs, subset)) for j in range(n)]
                else:
                    g_vals = [Fraction(0)] * n
                dom, word = dominant_conjugate(rs, g_vals)
                if any(x.denominator != 1 or x not in (0, 1, 2) for x in map(Fraction, dom)):
                    raise RuntimeError(f"non-diagram {dom} from Levi {subset}")
                label = canonical_label("+".join(labels)) if labels else "0"
                out.append(LeviOrbit(subset, values, labels, tuple(int(x) for x in dom), word, label))
    return out


def orbit_dimension(alg, D) -> int:
    w = alg.grading(D)
    return alg.dim - int(np.sum(w == 0)) - int(np.sum(w == 1))


def label_diagrams(alg, rng):
    """Map each orbit diagram to its Bala-Carter label.

    Returns (diagram -> label, diagram -> list of LeviOrbit).
    """
    levi_orbits = bala_carter(alg, rng)
    by_diag: dict = {}
    for lo in levi_orbits:
        by_diag.setdefault(lo.diagram, []).append(lo)
    labels = {}
    for D, los in by_diag.items():
        names = {lo.label for lo in los}
        if len(names) != 1:
            raise RuntimeError(f"diagram {D} has several Bala-Carter labels {names}")
        labels[D] = names.pop()
    # one label on several diagrams: non-conjugate Levis of the same type
    by_label: dict = {}
    for D, lab in labels.items():
        by_label.setdefault(lab, []).append(D)
    for lab, Ds in by_label.items():
        if len(Ds) == 1:
            continue
        if len(Ds) > 2:
            raise RuntimeError(f"label {lab} on {len(Ds)} diagrams")
        Ds.sort(key=lambda D: -orbit_dimension(alg, D))
        d0, d1 = orbit_dimension(alg, Ds[0]), orbit_dimension(alg, Ds[1])
        if d0 == d1:
            raise RuntimeError(f"label {lab}: cannot order two orbits of equal dimension")
        labels[Ds[0]] = f"({lab})'"
        labels[Ds[1]] = f"({lab})''"
    return labels, by_diag


def regular_gamma(alg, lo: LeviOrbit):
    """Gamma = w(Pi_0) for a Levi orbit that is regular in every component,
    where w moves the Levi cocharacter to the dominant chamber."""
    rs = alg.root_system
    return [apply_word(rs, lo.word, rs.simple_roots[i]) for i in lo.subset]


def centralizer_dim(alg, terms, p=P) -> int:
    e = np.zeros(alg.dim, dtype=np.int64)
    for c, r in terms:
        e[alg.root_index(r)] += c
    return alg.dim - exactla.rank_mod_p(ad_matrix(alg, e), p)


def search_gamma(alg, D, rng, tries=4000, max_size=None):
    """Random greedy search for linearly independent Gamma among the
    weight-2 roots with e_Gamma in the dense orbit of g(D, 2)."""
    rs = alg.root_system
    w = alg.grading(D)
    target = int(np.sum(w == 0) + np.sum(w == 1))
    cand = [r for r in rs.positive_roots if sum(a * b for a, b in zip(r, D)) == 2]
    max_size = max_size or rs.rank
    for _ in range(tries):
        order = list(rng.permutation(len(cand)))
        gamma = []
        cur = alg.dim
        for i in order:
            r = cand[i]
            trial = gamma + [r]
            if np.linalg.matrix_rank(np.array(trial, dtype=float)) < len(trial):
                continue
            d = centralizer_dim(alg, [(1, g) for g in trial])
            if d < cur:
                gamma, cur = trial, d
                if cur == target:
                    return gamma
            if len(gamma) >= max_size:
                break
    return None


# ---------------------------------------------------------------- Weyl transport


_NMAT: dict = {}


def _exp_ad(alg, x):
    """exp(ad x) for a root vector x, exactly (divided powers are integral)."""
    A = ad_matrix(alg, x).astype(object)
    out = np.eye(alg.dim, dtype=object)
    term = np.eye(alg.dim, dtype=object)
    k = 1
    while True:
        term = term.dot(A)
        if not np.any(term != 0):
            return out
        q, r = term // k, term % k
        if np.any(r != 0):
            raise RuntimeError("non-integral divided power")
        term = q
        out = out + term
        k += 1


def weyl_matrix(alg, i):
    """Ad(n_i), n_i = exp(e_i) exp(-f_i) exp(e_i), as an integer matrix on
    coefficient vectors; it maps e_beta to +-e_{s_i beta}."""
    key = (alg.root_system.type_label, i)
    if key not in _NMAT:
        rs = alg.root_system
        a = rs.simple_roots[i]
        e = np.zeros(alg.dim, dtype=np.int64)
        e[alg.root_index(a)] = 1
        f = np.zeros(alg.dim, dtype=np.int64)
        f[alg.root_index(tuple(-x for x in a))] = -1
        Ee, Ef = _exp_ad(alg, e), _exp_ad(alg, f)
        _NMAT[key] = Ee.dot(Ef).dot(Ee).astype(np.int64)
    return _NMAT[key]


def transport(alg, word, x):
    """Apply Ad(n_i) for i in word (first applied first) to a coefficient vector."""
    v = np.asarray(x, dtype=np.int64)
    for i in word:
        v = weyl_matrix(alg, i).dot(v)
    return v


def terms_of(alg, v):
    rs = alg.root_system
    out = []
    for j in np.nonzero(v)[0]:
        if j >= 2 * rs.num_positive:
            raise RuntimeError("element has a Cartan component")
        out.append((int(v[j]), rs.roots[j]))
    return out


def levi_standard_gamma(alg, lo, rng=None):
    """Levi-local standard representative of a Levi orbit: in each component,
    the simple roots of Levi weight 2, then further weight-2 roots of the
    component in (height, lexicographic) order whenever they shrink the
    centralizer, until the component's orbit is dense in l(2)."""
    rs = alg.root_system
    gamma = []
    for comp in _components_of(rs, lo.subset):
        d = {j: lo.values[j] for j in comp}
        L = Levi(alg, comp)
        target = L.dims(d).get(0, 0) + L.dims(d).get(1, 0)
        cand = [r for r in rs.positive_roots
                if all(c == 0 or j in comp for j, c in enumerate(r))
                and sum(r[j] * d[j] for j in comp) == 2]
        simple = [r for r in cand if sum(r) == 1]
        rest = [r for r in cand if sum(r) > 1]
        chosen = list(simple)

        def cdim(g):
            e = np.zeros(alg.dim, dtype=np.int64)
            for r in g:
                e[alg.root_index(r)] = 1
            A = ad_matrix(alg, e)[np.ix_(L.basis, L.basis)]
            return len(L.basis) - exactla.rank_mod_p(A, P)

        cur = cdim(chosen)
        for r in rest:
            if cur == target:
                break
            d2 = cdim(chosen + [r])
            if d2 < cur:
                chosen.append(r)
                cur = d2
        if cur != target:
            raise RuntimeError(f"standard form not dense for component {comp}")
        gamma += chosen
    return gamma


def _components_of(rs, subset):
    if not subset:
        return []
    return [[i - 1 for i in idx] for _, idx in component_type(rs, [i + 1 for i in subset])]


def standard_representative(alg, lo):
    """Terms of the Levi standard representative moved to the dominant
    chamber by Weyl representatives (signs kept)."""
    g = levi_standard_gamma(alg, lo)
    v = np.zeros(alg.dim, dtype=np.int64)
    for r in g:
        v[alg.root_index(r)] = 1
    return terms_of(alg, transport(alg, lo.word, v))
