"""Sheets and Lusztig-Spaltenstein induction, as dimension bookkeeping plus
explicit identification of e_Gamma orbits.

A sheet is recorded by a descriptor ``(Pi_0, e_0, induced orbit)`` where
``e_0`` is rigid in the standard Levi subalgebra attached to ``Pi_0``.  Its
dimension and rank are computed, never stored:

    rank  = dim z(l) = rank(g) - |Pi_0|
    dim   = dim g - dim l_{e_0} + rank

Descriptor file format (one sheet per line, ``#`` comments)::

    type F4
    sheet levi=(2,3,4) levi_orbit="A1" induced="B2"
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import exactla
from .catalog import (
    CatalogError,
    GammaRecord,
    OrbitCatalog,
    _split_top,
    canonical_label,
    normalize_label,
)
from .chevalley import ChevalleyAlgebra, ad_matrix
from .classify import LARGE_PRIMES, ClassificationReport, _terms_vector
from .rootsys import (
    LeviSubset,
    RootSystem,
    build_root_system,
    component_type,
    levi_center_dim,
    subsystem_type,
)

PROBE_PRIME = LARGE_PRIMES[0]


# ---------------------------------------------------------------- dimensions


def induced_dimension(rs: RootSystem, levi: LeviSubset | Iterable[int], dim_levi_centralizer: int) -> int:
    """Dimension of Ind_l^g O(e_0), given dim l_{e_0}."""
    levi = _as_levi(rs, levi)
    dim_l = len(rs.levi_roots(levi)) + rs.rank
    if not 0 <= dim_levi_centralizer <= dim_l:
        raise ValueError(f"centralizer dimension {dim_levi_centralizer} exceeds dim l = {dim_l}")
    return rs.algebra_dim - dim_levi_centralizer


def sheet_dimension(orbit_dim: int, rs: RootSystem, levi: LeviSubset | Iterable[int]) -> int:
    return orbit_dim + levi_center_dim(rs, _as_levi(rs, levi))


def _as_levi(rs: RootSystem, levi) -> LeviSubset:
    return levi if isinstance(levi, LeviSubset) else LeviSubset(tuple(levi), rs.rank)


# ---------------------------------------------------------------- Levi orbits


def label_components(label: str) -> Counter:
    """Multiset of simple components of a Bala-Carter style label, in the
    naming of :func:`rootsys.subsystem_type` (short type A gets ``~``).

    Only labels built from regular components (no ``(a_k)`` suffixes) are
    meaningful here; the zero orbit gives the empty multiset.
    """
    label = normalize_label(label)
    if label == "0":
        return Counter()
    out: Counter = Counter()
    for part in _split_top(canonical_label(label), "+"):
        m = re.fullmatch(r"(\d*)(Ã|[A-G])(\d+)", part)
        if not m:
            raise CatalogError(f"label component {part!r} is not a regular type", label)
        mult = int(m.group(1) or 1)
        name = ("A" + m.group(3) + "~") if m.group(2) == "Ã" else m.group(2) + m.group(3)
        out[name] += mult
    return out


def levi_orbit_gamma(rs: RootSystem, levi: LeviSubset, label: str) -> tuple[tuple[int, ...], ...]:
    """A set of roots of the Levi forming a simple system of the given type.

    Its root-vector sum lies in the Bala-Carter orbit ``label`` of the Levi
    whenever that subsystem is a Levi subsystem (true for every label used
    in the shipped descriptors: 0 and single root orbits).
    """
    target = label_components(label)
    if not target:
        return ()
    size = sum(int(n[1:].rstrip("~")) * k for n, k in target.items())
    cand = [r for r in rs.levi_roots(levi, positive_only=True)]
    found = _search_subsystem(rs, cand, target, size)
    if found is None:
        raise CatalogError(f"no subsystem of type {label} in Levi {levi.subset}", label)
    return found


def _search_subsystem(rs, cand, target, size):
    def ok(gamma):
        for a, b in itertools.combinations(gamma, 2):
            if rs.pairing(a, b) > 0:
                return False
        M = np.array(gamma, dtype=float)
        return np.linalg.matrix_rank(M) == len(gamma)

    def rec(start, gamma):
        if len(gamma) == size:
            names = Counter(n for n, _ in subsystem_type(rs, gamma))
            return tuple(gamma) if names == target else None
        for i in range(start, len(cand)):
            g = gamma + [cand[i]]
            if ok(g):
                hit = rec(i + 1, g)
                if hit is not None:
                    return hit
        return None

    return rec(0, [])


def levi_element(cat: OrbitCatalog, levi: LeviSubset, label: str) -> np.ndarray:
    """Integer coefficient vector of a representative of ``label`` in the
    Levi.  For the full Levi the catalog representative is used."""
    rs = cat.root_system
    if len(levi) == rs.rank:
        return _terms_vector(cat, cat.get(label))
    alg = cat.algebra
    v = np.zeros(alg.dim, dtype=np.int64)
    for r in levi_orbit_gamma(rs, levi, label):
        v[alg.root_index(r)] += 1
    return v


def levi_basis(alg: ChevalleyAlgebra, levi: LeviSubset) -> np.ndarray:
    """Indices of the basis vectors spanning the Levi (all of the Cartan)."""
    rs = alg.root_system
    idx = [alg.root_index(r) for r in rs.levi_roots(levi)]
    idx += [alg.h_index(i) for i in range(1, rs.rank + 1)]
    return np.array(sorted(idx), dtype=np.int64)


def levi_centralizer_dim(alg: ChevalleyAlgebra, levi: LeviSubset, e0: np.ndarray,
                         p: int = PROBE_PRIME) -> int:
    """dim l_{e_0}, with ad e_0 restricted to the Levi, computed mod p."""
    b = levi_basis(alg, levi)
    A = ad_matrix(alg, e0)[np.ix_(b, b)]
    return len(b) - exactla.rank_mod_p(A, p)


def nilradical_roots(rs: RootSystem, levi: LeviSubset) -> list[tuple[int, ...]]:
    """Positive roots outside the Levi: the nilradical of the standard
    parabolic with Levi factor l."""
    inside = set(rs.levi_roots(levi, positive_only=True))
    return [r for r in rs.positive_roots if r not in inside]


def induce_element(alg: ChevalleyAlgebra, levi: LeviSubset, e0: np.ndarray, rng,
                   p: int = PROBE_PRIME) -> np.ndarray:
    """A random element of e_0 + n mod p; it lies in the induced orbit for
    all choices outside a proper closed subset."""
    x = np.asarray(e0, dtype=np.int64) % p
    for r in nilradical_roots(alg.root_system, levi):
        x[alg.root_index(r)] = (x[alg.root_index(r)] + int(rng.integers(1, p))) % p
    return x


# ---------------------------------------------------------------- descriptors


@dataclass(frozen=True)
class SheetDescriptor:
    levi_subset: LeviSubset
    levi_orbit_label: str
    induced_orbit_label: str
    sheet_dim: int
    sheet_rank: int
    induced_dim: int
    line: int | None = field(default=None, compare=False)


_SHEET_RE = re.compile(r'^sheet\s+levi=\(([^)]*)\)\s+levi_orbit="([^"]*)"\s+induced="([^"]*)"\s*$')


def parse_descriptors(text: str, cat: OrbitCatalog) -> list[SheetDescriptor]:
    """Parse a descriptor file and compute every sheet's dimension and rank.

    The induced dimension is computed from the Levi data and must agree with
    the dimension of the named induced orbit in the catalog.
    """
    rs = cat.root_system
    alg = cat.algebra
    out = []
    type_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not type_seen:
            m = re.fullmatch(r"type\s+(\S+)", line)
            if not m or m.group(1) != cat.type_label:
                raise CatalogError(f"expected 'type {cat.type_label}' header", line=lineno)
            type_seen = True
            continue
        m = _SHEET_RE.match(line)
        if not m:
            raise CatalogError(f"unexpected line {line!r}", line=lineno)
        idx = tuple(int(x) for x in m.group(1).split(",") if x.strip())
        try:
            levi = LeviSubset(idx, rs.rank)
        except ValueError as exc:
            raise CatalogError(str(exc), line=lineno) from None
        lo, ind = normalize_label(m.group(2)), normalize_label(m.group(3))
        if ind not in cat:
            raise CatalogError(f"induced orbit {ind!r} not in catalog", ind, lineno)
        e0 = levi_element(cat, levi, lo)
        d_lc = levi_centralizer_dim(alg, levi, e0)
        n = induced_dimension(rs, levi, d_lc)
        expected = catalog_orbit_dim(cat, ind)
        if n != expected:
            raise CatalogError(f"induced dimension {n} from Levi {idx} differs from dim {ind} = {expected}",
                               ind, lineno)
        out.append(SheetDescriptor(levi, lo, ind, sheet_dimension(n, rs, levi),
                                   levi_center_dim(rs, levi), n, lineno))
    return out


def load_descriptors(path, cat: OrbitCatalog) -> list[SheetDescriptor]:
    return parse_descriptors(Path(path).read_text(encoding="utf-8"), cat)


def catalog_orbit_dim(cat: OrbitCatalog, label: str) -> int:
    """Orbit dimension in good characteristic, read off the weighted Dynkin
    diagram: dim g - dim g(0) - dim g(1) = dim g(1) + 2 dim g(>=2)."""
    rec = cat.get(label)
    if rec.dynkin_weights is None:
        raise CatalogError("orbit has no Dynkin weights", rec.label)
    w = cat.algebra.grading(rec.dynkin_weights.coefficients)
    return int(np.sum(w >= 2) + np.sum(w <= -2) + np.sum(w == 1))


def sheet_census(descriptors: Iterable[SheetDescriptor]) -> dict[str, int]:
    """d(O): number of sheets containing each nilpotent orbit."""
    return dict(Counter(d.induced_orbit_label for d in descriptors))


def sheets_of_dimension(descriptors: Iterable[SheetDescriptor], dim: int) -> list[SheetDescriptor]:
    return [d for d in descriptors if d.sheet_dim == dim]


# ---------------------------------------------------------------- Levi classes


def levi_type_key(rs: RootSystem, levi: LeviSubset | Iterable[int]) -> tuple[str, ...]:
    """Sorted multiset of component types of a standard Levi.

    Heuristic conjugacy test: W-conjugate Levis have equal keys, but equal
    keys do not prove conjugacy (E7 has two classes of type A5, for example).
    """
    levi = _as_levi(rs, levi)
    return tuple(sorted(n for n, _ in component_type(rs, levi.subset)))


@dataclass(frozen=True)
class LeviClasses:
    representatives: tuple[LeviSubset, ...]
    heuristic: bool = True


def levi_classes_heuristic(rs: RootSystem, proper: bool = True) -> LeviClasses:
    """One standard Levi per :func:`levi_type_key`; marked heuristic."""
    seen = {}
    for k in range(rs.rank + (0 if proper else 1)):
        for sub in itertools.combinations(range(1, rs.rank + 1), k):
            key = levi_type_key(rs, sub)
            seen.setdefault(key, LeviSubset(sub, rs.rank))
    return LeviClasses(tuple(seen.values()))


# ---------------------------------------------------------------- Dynkin extension


@dataclass(frozen=True)
class ExtensionResult:
    diagram: tuple[int, ...]
    valid: bool
    label: str | None


def extend_dynkin(rs: RootSystem, levi: LeviSubset | Iterable[int], d0: Mapping[int, int] | Sequence[int],
                  diagram_catalog: OrbitCatalog | Mapping[tuple, str]) -> ExtensionResult:
    """D~_0: D_0 on Pi_0 and 2 elsewhere, looked up among the catalog's
    weighted Dynkin diagrams.  ``d0`` maps 1-based indices of Pi_0 to values,
    or lists the values in the order of Pi_0."""
    levi = _as_levi(rs, levi)
    if not len(levi):
        raise ValueError("Pi_0 must be nonempty")
    if not isinstance(d0, Mapping):
        d0 = dict(zip(levi.subset, d0))
    if set(d0) != set(levi.subset) or any(v not in (0, 1, 2) for v in d0.values()):
        raise ValueError("D_0 must assign a value in {0,1,2} to every index of Pi_0")
    diagram = tuple(d0.get(i, 2) for i in range(1, rs.rank + 1))
    table = diagram_catalog.by_dynkin() if isinstance(diagram_catalog, OrbitCatalog) else diagram_catalog
    label = table.get(diagram)
    return ExtensionResult(diagram, label is not None, label)


# ---------------------------------------------------------------- Gamma identification


@lru_cache(maxsize=None)
def _catalog_partitions(cat_key: int, p: int) -> dict:
    cat = _CATS[cat_key]
    alg = cat.algebra
    out = {}
    for rec in cat.records_at(p):
        e = _terms_vector(cat, rec)
        out[rec.label] = exactla.jordan_partition(ad_matrix(alg, e) % p, p)
    return out


_CATS: dict[int, OrbitCatalog] = {}


def catalog_partitions(cat: OrbitCatalog, p: int) -> dict[str, exactla.Partition]:
    """Jordan partition of ad(representative) mod p for every orbit at p."""
    _CATS[id(cat)] = cat
    return _catalog_partitions(id(cat), p)


@dataclass(frozen=True)
class GammaIdentification:
    record: GammaRecord
    prime: int
    labels: tuple[str, ...]
    ambiguous: bool
    orbit_dim: int
    levi_induced_dim: int
    catalog_dims_agree: bool
    resolved: str | None = None
    evidence: str = ""

    @property
    def dimension_identity(self) -> bool:
        return self.orbit_dim == self.levi_induced_dim

    @property
    def label(self) -> str | None:
        if self.resolved is not None:
            return self.resolved
        return self.labels[0] if len(self.labels) == 1 else None

    @property
    def matches_declared(self) -> bool:
        return self.label == self.record.orbit_label


def identify_gamma_orbit(alg: ChevalleyAlgebra, cat: OrbitCatalog, g: GammaRecord, p: int) -> GammaIdentification:
    """Match ad(e_Gamma) mod p against the catalog by Jordan partition."""
    if not cat.good_prime(p):
        raise ValueError(f"p={p} is not good for {cat.type_label}")
    e = np.zeros(alg.dim, dtype=np.int64)
    for r in g.gamma:
        e[alg.root_index(r)] += 1
    A = ad_matrix(alg, e) % p
    part = exactla.jordan_partition(A, p)
    table = catalog_partitions(cat, p)
    labels = tuple(lab for lab, q in table.items() if q == part)
    if not labels:
        raise CatalogError(f"no orbit at p={p} has partition {part}", g.orbit_label, g.line)
    orbit_dim = exactla.rank_mod_p(A, p)
    dims_ok = all(catalog_orbit_dim(cat, lab) == orbit_dim for lab in labels)
    e0 = levi_element(cat, g.levi_subset, g.levi_orbit_label)
    n = induced_dimension(cat.root_system, g.levi_subset,
                          levi_centralizer_dim(alg, g.levi_subset, e0, p))
    return GammaIdentification(g, p, labels, len(labels) > 1, orbit_dim, n, dims_ok)


def resolve_ambiguities(idents: Sequence[GammaIdentification], cat: OrbitCatalog) -> list[GammaIdentification]:
    """Settle partition ties with the Dynkin-extension argument.

    A record whose Levi orbit is zero claims the orbit of the extended
    diagram (0 on Pi_0, 2 elsewhere) when that diagram is valid.  Among the
    records left with the same candidate set, labels claimed this way are
    removed; a single survivor is accepted.
    """
    rs = cat.root_system
    out = list(idents)
    claimed: dict[tuple, set] = {}
    for i, gi in enumerate(out):
        if not gi.ambiguous:
            continue
        rec = gi.record
        if normalize_label(rec.levi_orbit_label) == "0" and len(rec.levi_subset):
            ext = extend_dynkin(rs, rec.levi_subset, [0] * len(rec.levi_subset), cat)
            if ext.valid and ext.label in gi.labels:
                out[i] = _resolved(gi, ext.label, f"Dynkin extension {ext.diagram} is valid")
                claimed.setdefault(gi.labels, set()).add(ext.label)
    for i, gi in enumerate(out):
        if gi.ambiguous and gi.resolved is None:
            left = [lab for lab in gi.labels if lab not in claimed.get(gi.labels, set())]
            if len(left) == 1:
                out[i] = _resolved(gi, left[0], "the other candidates are claimed by Dynkin extension")
    return out


def _resolved(gi: GammaIdentification, label: str, evidence: str) -> GammaIdentification:
    return GammaIdentification(gi.record, gi.prime, gi.labels, gi.ambiguous, gi.orbit_dim,
                               gi.levi_induced_dim, gi.catalog_dims_agree, label, evidence)


# ---------------------------------------------------------------- rigidity


RIGID, INDUCED, UNDETERMINED = "Rigid", "Induced", "Undetermined"


@dataclass(frozen=True)
class RigidityVerdict:
    orbit_label: str
    verdict: str
    evidence: str


@dataclass
class SheetData:
    """Auxiliary evidence for :func:`rigidity_verdict`.

    ``descriptors`` must list every sheet when ``complete`` is set; then an
    orbit absent from the proper-Levi descriptors is rigid.
    ``inducible_dims`` is the set of dimensions of all orbits induced from
    proper Levis (see :func:`inducible_dimensions`).
    """

    catalog: OrbitCatalog | None = None
    descriptors: list[SheetDescriptor] | None = None
    complete: bool = False
    inducible_dims: frozenset | None = None


def rigidity_verdict(report: ClassificationReport, sheet_data: SheetData | None = None) -> RigidityVerdict:
    label = report.orbit_label
    if report.prime and report.type_label and report.prime in _bad(report.type_label):
        raise ValueError("rigidity verdicts are only defined at good primes")
    if report.strongly_reachable:
        return RigidityVerdict(label, RIGID, "perfect centralizer")
    sd = sheet_data or SheetData()
    rank = None
    if sd.catalog is not None and label in sd.catalog:
        rec = sd.catalog.get(label)
        rank = sd.catalog.root_system.rank
        if rec.dynkin_weights is not None:
            D = rec.dynkin_weights.coefficients
            sub = tuple(i + 1 for i, v in enumerate(D) if v != 2)
            if len(sub) < rank:
                if not sub:
                    return RigidityVerdict(label, INDUCED, "even diagram with no zero label: induced from the torus")
                ext = extend_dynkin(sd.catalog.root_system, sub, [D[i - 1] for i in sub], sd.catalog)
                if ext.valid and ext.label == label:
                    return RigidityVerdict(label, INDUCED, f"Dynkin extension from Levi {sub}")
    if sd.descriptors:
        rank = rank or max((len(d.levi_subset) + d.sheet_rank for d in sd.descriptors), default=0)
        for d in sd.descriptors:
            if d.induced_orbit_label == label and d.sheet_rank > 0:
                return RigidityVerdict(label, INDUCED, f"sheet descriptor from Levi {d.levi_subset.subset}")
        if sd.complete:
            return RigidityVerdict(label, RIGID, "sheet census: no proper Levi induces it")
    if sd.inducible_dims is not None and report.prime:
        if report.orbit_dim not in sd.inducible_dims:
            return RigidityVerdict(label, RIGID,
                                   f"dimension census: no proper Levi induces an orbit of dimension {report.orbit_dim}")
    return RigidityVerdict(label, UNDETERMINED,
                           "centralizer not perfect and no inducing pair found; needs sheet census evidence")


def _bad(type_label: str) -> set[int]:
    from .catalog import bad_primes
    try:
        return bad_primes(type_label)
    except CatalogError:
        return set()


# ---------------------------------------------------------------- dimension census


def _classical_centralizer_dims(kind: str, n: int) -> set[int]:
    """Centralizer dimensions of nilpotent orbits in the simple algebra of
    type kind_n, from the partition formulas."""
    if kind == "A":
        size, ok = n + 1, lambda lam: True
    elif kind == "B":
        size, ok = 2 * n + 1, lambda lam: _even_mult(lam, parity=0)
    elif kind == "C":
        size, ok = 2 * n, lambda lam: _even_mult(lam, parity=1)
    elif kind == "D":
        size, ok = 2 * n, lambda lam: _even_mult(lam, parity=0)
    else:
        raise ValueError(kind)
    out = set()
    for lam in _partitions(size):
        if not ok(lam):
            continue
        conj = [sum(1 for x in lam if x > i) for i in range(lam[0])]
        s = sum(c * c for c in conj)
        odd = sum(1 for x in lam if x % 2)
        if kind == "A":
            out.add(s - 1)
        elif kind in ("B", "D"):
            out.add((s - odd) // 2)
        else:
            out.add((s + odd) // 2)
    return out


def _even_mult(lam, parity):
    """Parts of the given parity (0: even, 1: odd) occur with even multiplicity."""
    c = Counter(lam)
    return all(m % 2 == 0 for x, m in c.items() if x % 2 == parity)


def _partitions(n, maxpart=None):
    maxpart = n if maxpart is None else maxpart
    if n == 0:
        yield ()
        return
    for k in range(min(n, maxpart), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _exceptional_centralizer_dims(name: str) -> set[int]:
    from .catalog import load_default_catalog
    cat = load_default_catalog(name)
    dim = cat.root_system.algebra_dim
    return {dim - catalog_orbit_dim(cat, r.label) for r in cat.records if r.dynkin_weights is not None}


def _component_centralizer_dims(name: str) -> set[int]:
    base = name.rstrip("~")
    kind, n = base[0], int(base[1:])
    if kind in "ABCD":
        return _classical_centralizer_dims(kind, n)
    return _exceptional_centralizer_dims(base)


def inducible_dimensions(rs: RootSystem | str) -> frozenset:
    """Dimensions of all orbits induced from proper Levi subalgebras:
    dim g - dim l_{e_0} over every proper standard Levi and every nilpotent
    e_0 in it (induction is transitive, so rigid e_0 suffice but all are
    harmless)."""
    if isinstance(rs, str):
        rs = build_root_system(rs)
    out = set()
    for levi in levi_classes_heuristic(rs).representatives:
        comps = [name for name, _ in component_type(rs, levi.subset)] if len(levi) else []
        centre = rs.rank - len(levi)
        for combo in itertools.product(*[sorted(_component_centralizer_dims(c)) for c in comps]):
            out.add(rs.algebra_dim - centre - sum(combo))
    return frozenset(out)
