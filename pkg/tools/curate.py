"""Write the shipped catalogs (src/chevorbit/data/<type>.cat) and sheet
descriptor files (<type>.sheets).

Orbit data is derived, not copied:
  * weighted Dynkin diagrams and Bala-Carter labels come from orbitdata.py;
  * representatives are sums of root vectors e_Gamma with Gamma a set of
    weight-2 roots whose sum is in the dense orbit of g(D, 2).  Among the
    candidates found, the one with the smallest total centralizer dimension
    over the bad primes is kept (the most generic reduction), except for
    orbits with a D_n(a1) Levi component (see LEVI_STANDARD);
  * the F4(a3) representative is fixed to the corrected form quoted in the
    literature and checked against the rule above;
  * bad-prime extras were located with find_extras.py (see EXTRAS);
  * F4 and G2 sheets are enumerated from Levi classes and their rigid
    orbits, and every induced label is computed by sampling e_0 + n.

    python3 tools/curate.py [TYPE ...]
"""

from __future__ import annotations

import re
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent))

from orbitdata import (  # noqa: E402
    P,
    centralizer_dim,
    label_diagrams,
    orbit_dimension,
    regular_gamma,
    search_gamma,
    standard_representative,
)

from chevorbit import exactla  # noqa: E402
from chevorbit.catalog import (  # noqa: E402
    GammaRecord,
    OrbitRecord,
    bad_primes,
    catalog_from_records,
    data_dir,
    serialize_catalog,
)
from chevorbit.chevalley import ad_matrix, build_algebra  # noqa: E402
from chevorbit.rootsys import Coweight, LeviSubset, component_type  # noqa: E402
from chevorbit import sheets  # noqa: E402

# Orbits that exist only at one bad prime.  Representatives were found by
# tools/find_extras.py, which enumerates invariant classes in n(F_p).  The
# search gives no names: each class was matched to a label of the printed
# tables by c and reachability, and within equal (c, reachability) by
# decreasing centralizer dimension against increasing char-0 dimension of
# the base label.  See the notes file for the one F4 class that matches no
# printed value.
EXTRAS: dict[str, list[tuple[str, frozenset, list[tuple[int, ...]]]]] = {
    "G2": [
        ("Ã1^(3)", frozenset({3}), [(1, 1), (3, 2)]),
    ],
    "F4": [
        ("Ã1^(2)", frozenset({2}), [(0, 1, 1, 0), (0, 1, 2, 0)]),
        ("A2^(2)", frozenset({2}), [(0, 0, 1, 1), (1, 1, 2, 2), (1, 2, 2, 1)]),
        ("B2^(2)", frozenset({2}), [(0, 1, 0, 0), (0, 1, 1, 0), (1, 1, 2, 2)]),
        ("(Ã2+A1)^(2)", frozenset({2}), [(0, 1, 1, 0), (1, 1, 1, 1), (1, 1, 2, 2), (1, 2, 2, 0)]),
        ("C3(a1)^(2)", frozenset({2}), [(0, 1, 2, 0), (1, 1, 1, 0), (0, 1, 2, 1), (1, 2, 2, 2)]),
        ("C3^(2)", frozenset({2}), [(0, 1, 0, 0), (0, 0, 1, 1), (1, 1, 1, 0), (1, 2, 4, 2)]),
    ],
    "E7": [
        ("A6^(2)", frozenset({2}), [
            (0, 0, 0, 0, 0, 0, 1), (0, 0, 0, 0, 1, 0, 0), (0, 0, 0, 1, 1, 0, 0), (0, 0, 1, 1, 0, 0, 0),
            (0, 1, 0, 1, 0, 0, 0), (0, 1, 1, 1, 1, 1, 0), (0, 1, 1, 1, 1, 1, 1), (0, 1, 1, 2, 2, 1, 0),
            (1, 0, 1, 1, 1, 1, 0), (1, 1, 1, 1, 1, 0, 0), (1, 2, 2, 3, 2, 1, 0)]),
        ("(A3+A2)^(2)", frozenset({2}), [
            (0, 0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 1, 1), (0, 1, 0, 0, 0, 0, 0), (0, 1, 1, 2, 2, 1, 1),
            (1, 0, 1, 1, 1, 1, 1), (1, 1, 2, 3, 2, 1, 0)]),
    ],
}
# the E7 classes stay distinct in E8 through the E7 Levi (nodes 1-7)
EXTRAS["E8"] = [(lab, ps, [tuple(r) + (0,) for r in g]) for lab, ps, g in EXTRAS["E7"]]

FIXED_REPS = {
    "F4": {"F4(a3)": [(0, 1, 0, 0), (1, 1, 0, 0), (0, 1, 2, 0), (1, 1, 2, 2)]},
}

# Orbits whose minimal Levi has a D_n(a1) component take the Levi-local
# standard form (orbitdata.levi_standard_gamma) moved to the dominant chamber
# by Ad(n_w); signs come out of the Weyl representatives.  The generic rule
# picks other integral forms of these orbits whose bad-prime behaviour
# disagrees with the printed tables.
LEVI_STANDARD = re.compile(r"^D\d+\(a1\)$")


# Representatives chosen to agree with the printed tables.  For these E8
# orbits no representative from the rules above reproduces every printed
# bad-prime value: E8(b6) was found by sampling weight-2 root sets; for
# D6(a2) and D7(a2) no root-vector sum with unit coefficients agrees at both
# p = 2 and p = 3, so the representative is an integer combination xa + yb
# of two such sums, a matching the p = 2 (and p = 5) values and b the p = 3
# values, with x, y chosen by the Chinese remainder theorem and screened so
# that the element stays in the dense orbit at p = 7, 11, 13 and its
# exceptional-prime bound stays inside {2, 3, 5, 7}.  The table is used
# to select them, so these rows are not independent checks.
TABLE_CONFORMED = {
    "E8": {
        "E8(b6)": [(1, r) for r in [
            (0, 0, 0, 0, 0, 0, 0, 1), (0, 0, 0, 0, 1, 1, 1, 1), (0, 0, 0, 1, 1, 1, 1, 0),
            (0, 0, 1, 1, 0, 0, 0, 0), (0, 1, 0, 1, 1, 1, 0, 0), (0, 1, 1, 1, 1, 1, 1, 0),
            (1, 0, 1, 1, 1, 0, 0, 0), (1, 1, 1, 1, 0, 0, 0, 0)]],
        "D6(a2)": [
            (1, (0, 0, 1, 1, 1, 1, 1, 0)), (10, (0, 1, 0, 1, 1, 1, 1, 0)), (-1, (0, 1, 1, 1, 1, 1, 0, 0)),
            (9, (0, 1, 0, 1, 1, 1, 1, 1)), (1, (1, 1, 1, 1, 1, 1, 0, 0)), (1, (1, 1, 1, 2, 1, 0, 0, 0)),
            (1, (1, 0, 1, 1, 1, 1, 1, 1))],
        "D7(a2)": [
            (-1, (0, 0, 0, 0, 0, 1, 1, 1)), (-1, (1, 0, 1, 1, 0, 0, 0, 0)), (2, (0, 0, 0, 0, 1, 1, 1, 1)),
            (2, (0, 0, 0, 1, 1, 1, 1, 0)), (-2, (0, 0, 1, 1, 1, 1, 0, 0)), (-3, (0, 1, 0, 1, 1, 1, 0, 0)),
            (-3, (1, 0, 1, 1, 1, 0, 0, 0)), (-2, (1, 1, 1, 1, 0, 0, 0, 0)), (-3, (0, 0, 1, 1, 1, 1, 1, 0)),
            (-5, (0, 1, 1, 1, 1, 1, 0, 0)), (-5, (0, 1, 1, 2, 1, 0, 0, 0)), (-5, (1, 1, 1, 1, 1, 0, 0, 0))],
    },
}

# Rigid orbits of the simple components that occur in Levis of F4 and G2
# (classical partition criterion: type A has only 0; B2, B3, C3 have 0 and
# the minimal orbit, a long root vector).
RIGID_IN_COMPONENT = {"A": ["0"], "B": ["0", "A1"], "C": ["0", "A1"]}

SHEET_TYPES = ("G2", "F4")


def _vec(alg, gamma):
    e = np.zeros(alg.dim, dtype=np.int64)
    for g in gamma:
        e[alg.root_index(g)] += 1
    return e


def _bad_score(alg, gamma, primes):
    e = _vec(alg, gamma)
    A = ad_matrix(alg, e)
    return sum(alg.dim - exactla.rank_mod_p(A, q) for q in primes)


def choose_representatives(alg, rng, log=print):
    t = alg.root_system.type_label
    labels, by_diag = label_diagrams(alg, rng)
    bad = sorted(bad_primes(t))
    reps = {}
    for D, lab in labels.items():
        target = alg.dim - orbit_dimension(alg, D)
        cands = []
        for lo in by_diag[D]:
            if all("(" not in n for n in lo.comp_labels):
                g = tuple(sorted(regular_gamma(alg, lo)))
                if g not in cands:
                    cands.append(g)
        if not cands:
            for _ in range(6):
                g = search_gamma(alg, D, rng)
                if g is not None and tuple(sorted(g)) not in cands:
                    cands.append(tuple(sorted(g)))
        cands = [g for g in cands if centralizer_dim(alg, [(1, r) for r in g]) == target]
        if not cands:
            raise RuntimeError(f"{t} {lab}: no representative found")
        best = min(cands, key=lambda g: _bad_score(alg, g, bad))
        fixed = FIXED_REPS.get(t, {}).get(lab)
        if fixed is not None:
            fixed = tuple(sorted(tuple(r) for r in fixed))
            if centralizer_dim(alg, [(1, r) for r in fixed]) != target:
                raise RuntimeError(f"{t} {lab}: fixed representative is not in the dense orbit")
            if _bad_score(alg, fixed, bad) != _bad_score(alg, best, bad):
                log(f"  note: {lab} fixed representative differs from the generic rule")
            best = fixed
        conformed = TABLE_CONFORMED.get(t, {}).get(lab)
        if conformed is not None:
            terms = tuple((c, tuple(r)) for c, r in conformed)
            if centralizer_dim(alg, terms) != target:
                raise RuntimeError(f"{t} {lab}: table-conformed representative is not in the dense orbit")
            reps[D] = (lab, terms)
            continue
        lo = min(by_diag[D], key=lambda lo: (len(lo.subset), lo.subset))
        if len(lo.subset) < alg.rank and any(LEVI_STANDARD.match(n) for n in lo.comp_labels):
            terms = tuple(standard_representative(alg, lo))
            if centralizer_dim(alg, terms) != target:
                raise RuntimeError(f"{t} {lab}: Levi standard form is not in the dense orbit")
            reps[D] = (lab, terms)
            continue
        reps[D] = (lab, tuple((1, r) for r in best))
    return reps


def orbit_records(alg, reps):
    order = sorted(reps, key=lambda D: (-orbit_dimension(alg, D), reps[D][0]))
    out = []
    for D in order:
        lab, terms = reps[D]
        out.append(OrbitRecord(lab, terms, Coweight(D, "dynkin"), "all"))
    for lab, primes, gamma in EXTRAS.get(alg.root_system.type_label, []):
        out.append(OrbitRecord(lab, tuple((1, tuple(r)) for r in gamma), None, primes))
    return out


# ---------------------------------------------------------------- sheets


def levi_rigid_orbits(rs, levi):
    comps = component_type(rs, levi.subset)
    opts = []
    for name, _ in comps:
        kind = name[0]
        if kind not in RIGID_IN_COMPONENT:
            raise RuntimeError(f"no rigid-orbit list for component {name}")
        opts.append(RIGID_IN_COMPONENT[kind])
    labels = ["0"]
    for o in opts:
        labels = sorted({_join(a, b) for a in labels for b in o})
    return labels


def _join(a, b):
    parts = [x for x in (a, b) if x != "0"]
    return "+".join(parts) if parts else "0"


def identify(cat, x, p=P):
    alg = cat.algebra
    part = exactla.jordan_partition(ad_matrix(alg, x) % p, p)
    hits = [lab for lab, q in sheets.catalog_partitions(cat, p).items() if q == part]
    if len(hits) != 1:
        raise RuntimeError(f"identification at p={p} gave {hits}")
    return hits[0]


def rigid_orbits_of_g(cat, induced):
    return [r.label for r in cat.records if r.char0 and r.label not in induced]


def sheet_data(cat, rng):
    """(descriptor lines, gamma records) for every sheet of g."""
    rs, alg = cat.root_system, cat.algebra
    pairs = []
    for levi in sheets.levi_classes_heuristic(rs).representatives:
        for lo in levi_rigid_orbits(rs, levi):
            e0 = sheets.levi_element(cat, levi, lo)
            x = sheets.induce_element(alg, levi, e0, rng)
            ind = identify(cat, x)
            pairs.append((levi, lo, ind))
    induced = {ind for _, _, ind in pairs}
    full = LeviSubset(tuple(range(1, rs.rank + 1)), rs.rank)
    for lab in rigid_orbits_of_g(cat, induced):
        pairs.append((full, lab, lab))
    gammas = [GammaRecord(ind, sheet_gamma(cat, levi, lo, ind, rng), levi, lo) for levi, lo, ind in pairs]
    return pairs, gammas


def sheet_gamma(cat, levi, lo, ind, rng, tries=2000):
    rs, alg = cat.root_system, cat.algebra
    if len(levi) == rs.rank:
        return tuple(r for _, r in cat.get(lo).terms)
    g0 = list(sheets.levi_orbit_gamma(rs, levi, lo))
    target = sheets.levi_centralizer_dim(alg, levi, _vec(alg, g0))
    nil = sheets.nilradical_roots(rs, levi)
    for _ in range(tries):
        gamma = list(g0)
        cur = alg.dim
        for i in rng.permutation(len(nil)):
            trial = gamma + [nil[i]]
            if np.linalg.matrix_rank(np.array(trial, dtype=float)) < len(trial):
                continue
            d = centralizer_dim(alg, [(1, r) for r in trial])
            if d < cur:
                gamma, cur = trial, d
            if cur == target:
                break
        if cur == target and identify(cat, _vec(alg, gamma)) == ind:
            return tuple(gamma)
    raise RuntimeError(f"no Gamma for sheet {levi.subset} {lo} -> {ind}")


def write_type(t, log=print):
    rng = np.random.default_rng(20240607)
    alg = build_algebra(t)
    log(f"{t}: representatives")
    reps = choose_representatives(alg, rng, log)
    cat = catalog_from_records(t, orbit_records(alg, reps))
    lines_sheets = None
    if t in SHEET_TYPES:
        log(f"{t}: sheets")
        pairs, gammas = sheet_data(cat, rng)
        cat = catalog_from_records(t, cat.records, gammas)
        lines_sheets = [f"type {t}"]
        for levi, lo, ind in pairs:
            lines_sheets.append(
                f'sheet levi=({",".join(map(str, levi.subset))}) levi_orbit="{lo}" induced="{ind}"'
            )
    cat.comments[:] = [
        f"# Nilpotent orbits of {t}: Bala-Carter label, prime set, weighted Dynkin",
        "# diagram (Bourbaki numbering) and a representative sum of root vectors.",
        "# Generated by tools/curate.py.",
    ]
    out = data_dir()
    out.mkdir(parents=True, exist_ok=True)
    (out / f"{t.lower()}.cat").write_text(serialize_catalog(cat), encoding="utf-8")
    if lines_sheets:
        (out / f"{t.lower()}.sheets").write_text("\n".join(lines_sheets) + "\n", encoding="utf-8")
    log(f"{t}: {len(cat.records)} orbits, {len(cat.gamma_records)} gamma records")


if __name__ == "__main__":
    for t in sys.argv[1:] or ["G2", "F4", "E6", "E7", "E8"]:
        write_type(t)
