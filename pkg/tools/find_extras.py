"""Search n(F_p) for nilpotent orbits missing from a catalog at a bad prime.

Every nilpotent orbit meets n(F_p) (Lang's theorem plus conjugacy of
rational Borels), and over F_p the elements of n are the root-vector sums
with coefficients in F_p.  We sample such sums (coefficient 1) and bucket
them by an invariant key of the centralizer; keys not produced by any
catalog representative point at extra orbits.

    python3 tools/find_extras.py F4 2 --samples 20000
    python3 tools/find_extras.py E8 2 --levi 2,3,4,5,6,7,8

The key: Jordan partition of ad e, lower central and derived series
dimensions of g_e, and dim z(g_e).
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from chevorbit import exactla  # noqa: E402
from chevorbit.catalog import load_catalog, default_catalog_path  # noqa: E402
from chevorbit.chevalley import ad_matrix, pairwise_brackets  # noqa: E402
from chevorbit.classify import _terms_vector, analyze_element, centralizer_matrix  # noqa: E402


def _span(alg, rows, p):
    S = exactla.SpanMod(alg.dim, p)
    if len(rows):
        S.add(rows[np.any(rows, axis=1)])
    return S.rows if S.dim else np.zeros((0, alg.dim), dtype=np.int64)


def _brackets(alg, X, Y, p):
    if len(X) == 0 or len(Y) == 0:
        return np.zeros((0, alg.dim), dtype=np.int64)
    return pairwise_brackets(alg, X, Y, p).reshape(-1, alg.dim)


def quick_key(alg, e, p):
    r = analyze_element(alg, e, p)
    return (str(r.jordan), r.dim_centralizer, r.c, r.reachable)


def invariant_key(alg, e, p):
    J = exactla.jordan_partition(ad_matrix(alg, e) % p, p)
    B = centralizer_matrix(alg, e % p, p)
    lower = [len(B)]
    C = B
    while True:
        C = _span(alg, _brackets(alg, B, C, p), p)
        lower.append(len(C))
        if lower[-1] in (0, lower[-2]):
            break
    derived = [len(B)]
    C = B
    while True:
        C = _span(alg, _brackets(alg, C, C, p), p)
        derived.append(len(C))
        if derived[-1] in (0, derived[-2]):
            break
    k = len(B)
    centre = k - (exactla.rank_mod_p(pairwise_brackets(alg, B, B, p).reshape(k, -1), p) if k else 0)
    return (str(J), tuple(lower), tuple(derived), centre)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("type")
    ap.add_argument("prime", type=int)
    ap.add_argument("--samples", type=int, default=5000)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--catalog")
    ap.add_argument("--quick", action="store_true",
                    help="Jordan partition, dim g_e, c and reachability only (for E8)")
    ap.add_argument("--levi", help="restrict to roots of this Levi, e.g. 2,3,4,5,6,7,8")
    args = ap.parse_args(argv)
    cat = load_catalog(args.catalog or default_catalog_path(args.type))
    alg = cat.algebra
    p = args.prime
    rng = np.random.default_rng(args.seed)
    key_of = quick_key if args.quick else invariant_key
    known = {}
    for rec in cat.records_at(p):
        known.setdefault(key_of(alg, _terms_vector(cat, rec), p), []).append(rec.label)
    for key, labs in known.items():
        if len(labs) > 1:
            print("shared key:", labs)
    pos = alg.root_system.positive_roots
    if args.levi:
        nodes = {int(i) - 1 for i in args.levi.split(",")}
        pos = [r for r in pos if all(c == 0 or j in nodes for j, c in enumerate(r))]
    new = {}
    t0 = time.time()
    for it in range(args.samples):
        if it % 2:
            mask = rng.random(len(pos)) < rng.uniform(0.1, 0.6)
            gamma = tuple(pos[i] for i in np.nonzero(mask)[0])
        else:
            k = int(rng.integers(1, alg.rank + 6))
            gamma = tuple(sorted(pos[i] for i in rng.choice(len(pos), k, replace=False)))
        e = np.zeros(alg.dim, dtype=np.int64)
        for g in gamma:
            e[alg.root_index(g)] = 1
        key = key_of(alg, e, p)
        if key in known:
            continue
        if key not in new or len(gamma) < len(new[key]):
            if key not in new:
                print(f"sample {it}: new key {key[1:]}", file=sys.stderr, flush=True)
            new[key] = gamma
    print(f"{args.samples} samples in {time.time() - t0:.0f}s", file=sys.stderr)
    for key, gamma in new.items():
        e = np.zeros(alg.dim, dtype=np.int64)
        for g in gamma:
            e[alg.root_index(g)] = 1
        r = analyze_element(alg, e, p, with_jordan=False)
        print(f"dim_cent={r.dim_centralizer} c={r.c} reachable={int(r.reachable)} "
              f"series={key[1:]} gamma={list(gamma)}")


if __name__ == "__main__":
    main()
