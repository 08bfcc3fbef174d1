"""Command-line interface.

    chevorbit classify --type F4 --primes 2,3,5 --format csv
    chevorbit table --type E7 --which t3 --diff golden/e7_t3.csv
    chevorbit bound --type F4
    chevorbit gamma --type F4 --primes 5,7,11,13
    chevorbit census --type F4

Exit codes: 0 success, 2 input or validation error, 3 failed check (diff
mismatch, prime bound violated, unidentified Gamma record).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import sheets
from .catalog import CatalogError, default_catalog_path, default_descriptor_path, load_catalog
from .classify import ClassifyOptions, classify_all, classify_record
from .report import read_csv, report_row, to_csv, to_text
from .rootsys import RootSystemError, build_root_system

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CHECK = 3

DEFAULT_PRIMES = (2, 3, 5, 7, 11)
GAMMA_PRIMES = (5, 7, 11, 13)
BOUND_LIMIT = frozenset({2, 3, 5, 7})

# columns compared by `table --diff`, per table
TABLE_FIELDS = {
    "t1": ("reachable", "strong", "almost"),
    "t2": ("reachable", "strong", "almost"),
    "t3": ("c",),
    "t4": ("c",),
}


class UsageError(Exception):
    """Bad command-line input; reported with exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    type_label: str
    primes: tuple[int, ...]
    catalog_path: Path
    descriptor_path: Path | None
    output_format: str = "text"
    parallelism: int = 1
    strict_validation: bool = False
    char0: bool = False
    progress: bool = False


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def parse_primes(text: str) -> tuple[int, ...]:
    try:
        ps = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--primes expects a comma-separated list of integers, got {text!r}")
    if len(set(ps)) != len(ps):
        raise UsageError(f"repeated prime in {text!r}")
    for p in ps:
        if not _is_prime(p):
            raise UsageError(f"{p} is not a prime")
    return tuple(sorted(ps))


def make_config(args, default_primes=DEFAULT_PRIMES) -> RunConfig:
    try:
        rs = build_root_system(args.type)
    except (RootSystemError, ValueError) as exc:
        raise UsageError(str(exc))
    t = rs.type_label
    primes = parse_primes(args.primes) if args.primes else tuple(default_primes)
    cat = Path(args.catalog) if args.catalog else default_catalog_path(t)
    if not cat.exists():
        raise UsageError(f"no catalog for {t} at {cat} (use --catalog)")
    desc = getattr(args, "descriptors", None)
    if desc:
        desc = Path(desc)
        if not desc.exists():
            raise UsageError(f"descriptor file {desc} not found")
    elif default_descriptor_path(t).exists():
        desc = default_descriptor_path(t)
    else:
        desc = None
    return RunConfig(
        type_label=t,
        primes=primes,
        catalog_path=cat,
        descriptor_path=desc,
        output_format=args.format,
        parallelism=max(1, args.jobs),
        strict_validation=args.strict,
        char0=getattr(args, "char0", False),
        progress=args.progress or t == "E8",
    )


def _load(cfg: RunConfig):
    cat = load_catalog(cfg.catalog_path, strict=cfg.strict_validation)
    if cat.type_label != cfg.type_label:
        raise UsageError(f"catalog {cfg.catalog_path} is for {cat.type_label}, not {cfg.type_label}")
    return cat


def _options(cfg: RunConfig, jordan=True, panyushev=True, char0=None) -> ClassifyOptions:
    return ClassifyOptions(jordan=jordan, panyushev=panyushev,
                           char0=cfg.char0 if char0 is None else char0,
                           jobs=cfg.parallelism, progress=cfg.progress)


def _report_errors(errors, err) -> None:
    for label, p, msg in errors:
        print(f"error: {label} p={p}: {msg}", file=err)


# ---------------------------------------------------------------- classify


def cmd_classify(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    cat = _load(cfg)
    errors: list = []
    reports = classify_all(cat, cfg.primes, _options(cfg), errors)
    out.write(to_csv(reports) if cfg.output_format == "csv" else to_text(reports))
    _report_errors(errors, err)
    return EXIT_CHECK if errors else EXIT_OK


# ---------------------------------------------------------------- table


def _cell(row: dict, which: str) -> str:
    if which in ("t3", "t4"):
        return row["c"]
    if row["strong"] == "1":
        return "S"
    if row["reachable"] == "1":
        return "R"
    if row["almost"] == "1":
        return "A"
    return "."


def render_table(rows: list[dict], which: str) -> str:
    """Orbits down, primes across; c for t3/t4, and for t1/t2 one of
    S (strongly reachable), R (reachable), A (almost reachable), '.'."""
    primes = sorted({int(r["prime"]) for r in rows})
    grid: dict[str, dict[int, str]] = {}
    for r in rows:
        grid.setdefault(r["orbit"], {})[int(r["prime"])] = _cell(r, which)
    w = max([5] + [len(o) for o in grid])
    head = "orbit".ljust(w) + "".join(f"{'p=' + str(p):>6}" for p in primes)
    lines = [head]
    for orbit, cells in grid.items():
        lines.append(orbit.ljust(w) + "".join(f"{cells.get(p, ''):>6}" for p in primes))
    return "\n".join(lines) + "\n"


def diff_rows(golden: list[dict], computed: dict, fields) -> list[str]:
    """Mismatch descriptions for every golden cell that is filled in."""
    out = []
    for g in golden:
        key = (g["orbit"], int(g["prime"]))
        got = computed.get(key)
        if got is None:
            out.append(f"{key[0]} p={key[1]}: not computed (orbit missing from catalog)")
            continue
        for f in fields:
            if g.get(f) and g[f] != got[f]:
                out.append(f"{key[0]} p={key[1]}: {f} expected {g[f]} got {got[f]}")
    return out


def cmd_table(cfg: RunConfig, which: str, diff: Path | None = None, out=sys.stdout,
              err=sys.stderr) -> int:
    cat = _load(cfg)
    golden = None
    primes = cfg.primes
    if diff is not None:
        if not diff.exists():
            raise UsageError(f"golden file {diff} not found")
        golden = [g for g in read_csv(diff.read_text(encoding="utf-8")) if g["type"] == cfg.type_label]
        primes = tuple(sorted({int(g["prime"]) for g in golden}))
    errors: list = []
    opts = _options(cfg, jordan=False, panyushev=False, char0=False)
    reports = classify_all(cat, primes, opts, errors)
    rows = [report_row(r) for r in reports]
    if cfg.output_format == "csv":
        out.write(to_csv(reports))
    else:
        out.write(render_table(rows, which))
    _report_errors(errors, err)
    status = EXIT_CHECK if errors else EXIT_OK
    if golden is not None:
        computed = {(r["orbit"], int(r["prime"])): r for r in rows}
        bad = diff_rows(golden, computed, TABLE_FIELDS[which])
        for line in bad:
            print(f"mismatch: {line}", file=err)
        print(f"{len(golden)} golden rows, {len(bad)} mismatches", file=err)
        if bad:
            status = EXIT_CHECK
    return status


# ---------------------------------------------------------------- bound


def cmd_bound(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    """Primes at which an orbit's answers may differ from characteristic 0."""
    cat = _load(cfg)
    exceptional = cfg.type_label[0] in "EFG"
    status = EXIT_OK
    for rec in cat.records:
        if not rec.char0:
            continue
        if cfg.progress:
            print(f"[{cfg.type_label}] bound {rec.label}", file=err)
        r = classify_record(cat, rec.label, 0, jordan=False, panyushev_at_good=False)
        bound = sorted(r.prime_bound)
        flag = ""
        if exceptional and not set(bound) <= BOUND_LIMIT:
            flag = "  VIOLATION"
            status = EXIT_CHECK
        if cfg.output_format == "csv":
            out.write(f"{cfg.type_label},{rec.label},{' '.join(map(str, bound))}\n")
        else:
            out.write(f"{rec.label:<16} {{{', '.join(map(str, bound))}}}{flag}\n")
    return status


# ---------------------------------------------------------------- gamma


def cmd_gamma(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    cat = _load(cfg)
    if not cat.gamma_records:
        print(f"{cfg.type_label}: no Gamma records", file=err)
        return EXIT_OK
    alg = cat.algebra
    status = EXIT_OK
    for p in cfg.primes:
        if not cat.good_prime(p):
            raise UsageError(f"Gamma identification needs a good prime; {p} is bad for {cfg.type_label}")
        idents = [sheets.identify_gamma_orbit(alg, cat, g, p) for g in cat.gamma_records]
        if cfg.descriptor_path is not None:
            idents = sheets.resolve_ambiguities(idents, cat)
        for gi in idents:
            g = gi.record
            levi = ",".join(map(str, g.levi_subset.subset))
            labels = "|".join(gi.labels) if gi.labels else "-"
            if not gi.labels or not gi.dimension_identity:
                verdict = "FAIL"
            elif gi.ambiguous and not gi.resolved:
                verdict = "AMBIGUOUS"
            elif gi.matches_declared:
                verdict = "ok"
            else:
                verdict = "MISMATCH"
            if verdict in ("FAIL", "MISMATCH"):
                status = EXIT_CHECK
            note = f" resolved: {gi.evidence}" if gi.resolved else ""
            if cfg.output_format == "csv":
                out.write(f"{cfg.type_label},{p},({levi}),{g.levi_orbit_label},{g.orbit_label},"
                          f"{labels},{int(gi.ambiguous)},{int(gi.dimension_identity)},{verdict}\n")
            else:
                out.write(f"p={p:<3} levi=({levi}) {g.levi_orbit_label:<6} -> {labels:<16} "
                          f"declared {g.orbit_label:<10} dim {gi.orbit_dim} "
                          f"{'=' if gi.dimension_identity else '!='} {gi.levi_induced_dim}  "
                          f"{verdict}{note}\n")
    return status


# ---------------------------------------------------------------- census


def cmd_census(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    """Sheets by dimension and rank, and the rigidity verdict per orbit."""
    cat = _load(cfg)
    if cfg.descriptor_path is None:
        raise UsageError(f"no sheet descriptors for {cfg.type_label} (use --descriptors)")
    descs = sheets.load_descriptors(cfg.descriptor_path, cat)
    data = sheets.SheetData(cat, descs, complete=True)
    by_dim: dict[int, list] = {}
    for d in descs:
        by_dim.setdefault(d.sheet_dim, []).append(d)
    out.write(f"{cfg.type_label}: {len(descs)} sheets\n")
    for dim in sorted(by_dim):
        items = ", ".join(f"{d.induced_orbit_label} (rank {d.sheet_rank})" for d in by_dim[dim])
        out.write(f"  dim {dim}: {items}\n")
    p = max(cfg.primes)
    if not cat.good_prime(p):
        raise UsageError(f"census needs a good prime for the centralizer checks; {p} is bad")
    out.write(f"rigidity (centralizers at p={p}):\n")
    for rec in cat.records:
        if not rec.char0:
            continue
        r = classify_record(cat, rec.label, p, jordan=False, panyushev_at_good=False)
        v = sheets.rigidity_verdict(r, data)
        out.write(f"  {rec.label:<12} {v.verdict:<12} {v.evidence}\n")
    return EXIT_OK


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", required=True, help="root system type, e.g. F4")
    common.add_argument("--primes", help="comma-separated primes")
    common.add_argument("--catalog", help="orbit catalog file (default: shipped data)")
    common.add_argument("--descriptors", help="sheet descriptor file")
    common.add_argument("--format", choices=("text", "csv"), default="text")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--strict", action="store_true", help="strict catalog validation")
    common.add_argument("--progress", action="store_true", help="per-orbit progress on stderr")

    ap = argparse.ArgumentParser(prog="chevorbit", description="Nilpotent orbit centralizers "
                                 "in Chevalley Lie algebras over Z and F_p.")
    sub = ap.add_subparsers(dest="command", required=True)
    c = sub.add_parser("classify", parents=[common], help="per-orbit report at each prime")
    c.add_argument("--char0", action="store_true", help="add characteristic-zero rows")
    t = sub.add_parser("table", parents=[common], help="reachability or c tables, with --diff")
    t.add_argument("--which", choices=sorted(TABLE_FIELDS), required=True)
    t.add_argument("--diff", help="golden CSV to compare against")
    sub.add_parser("bound", parents=[common], help="exceptional-prime bound per orbit")
    sub.add_parser("gamma", parents=[common], help="identify the orbits of e_Gamma")
    sub.add_parser("census", parents=[common], help="sheet census and rigidity verdicts")
    return ap


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.command == "gamma":
            cfg = make_config(args, GAMMA_PRIMES)
            return cmd_gamma(cfg, out, err)
        if args.command == "census":
            cfg = make_config(args, (sheets.PROBE_PRIME,))
            return cmd_census(cfg, out, err)
        cfg = make_config(args)
        if args.command == "classify":
            return cmd_classify(cfg, out, err)
        if args.command == "table":
            return cmd_table(cfg, args.which, Path(args.diff) if args.diff else None, out, err)
        if args.command == "bound":
            return cmd_bound(cfg, out, err)
    except (UsageError, CatalogError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    return EXIT_INPUT


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
