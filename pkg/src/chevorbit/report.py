"""CSV and text rendering of classification reports."""

from __future__ import annotations

import csv
import io
from typing import Iterable

from .classify import ClassificationReport, PanyushevResult
from .exactla import Partition

SCHEMA_VERSION = 1
SCHEMA_HEADER = f"# chevorbit-csv schema={SCHEMA_VERSION}"
CSV_COLUMNS = [
    "type", "orbit", "prime", "dim_g", "dim_cent", "dim_derived", "c",
    "reachable", "strong", "almost", "panyushev", "depth_r", "jordan", "prime_bound",
]


def _b(x: bool) -> str:
    return "1" if x else "0"


def report_row(r: ClassificationReport) -> dict:
    return {
        "type": r.type_label,
        "orbit": r.orbit_label,
        "prime": str(r.prime),
        "dim_g": str(r.dim_g),
        "dim_cent": str(r.dim_centralizer),
        "dim_derived": str(r.dim_derived),
        "c": str(r.c),
        "reachable": _b(r.reachable),
        "strong": _b(r.strongly_reachable),
        "almost": _b(r.almost_reachable),
        "panyushev": "" if r.panyushev is None else _b(r.panyushev.holds),
        "depth_r": "" if r.panyushev is None else str(r.panyushev.depth_r),
        "jordan": "" if r.jordan is None else str(r.jordan),
        "prime_bound": "" if r.prime_bound is None else " ".join(str(p) for p in sorted(r.prime_bound)),
    }


def to_csv(reports: Iterable[ClassificationReport]) -> str:
    buf = io.StringIO()
    buf.write(SCHEMA_HEADER + "\n")
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(report_row(r))
    return buf.getvalue()


def read_csv(text: str) -> list[dict]:
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(lines))


def row_to_report(row: dict) -> ClassificationReport:
    """Inverse of :func:`report_row` (for complete rows)."""
    pan = None
    if row.get("panyushev"):
        pan = PanyushevResult(row["panyushev"] == "1", int(row["depth_r"]))
    bound = None
    if row.get("prime_bound") is not None and row.get("prime") == "0":
        bound = frozenset(int(x) for x in row["prime_bound"].split())
    return ClassificationReport(
        orbit_label=row["orbit"],
        prime=int(row["prime"]),
        dim_g=int(row["dim_g"]),
        dim_centralizer=int(row["dim_cent"]),
        dim_derived=int(row["dim_derived"]),
        reachable=row["reachable"] == "1",
        strongly_reachable=row["strong"] == "1",
        almost_reachable=row["almost"] == "1",
        jordan=Partition.parse(row["jordan"]) if row.get("jordan") else None,
        panyushev=pan,
        prime_bound=bound,
        type_label=row["type"],
    )


def to_text(reports: Iterable[ClassificationReport]) -> str:
    rows = [report_row(r) for r in reports]
    cols = ["orbit", "prime", "dim_cent", "dim_derived", "c", "reachable", "strong", "almost",
            "panyushev", "depth_r", "jordan", "prime_bound"]
    widths = {c: max([len(c)] + [len(r[c]) for r in rows]) for c in cols}
    out = ["  ".join(c.ljust(widths[c]) for c in cols)]
    for r in rows:
        out.append("  ".join(r[c].ljust(widths[c]) for c in cols).rstrip())
    return "\n".join(out) + "\n"
