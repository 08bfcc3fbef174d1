from hypothesis import given
from hypothesis import strategies as st

from chevorbit.catalog import load_default_catalog
from chevorbit.classify import ClassificationReport, ClassifyOptions, PanyushevResult, classify_all
from chevorbit.exactla import Partition
from chevorbit.report import CSV_COLUMNS, SCHEMA_HEADER, read_csv, report_row, row_to_report, to_csv, to_text


def _strip(r: ClassificationReport) -> ClassificationReport:
    """Drop the fields the CSV does not carry (Panyushev graded dims)."""
    pan = None if r.panyushev is None else PanyushevResult(r.panyushev.holds, r.panyushev.depth_r)
    return ClassificationReport(r.orbit_label, r.prime, r.dim_g, r.dim_centralizer, r.dim_derived,
                                r.reachable, r.strongly_reachable, r.almost_reachable, r.jordan, pan,
                                r.prime_bound, r.type_label)


def test_csv_round_trip_on_g2():
    cat = load_default_catalog("G2")
    reps = classify_all(cat, [2, 3, 7], ClassifyOptions(char0=True))
    text = to_csv(reps)
    assert text.splitlines()[0] == SCHEMA_HEADER
    assert text.splitlines()[1] == ",".join(CSV_COLUMNS)
    back = [row_to_report(row) for row in read_csv(text)]
    assert back == [_strip(r) for r in reps]


def test_csv_is_deterministic():
    cat = load_default_catalog("G2")
    a = to_csv(classify_all(cat, [5, 2], ClassifyOptions(jobs=1)))
    b = to_csv(classify_all(cat, [2, 5], ClassifyOptions(jobs=2)))
    assert a == b


reports = st.builds(
    ClassificationReport,
    orbit_label=st.sampled_from(["A1", "A2+Ã1", "(A3+A1)'", "E8(a1)", "(A3+A2)^(2)"]),
    prime=st.sampled_from([2, 3, 5, 7]),
    dim_g=st.integers(3, 248),
    dim_centralizer=st.integers(0, 200),
    dim_derived=st.integers(0, 200),
    reachable=st.booleans(),
    strongly_reachable=st.booleans(),
    almost_reachable=st.booleans(),
    jordan=st.none() | st.lists(st.integers(1, 30), min_size=1, max_size=8).map(lambda x: Partition(tuple(x))),
    panyushev=st.none() | st.builds(PanyushevResult, st.booleans(), st.integers(1, 10)),
    prime_bound=st.none(),
    type_label=st.sampled_from(["G2", "E8"]),
)


@given(st.lists(reports, max_size=5))
def test_row_round_trip_property(rs):
    back = [row_to_report(row) for row in read_csv(to_csv(rs))]
    assert back == [_strip(r) for r in rs]


def test_text_table_has_one_line_per_report():
    cat = load_default_catalog("G2")
    reps = classify_all(cat, [7], ClassifyOptions(char0=False))
    lines = to_text(reps).splitlines()
    assert lines[0].split()[0] == "orbit"
    assert len(lines) == len(reps) + 1
    assert report_row(reps[0])["orbit"] in lines[1]
