import io
import subprocess
import sys
from pathlib import Path

import pytest

from chevorbit.cli import EXIT_CHECK, EXIT_INPUT, EXIT_OK, UsageError, main, parse_primes, render_table
from chevorbit.report import read_csv

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = ROOT / "golden"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_primes():
    assert parse_primes("7,2,3") == (2, 3, 7)
    for bad in ("2,2", "4", "x", "1"):
        with pytest.raises(UsageError):
            parse_primes(bad)


def test_classify_csv():
    code, out, _ = run("classify", "--type", "G2", "--primes", "2,7", "--format", "csv", "--char0")
    assert code == EXIT_OK
    rows = read_csv(out)
    assert {r["prime"] for r in rows} == {"0", "2", "7"}
    regular7 = next(r for r in rows if r["orbit"] == "G2" and r["prime"] == "7")
    assert regular7["c"] == "2" and regular7["dim_cent"] == "2"


def test_classify_text():
    code, out, _ = run("classify", "--type", "G2", "--primes", "5")
    assert code == EXIT_OK
    assert out.splitlines()[0].startswith("orbit")


@pytest.mark.parametrize("argv", [
    ("classify", "--type", "Q9"),
    ("classify", "--type", "G2", "--primes", "4"),
    ("classify", "--type", "G2", "--catalog", "/nonexistent.cat"),
    ("table", "--type", "G2", "--which", "t4", "--diff", "/nonexistent.csv"),
    ("gamma", "--type", "F4", "--primes", "3"),
    ("census", "--type", "E6"),
    ("frobnicate",),
    (),
])
def test_input_errors_exit_2(argv):
    code, _, err = run(*argv)
    assert code == EXIT_INPUT


def test_malformed_catalog_exit_2(tmp_path):
    bad = tmp_path / "bad.cat"
    bad.write_text('type G2\norbit "A1" primes=all dynkin=0,1\nterm 1 (7,7)\nend\n', encoding="utf-8")
    code, _, err = run("classify", "--type", "G2", "--catalog", str(bad))
    assert code == EXIT_INPUT
    assert "line 3" in err


def test_catalog_type_mismatch_exit_2():
    g2 = ROOT / "src" / "chevorbit" / "data" / "g2.cat"
    code, _, err = run("classify", "--type", "F4", "--catalog", str(g2))
    assert code == EXIT_INPUT


def test_table_diff_passes_on_matching_golden():
    code, out, err = run("table", "--type", "G2", "--which", "t1", "--diff", str(GOLDEN / "g2_t1.csv"))
    assert "0 mismatches" in err
    assert code == EXIT_OK
    assert out.splitlines()[0].startswith("orbit")


def test_table_diff_reports_mismatch(tmp_path):
    code, _, err = run("table", "--type", "G2", "--which", "t4", "--diff", str(GOLDEN / "g2_t4_printed.csv"))
    assert code == EXIT_CHECK
    assert "mismatch: G2 p=5: c expected 0 got 2" in err
    # one wrong cell in an otherwise matching golden file
    text = (GOLDEN / "g2_t4.csv").read_text(encoding="utf-8")
    assert run("table", "--type", "G2", "--which", "t4", "--diff", str(GOLDEN / "g2_t4.csv"))[0] == EXIT_OK
    edited = tmp_path / "edited.csv"
    assert "G2,A1,7,14,,,0," in text
    edited.write_text(text.replace("G2,A1,7,14,,,0,", "G2,A1,7,14,,,5,"), encoding="utf-8")
    code, _, err = run("table", "--type", "G2", "--which", "t4", "--diff", str(edited))
    assert code == EXIT_CHECK
    assert "26 golden rows, 1 mismatches" in err


def test_render_table_symbols():
    rows = [
        {"orbit": "X", "prime": "2", "c": "0", "reachable": "1", "strong": "1", "almost": "0"},
        {"orbit": "X", "prime": "3", "c": "1", "reachable": "1", "strong": "0", "almost": "0"},
        {"orbit": "Y", "prime": "2", "c": "1", "reachable": "0", "strong": "0", "almost": "1"},
        {"orbit": "Y", "prime": "3", "c": "2", "reachable": "0", "strong": "0", "almost": "0"},
    ]
    t1 = render_table(rows, "t1").splitlines()
    assert t1[1].split() == ["X", "S", "R"]
    assert t1[2].split() == ["Y", "A", "."]
    t4 = render_table(rows, "t4").splitlines()
    assert t4[2].split() == ["Y", "1", "2"]


def test_bound_g2():
    code, out, _ = run("bound", "--type", "G2")
    assert code == EXIT_OK
    assert "VIOLATION" not in out


def test_gamma_f4():
    code, out, _ = run("gamma", "--type", "F4")
    assert code == EXIT_OK
    assert "MISMATCH" not in out and "FAIL" not in out


def test_census_f4():
    code, out, _ = run("census", "--type", "F4")
    assert code == EXIT_OK
    assert out.startswith("F4: 20 sheets")
    assert "dim 37: B2 (rank 1)" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "chevorbit", "bound", "--type", "G2", "--format", "csv"],
                          capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0].startswith("G2,G2,")
