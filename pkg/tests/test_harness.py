import io
import re
import subprocess
import sys
from fractions import Fraction

import pytest

from oracles import cyclic_count, naive_factor, naive_order
from powermap.arith import SpfSieve
from powermap.groups import GroupSpec, dump_catalog
from powermap.harness.cli import bundled_catalog, main
from powermap.harness.scan import (
    SCAN_MAX,
    cyclic_counts_upto,
    prime_power_orders,
    render_decimal,
    scan_cyclic_average,
)
from powermap.harness.verify import (
    SUITES,
    CaseGroup,
    VerificationReport,
    quaternion_spec,
    render,
    verify_conjecture,
    verify_suite,
)

# -- scan ----------------------------------------------------------------------


def test_scan_examples():
    assert scan_cyclic_average(10, 2) == Fraction(9, 5)
    for a in (2, 3, 7):
        assert scan_cyclic_average(1, a) == 1


def test_scan_counts_against_naive():
    for a in (2, 3, 5, 6, 12):
        counts = cyclic_counts_upto(600, a).tolist()
        assert counts == [cyclic_count(n, a) for n in range(1, 601)]


def test_scan_chunking_is_invisible():
    ref = cyclic_counts_upto(5000, 3, chunk=1 << 16)
    for chunk in (1, 7, 1000):
        assert (cyclic_counts_upto(5000, 3, chunk=chunk) == ref).all()


def test_scan_average_times_x_is_integer():
    for x in (1, 17, 1000):
        avg = scan_cyclic_average(x, 2)
        assert (avg * x).denominator == 1


def test_scan_limits():
    with pytest.raises(ValueError):
        cyclic_counts_upto(0, 2)
    with pytest.raises(ValueError):
        cyclic_counts_upto(SCAN_MAX + 1, 2)


def test_prime_power_orders():
    table = prime_power_orders(6, SpfSieve(2000).spf)
    for m in range(2, 2001):
        f = naive_factor(m)
        if len(f) == 1 and 6 % f[0][0]:
            assert table[m] == naive_order(6, m)
        else:
            assert table[m] == 0


def test_csv_format_and_determinism():
    outs = []
    for jobs in (1, 2):
        buf = io.StringIO()
        scan_cyclic_average(3000, 2, csv=buf, jobs=jobs)
        outs.append(buf.getvalue().encode("ascii"))
    assert outs[0] == outs[1]
    lines = outs[0].decode().split("\n")
    assert lines[0] == "n,N,ratio" and lines[-1] == ""
    assert lines[1:4] == ["1,1,1.000000", "2,1,0.500000", "3,2,0.666667"]
    assert len(lines) == 3002
    assert b"\r" not in outs[0]


def test_render_decimal():
    assert render_decimal(Fraction(2, 3)) == "0.666667"
    assert render_decimal(Fraction(1, 8), 2) == "0.12"  # half-even
    assert render_decimal(Fraction(3, 8), 2) == "0.38"
    assert render_decimal(Fraction(7)) == "7.000000"


@pytest.mark.slow
def test_scan_parallel_matches_serial():
    assert (cyclic_counts_upto(300000, 2, jobs=2, chunk=50000) == cyclic_counts_upto(300000, 2)).all()


# -- verification suites -------------------------------------------------------

SMALL_RANGES = {
    "dihedral": {"n_max": 40, "a_max": 6},
    "sl2": {"qs": (3, 5), "a_max": 6},
    "product": {"pairs": 20, "m_max": 50},
    "nilpotent": {"max_order": 64, "a_max": 6},
    "majorization": {"max_order": 64},
    "extremal": {"k_max": 8},
    "period": {"n_max": 50, "a_max": 5},
    "tails": {"n_max": 50, "a_max": 5},
    "certificate": {"a_max": 6},
    "order_lower_bound": {"n_max": 100, "a_max": 5},
    "subgroup_sum": {"n_max": 12, "a_max": 5},
}


@pytest.mark.parametrize("name", SUITES)
def test_suites_pass(name):
    report = verify_suite(name, SMALL_RANGES[name])
    assert report.ok and report.cases > 0
    text = render([report])
    assert text.endswith("suites=1 failures=0\n")
    assert all(line.startswith(("PASS ", "# ")) for line in text.splitlines()[:-1])


def test_suite_content_is_deterministic():
    a = verify_suite("product", SMALL_RANGES["product"])
    b = verify_suite("product", SMALL_RANGES["product"], jobs=2)
    assert render([a]) == render([b])


def test_unknown_suite():
    with pytest.raises(ValueError, match="unknown suite"):
        verify_suite("galois")


def test_report_lists_counterexamples():
    r = VerificationReport("demo", {"x": 1}, [CaseGroup("g", 3, ["bad case"])])
    assert not r.ok and r.counterexamples == ["bad case"]
    text = render([r], timing=True)
    assert "FAIL demo g: 2/3" in text and "  counterexample: bad case" in text
    assert text.endswith("suites=1 failures=1\n")


def test_conjecture_examples():
    q8 = dump_catalog([("Q8", quaternion_spec())])
    r = verify_conjecture(q8.encode(), a_max=20)
    assert r.ok and r.cases == 19
    assert verify_conjecture(b"").cases == 0
    c6 = dump_catalog([("C6", GroupSpec.permutation(6, [(1, 2, 3, 4, 5, 0)]))])
    assert verify_conjecture(c6.encode(), a_max=20).ok


def test_conjecture_builtin_family_catalog():
    entries = [
        ("S3", GroupSpec.permutation(3, [(1, 0, 2), (1, 2, 0)])),
        ("D5", GroupSpec.permutation(5, [(1, 2, 3, 4, 0), (0, 4, 3, 2, 1)])),
        ("S4", GroupSpec.permutation(4, [(1, 2, 3, 0), (1, 0, 2, 3)])),
    ]
    assert verify_conjecture(dump_catalog(entries), a_max=20).ok


def test_conjecture_catalog_errors_carry_line_numbers():
    with pytest.raises(ValueError, match="line 2"):
        verify_conjecture(b"ok 2 1 1,0\nbad 2 1 0,0\n")


# -- command line --------------------------------------------------------------


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_count(capsys):
    assert run(capsys, "count", "--group", "cyclic:10", "--a", "2") == (0, "N = 2\n", "")
    for method in ("graph", "spectrum", "formula"):
        code, out, _ = run(capsys, "count", "--group", "sl2:3", "--a", "2", "--method", method)
        assert (code, out) == (0, "N = 5\n")
    code, out, _ = run(capsys, "count", "--group", "product:cyclic:3+heisenberg:3", "--a", "2")
    assert code == 0 and out == "N = 41\n"


def test_cli_count_formula_missing(capsys):
    code, _, err = run(capsys, "count", "--group", "heisenberg:3", "--method", "formula")
    assert code == 2 and "no closed form" in err


def test_cli_graph_dot(capsys):
    code, out, _ = run(capsys, "graph", "--group", "cyclic:10", "--a", "2", "--dot", "-")
    assert code == 0
    assert len(re.findall(r"^\s+\d+ -> \d+;$", out, flags=re.M)) == 10
    assert len(re.findall(r"^\s+\d+( \[[^]]*\])?;$", out, flags=re.M)) == 10
    assert "0 -> 0;" in out


def test_cli_graph_summary_and_dot_file(capsys, tmp_path):
    path = tmp_path / "g.dot"
    code, out, _ = run(capsys, "graph", "--group", "cyclic:10", "--dot", str(path))
    assert code == 0 and "components = 2" in out and "cycle_lengths = 1 4" in out
    assert path.read_text().count("->") == 10


def test_cli_period_and_spectrum(capsys):
    assert run(capsys, "period", "--group", "cyclic:10", "--a", "2")[1] == "17/5\n"
    assert run(capsys, "period", "--group", "cyclic:10", "--a", "2", "--brute")[1] == "17/5\n"
    code, out, _ = run(capsys, "spectrum", "--group", "sl2:3")
    assert code == 0 and out.splitlines() == ["order count", "1 1", "2 1", "3 8", "4 6", "6 8", "total = 24"]
    brute = run(capsys, "spectrum", "--group", "sl2:3", "--brute")[1]
    assert brute == out


def test_cli_scan(capsys, tmp_path):
    code, out, _ = run(capsys, "scan", "--max", "10", "--a", "2")
    assert (code, out) == (0, "average = 9/5\n")
    path = tmp_path / "scan.csv"
    run(capsys, "scan", "--max", "10", "--csv", str(path))
    assert path.read_bytes().startswith(b"n,N,ratio\n1,1,1.000000\n")
    code, out, err = run(capsys, "scan", "--max", "10", "--csv", "-")
    assert out.startswith("n,N,ratio\n") and err == "average = 9/5\n"


def test_cli_verify_and_conjecture(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--suite", "certificate")
    assert code == 0 and out.endswith("suites=1 failures=0\n")
    code, out, _ = run(capsys, "verify", "--suite", "dihedral", "--max", "20", "--a-max", "4")
    assert code == 0 and "PASS dihedral n=20: 3/3" in out
    cat = tmp_path / "q8.txt"
    cat.write_text(dump_catalog([("Q8", quaternion_spec())]))
    code, out, _ = run(capsys, "conjecture", "--catalog", str(cat))
    assert code == 0 and "PASS conjecture Q8: 19/19" in out


def test_cli_counterexample_exit_code(capsys, monkeypatch):
    import powermap.harness.cli as cli

    def failing(name, ranges, jobs=1):
        return VerificationReport(name, {}, [CaseGroup("x", 1, ["forced"])])

    monkeypatch.setattr(cli, "verify_suite", failing)
    code, out, _ = run(capsys, "verify", "--suite", "sl2")
    assert code == 1 and "counterexample: forced" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["count", "--group", "bogus:3"],
        ["count"],
        ["count", "--group", "sl2:4", "--a", "2"],
        ["conjecture", "--catalog", "/nonexistent/catalog.txt"],
        ["scan"],
        ["graph", "--group", "cyclic:99999"],
    ],
)
def test_cli_input_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("powermap: error:")


def test_cli_usage_errors(capsys):
    for argv in (["count", "--a", "0"], ["frobnicate"], ["verify", "--suite", "nope"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
        assert capsys.readouterr().err


def test_console_script_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "powermap.harness.cli", "count", "--group", "cyclic:10", "--a", "2"],
        capture_output=True, text=True,
    )
    assert out.returncode == 0 and out.stdout == "N = 2\n"


def test_bundled_catalog_is_shipped():
    with open(bundled_catalog(), "rb") as fh:
        head = fh.read(200)
    assert head.startswith(b"#")
