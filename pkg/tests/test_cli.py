import csv
import io

import pytest

from quadcert import cli


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


SIMPSON = ("--alpha", "0.5", "--lambda", "0.3333333333")


def test_bound_power_mean():
    code, out, _ = run("bound", "--method", "power-mean", *SIMPSON, "--s", "1", "--q", "1",
                       "--fn", "square", "--a", "0", "--b", "1")
    assert code == 0
    assert "bound       0.1388888889" in out
    assert "certified   true" in out


def test_bound_best_csv():
    code, out, _ = run("bound", "--method", "best", *SIMPSON, "--s", "1", "--q", "2",
                       "--fn", "square", "--a", "0", "--b", "1", "--format", "csv")
    assert code == 0
    rows = dict(csv.reader(io.StringIO(out)))
    # lambda = 0.3333333333 is within 1e-10 of Simpson, so the bound moves by ~1e-11
    assert float(rows["bound"]) == pytest.approx(0.19068713427256145, abs=1e-9)


def test_coeffs():
    code, out, _ = run("coeffs", *SIMPSON, "--s", "1", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["name", "value"]
    values = {k: float(v) for k, v in rows[1:]}
    assert values["c1"] == pytest.approx(29 / 1296, abs=1e-10)
    assert values["gamma2"] == pytest.approx(5 / 72, abs=1e-10)


def test_verify_table():
    code, out, _ = run("verify", "--trials", "100", "--seed", "7")
    assert code == 0
    assert "violations  0" in out


def test_verify_csv_round_trip(tmp_path):
    path = tmp_path / "v.csv"
    code, out, _ = run("verify", "--trials", "30", "--seed", "7", "--format", "csv", "--csv", str(path))
    assert code == 0
    assert path.read_text() == out
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == list(cli.VERIFY_HEADER)
    from quadcert import harness

    rep = harness.fuzz_verify(harness.FuzzConfig(trials=30, seed=7))
    for row, rec in zip(rows, rep.rows):
        assert float(row["lhs"]) == rec.lhs
        assert float(row["rhs"]) == rec.rhs
        assert float(row["alpha"]) == rec.alpha
        assert row["violation"] == "false"


def test_csv_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.CSV_DIR_ENV, str(tmp_path))
    code, _, _ = run("coeffs", "--alpha", "0.2", "--lambda", "0.4", "--csv", "c.csv")
    assert code == 0
    assert (tmp_path / "c.csv").read_text().startswith("name,value\n")


def test_reduce():
    code, out, _ = run("reduce")
    assert code == 0
    assert "failed 0 of" in out


def test_compare_csv_header():
    code, out, _ = run("compare", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == ",".join(cli.COMPARE_HEADER)


def test_means_single_and_sweep():
    code, out, _ = run("means", "--a", "1", "--b", "2", *SIMPSON, "--s", "0.4", "--q", "2")
    assert code == 0 and "holder_holds      true" in out
    code, out, _ = run("means", "--sweep")
    assert code == 0 and "2100 of 2100 hold" in out


def test_identity():
    code, out, _ = run("identity", "--fn", "exp", "--alpha", "0.3", "--lambda", "0.7", "--a", "0.5", "--b", "2")
    assert code == 0
    code, out, _ = run("identity", "--configs", "5")
    assert code == 0 and "above 1e-08: 0" in out


@pytest.mark.parametrize(
    "argv",
    [
        ("bogus",),
        ("bound", "--unknown-flag"),
        ("coeffs", "--alpha", "1/2", "--lambda", "0"),
        ("coeffs", "--alpha", "2", "--lambda", "0"),
        ("coeffs", "--alpha", "nan", "--lambda", "0"),
        ("bound", "--method", "holder-convex", *SIMPSON, "--s", "1", "--q", "1",
         "--fn", "square", "--a", "0", "--b", "1"),
        ("bound", "--method", "power-mean", *SIMPSON, "--s", "1", "--q", "1",
         "--fn", "nope", "--a", "0", "--b", "1"),
        ("verify", "--trials", "10", "--fn", "sqrt-deriv", "--method", "power-mean"),
        ("means", "--a", "2", "--b", "1"),
        (),
    ],
)
def test_usage_and_domain_errors_exit_1(argv):
    code, out, err = run(*argv)
    assert code == 1
    assert err


def test_violation_exit_code(monkeypatch):
    from quadcert import harness
    from quadcert.bounds import Bound, Method

    monkeypatch.setattr(harness, "bound_for", lambda *a, **k: Bound.build(Method.POWER_MEAN, None, [("term:x", 0.0)]))
    code, out, _ = run("verify", "--trials", "5", "--fn", "square")
    assert code == 2
    assert "VIOLATION" in out


def test_help_exits_zero(capsys):
    assert cli.main(["--help"]) == 0
