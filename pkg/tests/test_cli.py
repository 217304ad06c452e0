import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from renyibound import report
from renyibound.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", "--d", "3", "--lambda", "1", "--r2", "3", "--mu", "1,0")
    assert code == 0
    d = json.loads(out)
    assert d["B_d"] == pytest.approx(1.5 * math.log(2 * math.pi * math.e), abs=1e-12)
    assert d["loss"] == pytest.approx(2 * math.log(3) - 1.5 * math.log(5), abs=1e-12)
    assert d["bound_improved"] == pytest.approx(d["bound_baseline"] + d["loss"], abs=1e-12)


def test_bound_paper_exact(capsys):
    code, out, _ = run(capsys, "bound", "--d", "1", "--lambda", "2", "--r2", "1", "--paper-exact")
    d = json.loads(out)
    assert code == 0
    assert d["B_d"] == pytest.approx(1.5 * math.log(5) - math.log(3), abs=1e-12)
    assert d["B_d_paper_exact"] < 0.5 * math.log(2 * math.pi * math.e)


@pytest.mark.parametrize(
    "argv",
    [
        ["bound", "--d", "3", "--lambda", "0.5", "--r2", "3"],
        ["bound", "--d", "3", "--lambda", "1"],
        ["bound", "--d", "3", "--lambda", "1", "--r2", "-1"],
        ["verify", "--d", "3", "--state", "2,2"],
        ["verify", "--d", "3", "--state", "2,1", "--mu", "2,0"],
        ["entropy", "--d", "3"],
        ["loss", "--d", "3", "--mu", "0,1"],
        ["sweep", "--lambda", ""],
        ["sweep", "--system", "helium"],
        ["entropy", "--d", "3", "--system", "file"],
        ["entropy", "--d", "3", "--system", "file", "--file", "/nonexistent/table.txt"],
    ],
)
def test_invalid_input_exit_code(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "invalid input" in err


def test_entropy(capsys):
    code, out, _ = run(capsys, "entropy", "--system", "hydrogen", "--state", "1,0", "--d", "3", "--lambda", "2")
    d = json.loads(out)
    assert code == 0
    assert d["H"] == pytest.approx(math.log(8 * math.pi), abs=1e-10)
    assert d["H"] == pytest.approx(d["H_radial"] + d["H_angular"], abs=1e-13)
    assert d["mu"] == [0, 0]


def test_entropy_d1(capsys):
    code, out, _ = run(capsys, "entropy", "--system", "oscillator", "--state", "0,0", "--d", "1")
    assert code == 0
    # the radial part is the half-line; the full line adds ln 2
    assert json.loads(out)["H_radial"] + math.log(2) == pytest.approx(0.5 * math.log(math.pi * math.e), abs=1e-10)


def test_verify_json_is_report(capsys):
    code, out, _ = run(capsys, "verify", "--system", "oscillator", "--state", "0,0", "--d", "3", "--mu", "0,0")
    assert code == 0
    d = json.loads(out)
    assert tuple(d) == report.REPORT_KEYS
    assert abs(d["slack_improved"]) <= 1e-8 and d["holds"] is True
    assert report.to_json(report.from_json(out)) == out


def test_verify_csv_multi_lambda(capsys):
    code, out, _ = run(capsys, "verify", "--state", "2,1", "--d", "3", "--mu", "1,0", "--lambda", "0.8,1,2", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == list(report.REPORT_KEYS)
    assert [r[3] for r in rows[1:]] == ["0.8", "1", "2"]
    assert all(r[-1] == "true" for r in rows[1:])


def test_verify_paper_exact_csv(capsys):
    code, out, _ = run(capsys, "verify", "--state", "1,0", "--d", "3", "--lambda", "2", "--format", "csv", "--paper-exact")
    header = out.splitlines()[0].split(",")
    assert code == 0
    assert header[-2:] == list(report.PAPER_EXACT_KEYS)


def test_verify_tabulated_file(capsys, tmp_path):
    r = np.linspace(0, 40, 2001)
    path = tmp_path / "h1s.txt"
    np.savetxt(path, np.column_stack([r, 2 * np.exp(-r)]), header="r R")
    code, out, _ = run(capsys, "verify", "--system", "file", "--file", str(path), "--d", "3", "--mu", "0,0", "--tol", "1e-8")
    d = json.loads(out)
    assert code == 0
    assert d["H"] == pytest.approx(3 + math.log(math.pi), abs=1e-5)
    assert d["r2"] == pytest.approx(3.0, abs=1e-4)


def test_sweep(capsys):
    code, out, _ = run(capsys, "sweep", "--d", "3", "--lambda", "0.5,1", "--oscillator-max", "0", "--hydrogen-max", "2")
    recs = json.loads(out)
    assert code == 0
    errors = [r for r in recs if r.get("error")]
    ok = [r for r in recs if not r.get("error")]
    assert len(errors) == len(ok) == 5
    assert all(r["error"].startswith("bound undefined") for r in errors)
    assert all(r["holds"] for r in ok)


def test_sweep_mu_list_csv(capsys):
    code, out, _ = run(capsys, "sweep", "--d", "3,4", "--system", "hydrogen", "--hydrogen-max", "2",
                       "--mu", "1,0;1,1,1", "--lambda", "2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [(r["d"], r["mu"]) for r in rows] == [("3", "1,0"), ("4", "1,1,1")]


def test_sample_cov(capsys):
    code, out, _ = run(capsys, "sample-cov", "--state", "2,1", "--d", "3", "--mu", "1,0", "--samples", "200000", "--seed", "4")
    d = json.loads(out)
    assert code == 0
    assert d["within_tolerance"] is True
    assert d["expected_diagonal"] == pytest.approx([0.6, 0.2, 0.2], abs=1e-15)
    code2, out2, _ = run(capsys, "sample-cov", "--state", "2,1", "--d", "3", "--mu", "1,0", "--samples", "200000", "--seed", "4")
    assert out2 == out


def test_loss(capsys):
    code, out, _ = run(capsys, "loss", "--d", "5", "--mu", "0,0,0,0")
    d = json.loads(out)
    assert code == 0
    assert d["cos2_moments"][1] == 0.25 and d["cos2_moments"][-1] == 0.5
    assert d["loss"] == pytest.approx(0.0, abs=1e-15)
    assert d["kl_loss"] == pytest.approx(d["loss"], abs=1e-12)


def test_loss_csv(capsys):
    code, out, _ = run(capsys, "loss", "--d", "3", "--mu", "1,0", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert rows[0]["correlation_diagonal"] == "0.6,0.2,0.2"


def test_nonconvergence_exit_code(capsys):
    # rho^0.01 decays so slowly that refinement cannot settle
    code, _, err = run(capsys, "entropy", "--state", "3,0", "--d", "3", "--lambda", "0.01")
    assert code == 3
    assert "nonconvergence" in err


def test_violation_exit_code(capsys, monkeypatch):
    # a report that misses the bound must give exit status 1
    real = report.verify

    def broken(*args, **kwargs):
        rep = real(*args, **kwargs)
        d = rep.to_dict()
        d["bound_baseline"] -= 1.0
        d["bound_improved"] -= 1.0
        return report.BoundReport.from_dict(d)

    monkeypatch.setattr(report, "verify", broken)
    code, out, _ = run(capsys, "verify", "--state", "1,0", "--d", "3")
    assert code == 1
    assert json.loads(out)["holds"] is False


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "renyibound.cli", "bound", "--d", "3", "--lambda", "2", "--r2", "3", "--format", "csv"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    header, row = proc.stdout.splitlines()
    assert header.split(",") == ["d", "lambda", "r2", "B_d", "bound_baseline"]
