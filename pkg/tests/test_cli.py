import csv
import json
import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from circlesum.cli import main

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN_ATOL = 1e-10


def assert_matches_golden(got, want, path="$"):
    if isinstance(want, dict):
        assert isinstance(got, dict) and set(got) == set(want), path
        for k in want:
            assert_matches_golden(got[k], want[k], f"{path}.{k}")
    elif isinstance(want, list):
        assert isinstance(got, list) and len(got) == len(want), path
        for i, (g, w) in enumerate(zip(got, want)):
            assert_matches_golden(g, w, f"{path}[{i}]")
    elif isinstance(want, float) and not isinstance(want, bool):
        assert got == pytest.approx(want, rel=1e-9, abs=GOLDEN_ATOL), path
    else:
        assert got == want, path


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(argv, capsys):
    code, out, err = run(argv, capsys)
    return code, (json.loads(out) if out.strip() else None), err


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return p


# -- golden round trips ------------------------------------------------------

def test_represent_golden(capsys):
    code, doc, _ = run_json(["represent", "--in", FIXTURES / "represent_job.json"], capsys)
    assert code == 0
    assert_matches_golden(doc, json.loads((FIXTURES / "represent_out.json").read_text()))


def test_harmonics_golden(capsys):
    code, doc, _ = run_json(["harmonics", "--signal", FIXTURES / "signal.txt", "--nu", "2",
                             "--grid", "16"], capsys)
    assert code == 0
    assert_matches_golden(doc, json.loads((FIXTURES / "harmonics_out.json").read_text()))


def test_verify_golden(capsys):
    code, doc, _ = run_json(["verify", "--in", FIXTURES / "represent_out.json"], capsys)
    assert code == 0
    want = json.loads((FIXTURES / "verify_represent.json").read_text())
    assert doc["ok"] is want["ok"] is True
    assert doc["checks"][0]["max_discrepancy"] <= want["checks"][0]["tol"]


def test_round_trip_through_files(tmp_path, capsys):
    out = tmp_path / "res.json"
    assert main(["represent", "--in", str(FIXTURES / "represent_job.json"),
                 "--out", str(out)]) == 0
    text = out.read_text()
    doc = json.loads(text)
    assert json.loads(json.dumps(doc, indent=1)) == doc
    lam = np.array(doc["lambdas"])
    np.testing.assert_array_equal(lam, json.loads(text)["lambdas"])
    code, report, _ = run_json(["verify", "--in", out], capsys)
    assert code == 0 and report["ok"]


def test_tampered_certificate_fails(tmp_path, capsys):
    doc = json.loads((FIXTURES / "represent_out.json").read_text())
    re_, im_ = doc["lambdas"][3]
    t = math.atan2(im_, re_) + 1e-3
    doc["lambdas"][3] = [math.cos(t), math.sin(t)]
    code, report, _ = run_json(["verify", "--in", write(tmp_path, "bad.json", doc)], capsys)
    assert code == 1
    check = report["checks"][0]
    assert not check["ok"]
    assert check["first_violation_j"] == 0
    assert 0 in check["offending_j"]


def test_tampered_modulus_fails(tmp_path, capsys):
    doc = json.loads((FIXTURES / "represent_out.json").read_text())
    doc["lambdas"][0] = [x * 1.001 for x in doc["lambdas"][0]]
    code, report, _ = run_json(["verify", "--in", write(tmp_path, "bad.json", doc)], capsys)
    assert code == 1
    assert any("off the unit circle" in p for p in report["checks"][0]["problems"])


# -- represent ------------------------------------------------------------------

def test_represent_zero_target(tmp_path, capsys):
    code, doc, _ = run_json(["represent", "--in",
                             write(tmp_path, "j.json", {"a": [[0, 0]], "n": 1})], capsys)
    assert code == 0
    angles = sorted(np.mod([math.atan2(y, x) for x, y in doc["lambdas"]], 2 * math.pi))
    np.testing.assert_allclose(angles, np.mod(-np.pi * np.array([5, 3, 1]) / 3, 2 * np.pi),
                               atol=1e-12)


def test_represent_second_power(tmp_path, capsys):
    job = write(tmp_path, "j.json", {"a": [[0, 0], [1, 0]], "n": 2})
    code, doc, _ = run_json(["represent", "--in", job], capsys)
    assert code == 0 and len(doc["lambdas"]) == 5 and doc["residual_head"] <= 1e-9


def test_represent_tail_bounds_certified(tmp_path, capsys):
    a = [[(j + 2.0) ** -2, 0] for j in range(10)]
    code, doc, _ = run_json(["represent", "--in",
                             write(tmp_path, "j.json", {"a": a, "n": 10})], capsys)
    assert code == 0
    assert doc["tail_bounds_certified"] and doc["tail_bound_form"] == "thm12"
    assert len(doc["tail_bounds"]) == 21
    assert all(row["satisfied"] for row in doc["tail_bounds"])


def test_represent_precondition_exit(tmp_path, capsys):
    code, _, err = run(["represent", "--in",
                        write(tmp_path, "j.json", {"a": [2.5], "n": 1})], capsys)
    assert code == 2
    assert "n0 = 6" in err


def test_represent_schema_errors(tmp_path, capsys):
    assert run(["represent", "--in", write(tmp_path, "a.json", {"n": 1})], capsys)[0] == 64
    assert run(["represent", "--in", write(tmp_path, "b.json", {"a": [[1, 2, 3]], "n": 1})],
               capsys)[0] == 64
    assert run(["represent", "--in", write(tmp_path, "c.json", "{not json")], capsys)[0] == 64
    assert run(["represent", "--in", tmp_path / "missing.json"], capsys)[0] == 64
    assert run(["represent", "--in", write(tmp_path, "d.json", {"a": [0], "n": "2"})],
               capsys)[0] == 64


def test_max_n_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("CIRCLESUM_MAX_N", "3")
    job = write(tmp_path, "j.json", {"a": [0], "n": 4})
    assert run(["represent", "--in", job], capsys)[0] == 2


# -- harmonics / fourier ------------------------------------------------------------

def test_harmonics_values_and_csv(tmp_path, capsys):
    sig = write(tmp_path, "s.txt", "n=2\n2 3 4\n")
    out_csv = tmp_path / "curve.csv"
    code, doc, _ = run_json(["harmonics", "--signal", sig, "--nu", "2", "--grid", "720",
                             "--csv", out_csv], capsys)
    assert code == 0
    cert = doc["certificates"][0]
    assert cert["a_nu"] == pytest.approx(3, abs=1e-8)
    assert cert["b_nu"] == pytest.approx(4, abs=1e-8)
    assert cert["max_extraction_error"] <= cert["extract_tol"]
    assert len(cert["phases"]) == 5
    with open(out_csv) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["t", "T", "tau_nu", "Theta"]
    assert len(rows) == 721
    vals = np.array(rows[1:], dtype=float)
    np.testing.assert_allclose(vals[:, 3], vals[:, 2], atol=1e-8)


def test_harmonics_zero_signal(tmp_path, capsys):
    sig = write(tmp_path, "s.txt", "n=3\n")
    code, doc, _ = run_json(["harmonics", "--signal", sig, "--nu", "all", "--grid", "32"],
                            capsys)
    assert code == 0
    for cert in doc["certificates"]:
        assert cert["a_nu"] == 0 and cert["b_nu"] == 0
        assert not any(cert["samples"]["theta"])


def test_harmonics_usage_and_precondition(tmp_path, capsys):
    sig = write(tmp_path, "s.txt", "n=2\n1 1 0\n")
    assert run(["harmonics", "--signal", sig, "--nu", "3"], capsys)[0] == 64
    assert run(["harmonics", "--signal", sig, "--nu", "x"], capsys)[0] == 64
    small = write(tmp_path, "t.txt", "n=1\n1 1 0\n")
    code, _, err = run(["harmonics", "--signal", small, "--nu", "1"], capsys)
    assert code == 2 and "n >= 2" in err
    assert run(["harmonics", "--signal", write(tmp_path, "u.txt", "garbage"),
                "--nu", "1"], capsys)[0] == 64


def test_verify_harmonics_certificate(tmp_path, capsys):
    out = tmp_path / "h.json"
    assert main(["harmonics", "--signal", str(FIXTURES / "signal.txt"), "--nu", "all",
                 "--grid", "8", "--out", str(out)]) == 0
    code, report, _ = run_json(["verify", "--in", out], capsys)
    assert code == 0 and report["ok"] and len(report["checks"]) == 4


def test_fourier_all(capsys):
    code, doc, _ = run_json(["fourier", "--signal", FIXTURES / "signal.txt", "--nu", "all"],
                            capsys)
    assert code == 0
    got = [(r["a"], r["b"]) for r in doc["coefficients"]]
    np.testing.assert_allclose(got, [(0.5, -0.25), (3, 4), (-1, 0.75), (0.125, 0)], atol=1e-8)


# -- approx --------------------------------------------------------------------------

def test_approx_spf(tmp_path, capsys):
    f = [[(j + 2.0) ** -2 * (-1) ** j, 0] for j in range(15)]
    job = write(tmp_path, "j.json", {"f": f, "n": [1, 3, 6]})
    out_csv = tmp_path / "sweep.csv"
    code, doc, _ = run_json(["approx", "--mode", "spf", "--in", job, "--csv", out_csv], capsys)
    assert code == 0
    assert len(doc["rows"]) == 9
    assert all(r["satisfied"] and r["interpolation_order"] >= r["n"] for r in doc["rows"])
    assert out_csv.read_text().splitlines()[0] == "n,radius,sup_error,bound"


def test_approx_exp(tmp_path, capsys):
    p = [[(j + 2.0) ** -2, 0] for j in range(20)]
    job = write(tmp_path, "j.json", {"p": p, "n": 4, "radii": [0.5, 2.0]})
    code, doc, _ = run_json(["approx", "--mode", "exp", "--in", job], capsys)
    assert code == 0 and all(r["satisfied"] for r in doc["rows"])
    bad = write(tmp_path, "k.json", {"p": [1.0], "n": 2})
    assert run(["approx", "--mode", "exp", "--in", bad], capsys)[0] == 2


def test_approx_hsum(tmp_path, capsys):
    job = write(tmp_path, "j.json", {"h": {"kind": "geometric"},
                                     "f": [[0.1, 0], [0.05, 0.02]], "n": [2, 3]})
    code, doc, _ = run_json(["approx", "--mode", "hsum", "--in", job], capsys)
    assert code == 0 and all(r["satisfied"] for r in doc["rows"])
    job = write(tmp_path, "k.json", {"h": {"kind": "coeffs", "coeffs": [0, 1, 0.5, 0.25, 0.125],
                                           "M": 1},
                                     "f": [0, 0.1, 0.02, 0.005], "n": 2, "first_kind": True})
    code, doc, _ = run_json(["approx", "--mode", "hsum", "--in", job], capsys)
    assert code == 0 and all(r["satisfied"] for r in doc["rows"])
    bad = write(tmp_path, "l.json", {"h": {"kind": "nope"}, "f": [0.1], "n": 1})
    assert run(["approx", "--mode", "hsum", "--in", bad], capsys)[0] == 64


# -- misc ----------------------------------------------------------------------------

def test_usage_errors_exit_64(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 64
    with pytest.raises(SystemExit) as info:
        main(["approx", "--mode", "bogus", "--in", "x.json"])
    assert info.value.code == 64


def test_generate_is_seeded(capsys):
    _, first, _ = run(["generate", "signal", "--n", "4", "--seed", "3"], capsys)
    _, second, _ = run(["generate", "signal", "--n", "4", "--seed", "3"], capsys)
    _, other, _ = run(["generate", "signal", "--n", "4", "--seed", "4"], capsys)
    assert first == second != other
    code, job, _ = run_json(["generate", "represent", "--n", "5", "--seed", "1"], capsys)
    assert code == 0 and job["n"] == 5
    a = np.array([complex(*p) for p in job["a"]])
    assert np.all(np.abs(a) <= (np.arange(5) + 2.0) ** -2)


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "circlesum", "verify", "--in",
                           str(FIXTURES / "represent_out.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ok"]
