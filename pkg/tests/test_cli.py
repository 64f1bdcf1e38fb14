import json
import math
import os
import subprocess
import sys

import pytest

from bcml.bicomplex import parse_bicomplex
from bcml.cli import main

COSH_1 = 1.5430806348152438
SINH_1 = 1.1752011936438015


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "bcml", *args],
        capture_output=True, text=True, env=env,
    )


class TestEval:
    def test_ml_at_j(self):
        res = run_cli("eval", "--ml", "--alpha", "1", "--xi", "0 + 0 i1 + 0 i2 + 1 j")
        assert res.returncode == 0
        line = next(l for l in res.stdout.splitlines() if l.startswith("cartesian:"))
        value = parse_bicomplex(line.split(":", 1)[1])
        assert value.x0 == pytest.approx(COSH_1, rel=1e-12)
        assert value.x3 == pytest.approx(SINH_1, rel=1e-12)

    def test_gamma(self):
        res = run_cli("eval", "--gamma", "--xi", "3")
        assert res.returncode == 0
        line = next(l for l in res.stdout.splitlines() if l.startswith("cartesian:"))
        value = parse_bicomplex(line.split(":", 1)[1])
        assert value.x0 == pytest.approx(2.0, rel=1e-12)

    def test_output_reparses(self):
        res = run_cli("eval", "--ml", "--alpha", "0.5 + 0.2 j", "--xi", "0.3 + 0.1 i1 - 0.2 i2 + 0.4 j")
        got = {}
        for line in res.stdout.splitlines():
            key, _, rest = line.partition(":")
            got[key.strip()] = rest.strip()
        cart = parse_bicomplex(got["cartesian"])
        idem = parse_bicomplex(got["idempotent"])
        assert cart.to_idempotent() == idem.to_idempotent()
        assert got["null_cone"] in ("true", "false")

    def test_domain_error_exit_3(self):
        res = run_cli("eval", "--ml", "--alpha", "-1", "--xi", "1")
        assert res.returncode == 3
        assert "DomainAlpha" in res.stderr

    def test_parse_error_exit_2(self):
        res = run_cli("eval", "--gamma", "--xi", "totally nonsense")
        assert res.returncode == 2

    def test_usage_error_exit_2(self):
        res = run_cli("eval", "--xi", "1")
        assert res.returncode == 2

    def test_gamma_pole_exit_3(self):
        res = run_cli("eval", "--gamma", "--xi", "-2")
        assert res.returncode == 3
        assert "BCGammaPole" in res.stderr

    def test_max_terms_env_override(self):
        args = ("eval", "--ml", "--alpha", "0.2", "--xi", "3")
        refused = run_cli(*args)
        assert refused.returncode == 3
        assert "NotConverged" in refused.stderr
        allowed = run_cli(*args, env_extra={"BCML_MAX_TERMS": "4000"})
        assert allowed.returncode == 0


class TestVerify:
    def test_default_run_passes(self, tmp_path):
        out = tmp_path / "report.json"
        res = run_cli("verify", "--seed", "42", "--out", str(out))
        assert res.returncode == 0, res.stderr
        payload = json.loads(out.read_text())
        assert payload["failures"] == 0
        assert len(payload["sections"]) >= 9
        names = {s["identity"] for s in payload["sections"]}
        assert {"duplication", "multiplication", "laplace", "contour",
                "paper-recurrence", "ode", "cauchy-riemann"} <= names

    def test_seeded_runs_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        res1 = run_cli("verify", "--seed", "42", "--out", str(a))
        res2 = run_cli("verify", "--seed", "42", "--out", str(b))
        assert res1.returncode == res2.returncode == 0
        assert a.read_bytes() == b.read_bytes()

    def test_loose_tolerance_single_suite(self):
        res = run_cli("verify", "--only", "duplication", "--tol", "1e-3")
        assert res.returncode == 0

    def test_absurd_tolerance_fails_with_exit_1(self):
        res = run_cli("verify", "--only", "duplication", "--tol", "1e-30")
        assert res.returncode == 1
        assert "failed" in res.stderr

    def test_paper_recurrence_never_asserts(self, tmp_path):
        out = tmp_path / "rec.json"
        res = run_cli("verify", "--only", "paper-recurrence", "--out", str(out))
        assert res.returncode == 0
        payload = json.loads(out.read_text())
        (section,) = payload["sections"]
        assert section["asserted"] is False
        assert all(r["pass"] is None for r in section["reports"])
        assert any(r["rel_residual"] > 1e-6 for r in section["reports"])

    def test_unknown_suite_exit_2(self):
        res = run_cli("verify", "--only", "nonsense")
        assert res.returncode == 2

    def test_csv_format(self, tmp_path):
        out = tmp_path / "report.csv"
        res = run_cli("verify", "--only", "duplication", "--format", "csv",
                      "--out", str(out))
        assert res.returncode == 0
        header = out.read_text().splitlines()[0]
        assert header.startswith("section,identity,index,asserted,x0,x1,x2,x3,xi1_re")


class TestSweep:
    def test_grid_sweep_values(self, tmp_path):
        out = tmp_path / "sweep.csv"
        res = run_cli("sweep", "--ml", "--alpha", "2", "--grid", "x0=0:1:5",
                      "--out", str(out))
        assert res.returncode == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 6
        last = lines[-1].split(",")
        # E_2(1) = cosh(1)
        assert float(last[8]) == pytest.approx(COSH_1, rel=1e-12)

    def test_cos_curve(self, tmp_path):
        out = tmp_path / "cos.csv"
        n = 9
        res = run_cli("sweep", "--ml", "--alpha", "2",
                      "--grid", f"x0=-2.4674011002723395:0:{n}", "--out", str(out))
        assert res.returncode == 0
        rows = out.read_text().splitlines()[1:]
        for row in rows:
            cells = row.split(",")
            x0, val = float(cells[0]), float(cells[8])
            want = math.cos(math.sqrt(-x0)) if x0 <= 0 else math.cosh(math.sqrt(x0))
            assert val == pytest.approx(want, rel=1e-11, abs=1e-11)

    def test_empty_grid_header_only(self, tmp_path):
        out = tmp_path / "empty.csv"
        res = run_cli("sweep", "--ml", "--alpha", "1", "--grid", "x0=0:1:0",
                      "--out", str(out))
        assert res.returncode == 0
        assert len(out.read_text().splitlines()) == 1

    def test_domain_errors_recorded_in_row(self, tmp_path):
        out = tmp_path / "err.csv"
        res = run_cli("sweep", "--gamma", "--grid", "x0=-1:1:3", "--out", str(out))
        assert res.returncode == 0
        rows = out.read_text().splitlines()[1:]
        assert len(rows) == 3
        assert "BCGammaPole" in rows[0]
        assert "BCGammaPole" not in rows[-1]

    def test_growth_mode_slope(self, tmp_path):
        out = tmp_path / "growth.csv"
        res = run_cli("sweep", "--mode", "growth", "--alpha", "1",
                      "--radii", "5,10,20", "--out", str(out))
        assert res.returncode == 0
        rows = out.read_text().splitlines()[1:]
        slope = float(rows[0].split(",")[4])
        assert slope == pytest.approx(1.0, rel=0.2)


class TestSeriesCommand:
    def test_series_json(self):
        res = run_cli("series", "--alpha", "1/2", "--terms", "4")
        assert res.returncode == 0
        payload = json.loads(res.stdout)
        assert payload["p"] == 1 and payload["q"] == 2
        assert payload["mu0"] == "0"
        assert len(payload["coeffs"]) == 5
        assert payload["coeffs"][1][0] == pytest.approx(1.1283791670955126, rel=1e-13)

    def test_series_differentiated(self):
        res = run_cli("series", "--alpha", "1/2", "--terms", "6", "--differentiate", "1")
        payload = json.loads(res.stdout)
        assert payload["mu0"] == "-1"
        assert payload["coeffs"][0] == [0.0, 0.0]

    def test_bad_alpha_exit_2(self):
        res = run_cli("series", "--alpha", "half")
        assert res.returncode == 2


def test_main_callable_directly(capsys):
    code = main(["eval", "--gamma", "--xi", "4"])
    assert code == 0
    out = capsys.readouterr().out
    assert "cartesian" in out
