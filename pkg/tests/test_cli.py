import csv
import io
import json
from contextlib import redirect_stdout

import pytest

from uppertail.cli import main


def run_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestTail:
    def test_exact_small_example(self):
        code, out = run_cli(
            ["tail", "--family", "ap", "--n", "4", "--k", "3",
             "--p", "0.5", "--t", "0.75", "--method", "exact"]
        )
        assert code == 0
        rows = parse_csv(out)
        assert len(rows) == 1
        assert float(rows[0]["threshold"]) == 1.0
        assert float(rows[0]["p_hat"]) == 0.1875

    def test_grid_cross_product(self):
        code, out = run_cli(
            ["tail", "--family", "schur", "--n", "10",
             "--p", "0.2,0.4", "--t", "1,2,3", "--method", "exact"]
        )
        assert code == 0
        assert len(parse_csv(out)) == 6

    def test_json_lines(self):
        code, out = run_cli(
            ["tail", "--family", "ap", "--n", "4", "--p", "0.5", "--t", "0.75",
             "--method", "exact", "--out", "json"]
        )
        assert code == 0
        rows = [json.loads(line) for line in out.splitlines()]
        assert rows[0]["p_hat"] == 0.1875

    def test_mc_worker_invariance(self):
        outputs = set()
        for w in ("1", "2", "4"):
            code, out = run_cli(
                ["tail", "--family", "ap", "--n", "20", "--p", "0.3",
                 "--t", "2", "--method", "mc", "--samples", "3000",
                 "--seed", "9", "--workers", w]
            )
            assert code == 0
            outputs.add(out)
        assert len(outputs) == 1

    def test_usage_errors(self):
        assert run_cli(["tail", "--family", "ap"])[0] == 2
        assert run_cli(
            ["tail", "--family", "ap", "--n", "8", "--p", "0.5", "--t", "1",
             "--method", "mc"]
        )[0] == 2
        assert run_cli(
            ["tail", "--family", "ap", "--n", "8", "--p", "1.5", "--t", "1"]
        )[0] == 2

    def test_capacity_exit_code(self):
        code, _ = run_cli(
            ["tail", "--family", "ap", "--n", "40", "--p", "0.3", "--t", "1"]
        )
        assert code == 1


class TestFamilyAndBounds:
    def test_family_row(self):
        code, out = run_cli(["family", "--family", "schur", "--n", "12"])
        assert code == 0
        row = parse_csv(out)[0]
        assert row["edges"] == "30"
        assert row["k"] == "3"
        assert row["delta_1"] == "10"

    def test_bounds_rows_parse(self):
        code, out = run_cli(
            ["bounds", "--family", "ap", "--n", "10", "--p", "0.2,0.4", "--t", "1,2"]
        )
        assert code == 0
        rows = parse_csv(out)
        tags = {r["tag"] for r in rows}
        assert {"theorem_c", "theorem_c_quadratic", "theorem_c_ratio_log",
                "et", "et_stirling", "exponent_appp", "lb_cluster"} <= tags
        for r in rows:
            float(r["value"])
            json.loads(r["inputs"])

    def test_bounds_chain_order(self):
        _, out = run_cli(
            ["bounds", "--family", "ap", "--n", "10", "--p", "0.3", "--t", "2"]
        )
        rows = {r["tag"]: float(r["value"]) for r in parse_csv(out)}
        assert rows["theorem_c"] <= rows["theorem_c_quadratic"] + 1e-12
        assert rows["theorem_c"] <= rows["theorem_c_ratio_log"] + 1e-12
        assert rows["et"] <= rows["et_stirling"] + 1e-12


class TestDecompose:
    def test_rows_have_consistent_counts(self):
        code, out = run_cli(
            ["decompose", "--family", "ap", "--n", "14", "--p", "0.35",
             "--r", "1.5", "--samples", "8", "--seed", "3"]
        )
        assert code == 0
        rows = parse_csv(out)
        assert len(rows) == 8
        for row in rows:
            x = int(row["x"])
            xr = int(row["xr"])
            assert xr <= x
            assert int(row["greedy_mr"]) <= int(row["mr"])
            assert row["cascade"] == "na"
            assert row["xr_exact"] == "true"

    def test_cascade_column(self):
        code, out = run_cli(
            ["decompose", "--family", "ap", "--n", "12", "--p", "0.2",
             "--r", "1", "--samples", "5", "--seed", "4",
             "--beta", "0.01", "--gamma", "0.1", "--t", "9"]
        )
        assert code == 0
        for row in parse_csv(out):
            assert row["cascade"] in {"true", "false", "indeterminate"}

    def test_requires_r_and_seed(self):
        assert run_cli(
            ["decompose", "--family", "ap", "--n", "10", "--seed", "1"]
        )[0] == 2
        assert run_cli(
            ["decompose", "--family", "ap", "--n", "10", "--r", "1"]
        )[0] == 2


class TestVerifyCommand:
    def test_phi_suite_passes(self):
        code, out = run_cli(["verify", "phi"])
        assert code == 0
        assert "passed 7/7 checks" in out
        assert "FAIL" not in out

    def test_unknown_suite(self):
        assert run_cli(["verify", "granite"])[0] == 2


class TestSweep:
    def test_resume_skips_existing(self, tmp_path):
        out_file = str(tmp_path / "sweep.csv")
        base = ["sweep", "--family", "schur", "--n", "10", "--method", "exact",
                "--t", "1,2", "--out-file", out_file]
        code, _ = run_cli(base + ["--p", "0.2"])
        assert code == 0
        first = parse_csv(open(out_file).read())
        assert len(first) == 2
        code, _ = run_cli(base + ["--p", "0.2,0.4"])
        assert code == 0
        both = parse_csv(open(out_file).read())
        assert len(both) == 4
        # Untouched rows stay byte-identical.
        assert both[:2] == first
        assert all(r["status"] == "ok" for r in both)

    def test_budget_rows(self, tmp_path):
        out_file = str(tmp_path / "sweep_budget.csv")
        code, _ = run_cli(
            ["sweep", "--family", "ap", "--n", "30", "--method", "exact",
             "--p", "0.1", "--t", "1", "--out-file", out_file]
        )
        assert code == 0
        rows = parse_csv(open(out_file).read())
        assert rows[0]["status"] == "budget"
        assert rows[0]["p_hat"] == ""

    def test_stdout_mode(self):
        code, out = run_cli(
            ["sweep", "--family", "ap", "--n", "8", "--method", "exact",
             "--p", "0.2,0.3", "--t", "1,2"]
        )
        assert code == 0
        assert len(parse_csv(out)) == 4


class TestConfigFile:
    def test_defaults_from_file(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(
            json.dumps({"family": "ap", "n": 4, "k": 3, "p": [0.5], "t": [0.75]})
        )
        code, out = run_cli(["tail", "--config", str(cfg)])
        assert code == 0
        assert float(parse_csv(out)[0]["p_hat"]) == 0.1875

    def test_flags_override_file(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(
            json.dumps({"family": "ap", "n": 4, "k": 3, "p": [0.5], "t": [0.75]})
        )
        code, out = run_cli(["tail", "--config", str(cfg), "--t", "1.75"])
        assert code == 0
        assert float(parse_csv(out)[0]["threshold"]) == 2.0

    def test_unknown_key_rejected(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"frobnicate": 1}))
        assert run_cli(["tail", "--config", str(cfg)])[0] == 2
