"""CLI tests: every subcommand, exit-code discipline, JSON parity."""

import json
import os

import pytest
from click.testing import CliRunner

from fprcalc import core, ttest
from fprcalc.cli import main
from fprcalc.core import StudyDesign
from fprcalc.service import build_calc_response, build_ttest_response

from conftest import CUSHNY_A, CUSHNY_B, assert_printed


@pytest.fixture
def runner():
    return CliRunner()


class TestCalcCommand:
    def test_fpr_mode(self, runner):
        r = runner.invoke(main, ["calc", "--mode", "fpr", "--p", "0.05",
                                 "--prior", "0.5", "--n", "16", "--es", "1"])
        assert r.exit_code == 0
        assert "FPR" in r.output
        assert "0.266" in r.output

    def test_p_mode(self, runner):
        r = runner.invoke(main, ["calc", "--mode", "p", "--fpr", "0.05",
                                 "--prior", "0.1", "--n", "16", "--es", "1",
                                 "--format", "json"])
        assert r.exit_code == 0
        assert_printed(json.loads(r.output)["p_value"], "0.00045")

    def test_prior_mode(self, runner):
        r = runner.invoke(main, ["calc", "--mode", "prior", "--p", "0.05",
                                 "--fpr", "0.05", "--n", "16", "--es", "1",
                                 "--format", "json"])
        assert r.exit_code == 0
        assert_printed(json.loads(r.output)["prior"], "0.87")

    def test_json_equals_service_schema(self, runner):
        r = runner.invoke(main, ["calc", "--mode", "fpr", "--p", "0.05",
                                 "--prior", "0.5", "--n", "16", "--es", "1",
                                 "--format", "json"])
        direct = core.calc("fpr_from_p_prior", StudyDesign(16, 1.0),
                           p=0.05, prior=0.5)
        assert json.loads(r.output) == build_calc_response(direct)

    def test_csv_format(self, runner):
        r = runner.invoke(main, ["calc", "--mode", "fpr", "--p", "0.05",
                                 "--prior", "0.5", "--n", "16", "--es", "1",
                                 "--format", "csv"])
        assert r.exit_code == 0
        lines = r.output.strip().splitlines()
        assert lines[0] == "p,prior,fpr,l10,l01,power"
        assert len(lines[1].split(",")) == 6

    def test_design_from_power(self, runner):
        r = runner.invoke(main, ["calc", "--mode", "fpr", "--p", "0.05",
                                 "--prior", "0.5", "--design-from-power", "0.78",
                                 "--es", "1", "--format", "json"])
        assert r.exit_code == 0
        body = json.loads(r.output)
        assert abs(body["request"]["n_per_group"] - 15.95) < 0.1

    def test_missing_required_input_is_usage_error(self, runner):
        r = runner.invoke(main, ["calc", "--mode", "fpr", "--p", "0.05",
                                 "--n", "16", "--es", "1"])
        assert r.exit_code == 2

    def test_extra_input_is_usage_error(self, runner):
        r = runner.invoke(main, ["calc", "--mode", "fpr", "--p", "0.05",
                                 "--prior", "0.5", "--fpr", "0.1",
                                 "--n", "16", "--es", "1"])
        assert r.exit_code == 2

    def test_out_of_range_flag_is_usage_error(self, runner):
        r = runner.invoke(main, ["calc", "--mode", "fpr", "--p", "1.5",
                                 "--prior", "0.5", "--n", "16", "--es", "1"])
        assert r.exit_code == 2

    def test_n_and_power_together_is_usage_error(self, runner):
        r = runner.invoke(main, ["calc", "--mode", "fpr", "--p", "0.05",
                                 "--prior", "0.5", "--n", "16",
                                 "--design-from-power", "0.8", "--es", "1"])
        assert r.exit_code == 2

    def test_unreachable_target_is_domain_error(self, runner):
        r = runner.invoke(main, ["calc", "--mode", "p", "--fpr", "0.99",
                                 "--prior", "0.5", "--n", "16", "--es", "1"])
        assert r.exit_code == 1
        assert "no_solution" in r.output


class TestTTestCommand:
    def test_cushny(self, runner, cushny_csv):
        r = runner.invoke(main, ["ttest", cushny_csv])
        assert r.exit_code == 0
        assert "1.8608" in r.output
        assert "0.07919" in r.output or "0.0792" in r.output
        assert "0.28" in r.output

    def test_json_parity(self, runner, cushny_csv):
        r = runner.invoke(main, ["ttest", cushny_csv, "--format", "json"])
        summary = ttest.two_sample_t(CUSHNY_A, CUSHNY_B)
        assert json.loads(r.output) == build_ttest_response(summary, prior=0.5)

    def test_lower_prior_raises_fpr(self, runner, cushny_csv):
        r1 = runner.invoke(main, ["ttest", cushny_csv, "--format", "json"])
        r2 = runner.invoke(main, ["ttest", cushny_csv, "--prior", "0.1",
                                  "--format", "json"])
        mfpr = json.loads(r1.output)["fpr_supplement"]["fpr"]
        fpr01 = json.loads(r2.output)["fpr_supplement"]["fpr"]
        assert fpr01 > mfpr

    def test_single_group_is_domain_error(self, runner, tmp_path):
        path = tmp_path / "one.csv"
        path.write_text("group,value\nA,1\nA,2\n")
        r = runner.invoke(main, ["ttest", str(path)])
        assert r.exit_code == 1
        assert "two groups" in r.output

    def test_malformed_row_diagnostics(self, runner, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("group,value\nA,1\nA,oops\nB,2\nB,3\n")
        r = runner.invoke(main, ["ttest", str(path)])
        assert r.exit_code == 1
        assert "row 3" in r.output

    def test_missing_file_is_usage_error(self, runner):
        r = runner.invoke(main, ["ttest", "/nonexistent.csv"])
        assert r.exit_code == 2


class TestCurveCommand:
    def test_fig2_writes_file_with_minimum_row(self, runner, tmp_path):
        r = runner.invoke(main, ["curve", "fig2", "--out", str(tmp_path)])
        assert r.exit_code == 0
        path = tmp_path / "fig2-p_equals.csv"
        assert path.exists()
        rows = [ln.split(",") for ln in path.read_text().splitlines()[1:]]
        by_n = {row[6]: float(row[1]) for row in rows}
        assert_printed(by_n["8"], "0.206")
        assert "minimum FPR 0.206 at n = 8" in r.output

    def test_fig1_writes_both_series(self, runner, tmp_path):
        r = runner.invoke(main, ["curve", "fig1", "--out", str(tmp_path)])
        assert r.exit_code == 0
        assert (tmp_path / "fig1-p_equals.csv").exists()
        assert (tmp_path / "fig1-p_less_than.csv").exists()

    def test_fig3_writes_four_series(self, runner, tmp_path):
        r = runner.invoke(main, ["curve", "fig3", "--out", str(tmp_path)])
        assert r.exit_code == 0
        names = sorted(p.name for p in tmp_path.glob("fig3-*.csv"))
        assert names == ["fig3-goodman.csv", "fig3-identity.csv",
                         "fig3-p_equals.csv", "fig3-sellke_berger.csv"]

    def test_fig3_pmin_out_of_bound_range(self, runner):
        r = runner.invoke(main, ["curve", "fig3", "--p-min", "0.5"])
        assert r.exit_code == 2

    def test_json_format(self, runner):
        r = runner.invoke(main, ["curve", "fig2", "--format", "json"])
        assert r.exit_code == 0
        body = json.loads(r.output)
        assert body["figure"] == "fig2"
        assert body["minimum"]["n"] == 8

    def test_unwritable_output_path(self, runner, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("x")
        r = runner.invoke(main, ["curve", "fig2", "--out",
                                 str(blocker / "sub")])
        assert r.exit_code == 1


class TestSimulateCommand:
    def test_json_output(self, runner):
        r = runner.invoke(main, ["simulate", "--n", "16", "--es", "1",
                                 "--sims", "20000", "--seed", "42"])
        assert r.exit_code == 0
        body = json.loads(r.output)
        assert body["result"]["config"]["seed"] == 42
        assert 0.7 < body["result"]["frac_below"]["h1"]["0.05"] < 0.86

    def test_deterministic(self, runner):
        args = ["simulate", "--n", "16", "--es", "1", "--sims", "5000",
                "--seed", "7"]
        assert runner.invoke(main, args).output == runner.invoke(main, args).output

    def test_out_file(self, runner, tmp_path):
        path = tmp_path / "sim.json"
        r = runner.invoke(main, ["simulate", "--n", "16", "--es", "1",
                                 "--sims", "5000", "--seed", "7",
                                 "--out", str(path)])
        assert r.exit_code == 0
        assert json.loads(path.read_text())["schema_version"] == "1"

    def test_bad_band_is_domain_error(self, runner):
        r = runner.invoke(main, ["simulate", "--n", "16", "--es", "1",
                                 "--sims", "100", "--seed", "1",
                                 "--band-center", "0.001"])
        assert r.exit_code == 1

    def test_usage_errors(self, runner):
        assert runner.invoke(main, ["simulate", "--es", "1"]).exit_code == 2
        assert runner.invoke(main, ["simulate", "--n", "1", "--es", "1"]).exit_code == 2


class TestServeCommand:
    def test_missing_config_is_usage_error(self, runner):
        r = runner.invoke(main, ["serve", "--config", "/no/such/file"])
        assert r.exit_code == 2

    def test_bad_config_is_domain_error(self, runner, tmp_path):
        path = tmp_path / "bad.conf"
        path.write_text("what even is this\n")
        r = runner.invoke(main, ["serve", "--config", str(path)])
        assert r.exit_code == 1


class TestExitCodes:
    def test_success_is_zero(self, runner):
        assert runner.invoke(main, ["--version"]).exit_code == 0
        assert runner.invoke(main, ["--help"]).exit_code == 0

    def test_unknown_command_is_usage_error(self, runner):
        assert runner.invoke(main, ["frobnicate"]).exit_code == 2

    def test_unknown_flag_is_usage_error(self, runner):
        assert runner.invoke(main, ["calc", "--nope", "1"]).exit_code == 2
