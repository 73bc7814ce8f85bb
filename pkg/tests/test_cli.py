"""End-to-end command-line runs against the bundled data file."""

import json
from importlib import resources

import pytest

from larspath.cli import cli_main

DATA = str(resources.files("larspath").joinpath("data/diabetes.csv"))


def run(capsys, *argv):
    rc = cli_main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_fit_lasso_json_summary(capsys):
    rc, out, err = run(capsys, "fit", "--input", DATA, "--response", "Y",
                       "--variant", "lasso", "--json")
    assert rc == 0 and err == ""
    s = json.loads(out)
    assert s["variant"] == "lasso"
    assert s["steps"] == 12
    assert s["entry_order"][:4] == ["BMI", "S5", "BP", "S3"]
    assert s["entry_order_index"][:4] == [3, 9, 4, 7]


def test_fit_text_report_goes_to_stdout(capsys):
    rc, out, err = run(capsys, "fit", "--input", DATA, "--response", "Y")
    assert rc == 0
    lines = out.splitlines()
    assert len(lines) == 12
    assert lines[0].startswith("step,action,variable,sign,gamma")


def test_fit_out_file_keeps_stdout_quiet(capsys, tmp_path):
    target = tmp_path / "report.csv"
    rc, out, err = run(capsys, "fit", "--input", DATA, "--response", "Y",
                       "--out", str(target))
    assert rc == 0 and out == "" and err == ""
    text = target.read_text()
    assert len(text.splitlines()) == 12
    assert text.endswith("\n")


def test_fit_runs_are_deterministic(capsys):
    _, first, _ = run(capsys, "fit", "--input", DATA, "--response", "Y",
                      "--variant", "stagewise")
    _, second, _ = run(capsys, "fit", "--input", DATA, "--response", "Y",
                       "--variant", "stagewise")
    assert first == second


def test_fit_quadratic_explicit_binary_column(capsys):
    rc, out, _ = run(capsys, "fit", "--input", DATA, "--response", "Y",
                     "--quadratic", "--binary-col", "SEX", "--json")
    assert rc == 0
    s = json.loads(out)
    assert s["steps"] == 64
    assert s["entry_order"][0] == "BMI"


def test_fit_quadratic_autodetects_the_binary_column(capsys):
    rc, out, _ = run(capsys, "fit", "--input", DATA, "--response", "Y",
                     "--quadratic", "--json")
    assert rc == 0
    assert json.loads(out)["steps"] == 64


def test_fit_quadratic_unknown_binary_column(capsys):
    rc, out, err = run(capsys, "fit", "--input", DATA, "--response", "Y",
                       "--quadratic", "--binary-col", "BOGUS")
    assert rc == 2
    assert err.startswith("error:")


def test_missing_required_flag_is_a_usage_error(capsys):
    rc, out, err = run(capsys, "fit", "--response", "Y")
    assert rc == 1
    assert "usage" in err


def test_unreadable_input_file(capsys, tmp_path):
    rc, _, err = run(capsys, "fit", "--input", str(tmp_path / "nope.csv"),
                     "--response", "Y")
    assert rc == 2
    assert err.startswith("error:")


def test_wrong_response_name(capsys):
    rc, _, err = run(capsys, "fit", "--input", DATA, "--response", "OUTCOME")
    assert rc == 2


def test_help_exits_cleanly(capsys):
    rc, out, _ = run(capsys, "--help")
    assert rc == 0
    assert "usage" in out


def test_cp_reports_the_risk_minimizer(capsys):
    rc, out, _ = run(capsys, "cp", "--input", DATA, "--response", "Y",
                     "--json")
    assert rc == 0
    s = json.loads(out)
    assert s["cp_argmin"] == 7
    assert abs(s["sigma2_bar"] - 2932.6816372) < 1e-6


def test_cp_text_table(capsys):
    rc, out, _ = run(capsys, "cp", "--input", DATA, "--response", "Y")
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "k,df,cp"
    assert len(lines) == 12


def test_interpolate_budget_1000(capsys):
    rc, out, _ = run(capsys, "interpolate", "--input", DATA, "--response",
                     "Y", "--t", "1000", "--json")
    assert rc == 0
    s = json.loads(out)
    assert s["support"] == ["BMI", "BP", "S3", "S5"]
    assert s["t"] == 1000.0
    assert s["t_max"] > 3000
    assert s["intercept"] != 0.0
    assert len(s["coefficients"]) == 10


def test_interpolate_standardized_scale_has_no_intercept(capsys):
    rc, out, _ = run(capsys, "interpolate", "--input", DATA, "--response",
                     "Y", "--t", "1000", "--standardized", "--json")
    assert rc == 0
    assert json.loads(out)["intercept"] == 0.0


def test_interpolate_budget_out_of_range(capsys):
    rc, _, err = run(capsys, "interpolate", "--input", DATA, "--response",
                     "Y", "--t", "1e9")
    assert rc == 2


def test_bootstrap_df_small_run(capsys):
    rc, out, _ = run(capsys, "bootstrap-df", "--input", DATA, "--response",
                     "Y", "--B", "20", "--groups", "5", "--json")
    assert rc == 0
    s = json.loads(out)
    assert s["B"] == 20 and s["groups"] == 5
    assert len(s["df_hat"]) == 11
    assert abs(s["df_hat"][0]) < 1e-9
    assert all(lo <= mid <= hi for lo, mid, hi in
               zip(s["ci_low"], s["df_hat"], s["ci_high"]))


def test_simulate_small_run(capsys):
    rc, out, _ = run(capsys, "simulate", "--input", DATA, "--response", "Y",
                     "--replications", "3", "--steps", "4", "--json")
    assert rc == 0
    s = json.loads(out)
    assert 0.0 < s["true_R2"] < 1.0
    assert s["replications"] == 3 and s["steps"] == 4
    assert set(s["pe_max"]) == {"lars", "lasso", "stagewise",
                                "forward-selection"}


def test_simulate_text_table(capsys):
    rc, out, _ = run(capsys, "simulate", "--input", DATA, "--response", "Y",
                     "--replications", "3", "--steps", "4")
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "method,step,pe_mean,pe_sd,avg_nonzero"
    assert len(lines) == 1 + 4 * 5


def test_main_effects_first_subcommand(capsys):
    rc, out, _ = run(capsys, "main-effects-first", "--input", DATA,
                     "--response", "Y", "--k", "4", "--json")
    assert rc == 0
    s = json.loads(out)
    assert s["k"] == 4
    assert s["selected_mains"] == ["BMI", "BP", "S3", "S5"]
    assert s["steps"] >= 1
    pair_labels = {f"{a}:{b}" for a in s["selected_mains"]
                   for b in s["selected_mains"] if a != b}
    assert set(s["entry_order"]) <= pair_labels


def test_main_effects_first_needs_enough_mains(capsys):
    rc, _, err = run(capsys, "main-effects-first", "--input", DATA,
                     "--response", "Y", "--k", "0")
    assert rc == 2
