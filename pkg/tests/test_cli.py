import json

import pytest

from nahmtriples.cli import emit, main, parse_report_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_transform_triple_text(capsys):
    code, out = run(capsys, "transform-triple", "1", "1", "2", "1")
    assert code == 0
    assert "[2, 1, -1, -1]" in out
    assert "it_index: 0" in out


def test_critical_values(capsys):
    code, out = run(capsys, "critical-values", "2", "1", "3", "0")
    assert code == 0
    assert "'3'" in out and "'9/2'" in out and "candidates" in out


def test_fm_class_json_round_trip(capsys):
    code, out = run(capsys, "--format", "json", "fm-class", "2", "3")
    assert code == 0
    rep = parse_report_json(out)
    assert rep.results["slope"] == "3/2"
    assert rep.results["transformed"] == [3, -2]
    # round trip: re-emitting reproduces the same JSON exactly
    assert emit(rep, "json") == out.rstrip("\n")


def test_check_preservation_exit_codes(capsys):
    code, out = run(capsys, "check-preservation", "--regime", "small",
                    "1", "2", "1", "1")
    assert code == 0
    assert "applies: True" in out
    code, out = run(capsys, "check-preservation", "--regime", "small",
                    "2", "1", "2", "1")
    assert code == 2
    assert "gcd(n1,d1)=1 ✗" in out


def test_error_exit_code(capsys):
    code = main(["transform-triple", "1", "1", "1", "-1"])
    err = capsys.readouterr().err
    assert code == 1
    assert "NotIT" in err


def test_vortex_params_rationals(capsys):
    code, out = run(capsys, "--format", "json", "vortex-params",
                    "1", "1", "2", "1", "--alpha", "1")
    assert code == 0
    rep = parse_report_json(out)
    assert rep.results["tau"] == "2" and rep.results["tau_prime"] == "1"


def test_cov_const(capsys):
    code, out = run(capsys, "--format", "json", "cov-const",
                    "1", "1", "2", "1", "--alpha", "1")
    rep = parse_report_json(out)
    assert rep.results["slopes"] == ["2", "3/2", "1"]
    assert rep.results["lambda_over_pi"] == "1"
    assert rep.results["solvable"] is False


def test_counterexample(capsys):
    code, out = run(capsys, "--format", "json", "counterexample", "2", "1")
    rep = parse_report_json(out)
    assert rep.results["type"] == [3, 3, 5, 4]
    assert rep.results["verdict"] == "NOT_POLYSTABLE_AFTER_TRANSFORM"


def test_nahm_line_small(capsys, tmp_path):
    heat = tmp_path / "heat.csv"
    code, out = run(capsys, "--format", "json", "nahm-line",
                    "--degree", "1", "--grid", "16", "--dual-grid", "8",
                    "--heatmap", str(heat))
    assert code == 0
    rep = parse_report_json(out)
    assert rep.results["chern"] == -1
    lines = heat.read_text().strip().splitlines()
    assert lines[0] == "i,j,w_re,w_im,plaquette_phase"
    assert len(lines) == 1 + 8 * 8


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"degree": 1, "grid": 16, "dual-grid": 8}))
    code, out = run(capsys, "--format", "json", "--config", str(cfg),
                    "nahm-line", "--degree", "1")
    assert code == 0
    rep = parse_report_json(out)
    assert rep.inputs["grid"] == 16


def test_out_file(capsys, tmp_path):
    out_file = tmp_path / "rep.json"
    code, _ = run(capsys, "--format", "json", "--out", str(out_file),
                  "transform-triple", "1", "1", "2", "1")
    assert code == 0
    rep = parse_report_json(out_file.read_text())
    assert rep.results["transformed"] == [2, 1, -1, -1]
