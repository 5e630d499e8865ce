from __future__ import annotations

import json
import subprocess
import sys

import pytest

from vlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out) if out.strip() else None


def test_classify_json(capsys):
    code, rep = run_json(capsys, "classify", "y0*y1*y2")
    assert code == 0
    assert rep["schema"] == 1 and rep["status"] == "ok"
    assert rep["result"]["stratum"] == "OutsideSec2"
    assert rep["result"]["check_agrees"] is True


@pytest.mark.parametrize("form,stratum", [("y0^3+y1^3+y2^3", "OnSec2NotSec1"), ("y2^3", "OnVeronese"),
                                          ("y0^2*y1", "OnSec1NotV")])
def test_classify_strata(capsys, form, stratum):
    _, rep = run_json(capsys, "classify", form)
    assert rep["result"]["stratum"] == stratum


def test_exit_codes(capsys):
    assert run(capsys, "classify", "0")[0] == 3
    assert run(capsys, "classify", "y0+")[0] == 2
    assert run(capsys, "classify", "y0^2")[0] == 2  # not a cubic
    assert run(capsys, "no-such-command")[0] == 2
    assert run(capsys, "betti", "--s", "1")[0] == 2
    assert run(capsys, "present", "--preset", "F4", "--budget-pairs", "5")[0] == 4


def test_json_is_deterministic_up_to_timing(capsys):
    reps = [run_json(capsys, "present", "--preset", "F5")[1] for _ in range(2)]
    for r in reps:
        r.pop("timing")
    assert reps[0] == reps[1]
    assert reps[0]["result"]["generator_profile"] == {"2": 17, "3": 1}


def test_env_overrides_and_flag_precedence(capsys, monkeypatch):
    monkeypatch.setenv("VLAB_FIELD", "gf:31991")
    monkeypatch.setenv("VLAB_FORMAT", "json")
    code, out, _ = run(capsys, "classify", "y0*y1*y2")
    rep = json.loads(out)
    assert rep["config"]["field"] == "gf:31991"
    _, rep = run_json(capsys, "classify", "y0*y1*y2", "--field", "q")
    assert rep["config"]["field"] == "q"
    monkeypatch.setenv("VLAB_DEG_CAP", "nope")
    assert run(capsys, "classify", "y0*y1*y2")[0] == 2


def test_koszul_probe_presets(capsys):
    _, rep = run_json(capsys, "koszul-probe", "--ring", "pinched", "--s", "2", "--D", "4")
    assert rep["result"]["verdict"] == "LinearUpTo(2)"
    _, rep = run_json(capsys, "koszul-probe", "--ring", "A_F5", "--s", "3", "--D", "5")
    assert rep["result"]["verdict"] == "NonlinearAt(2, 3)"


def test_rees_lemma_complex(capsys):
    code, rep = run_json(capsys, "rees", "--regularity")
    assert code == 0
    assert rep["result"]["betti_over_B_Delta"]["entries"][:2] == [[0, 0, 1], [1, 2, 2]]
    code, rep = run_json(capsys, "lemma-check")
    assert code == 0 and set(rep["result"]["checks"].values()) == {"PASS"}
    code, rep = run_json(capsys, "complexF", "--length", "6", "--window", "8,5")
    assert code == 0 and rep["result"]["diagonal_vanishes"] is True


def test_rees_rejects_non_ci(capsys):
    code, _, err = run(capsys, "rees", "--quadrics", "x1^2, x1*x2, x2^2")
    assert code == 2 and "complete intersection" in err


def test_hilbert_compare(capsys):
    code, rep = run_json(capsys, "hilbert", "--preset", "pinched", "--compare", "remark-H", "--upto", "6")
    assert code == 0 and rep["result"]["compare"]["equal"] is True


def test_text_report(capsys):
    code, out, _ = run(capsys, "project", "y0*y1*y2")
    assert code == 0 and "dimension: 9" in out and out.rstrip().endswith("status: ok")


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "vlab", "classify", "y2^3", "--format", "json"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["result"]["stratum"] == "OnVeronese"
