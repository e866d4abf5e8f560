import json
import subprocess
import sys

import pytest

from hopfiso.cli import EXIT_BUDGET, EXIT_FALSE, EXIT_INPUT, EXIT_OK, main, render_text, run
from tests.conftest import FIXTURES

SQUARE = str(FIXTURES / "cyclic_square.json")


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for var in ("HOPFISO_OUTPUT", "HOPFISO_SEED", "HOPFISO_DEGREE_BUDGET"):
        monkeypatch.delenv(var, raising=False)


def test_validate():
    res = run(["validate", SQUARE])
    assert res.code == EXIT_OK
    rep = json.loads(res.text)
    assert rep["n"] == 2 and rep["N"] == 3 and rep["group"] == [9, 3]
    assert rep["q_root"] == {"order": 3, "exponent": 2}
    assert rep["conditions"] == {"R1": True, "R2": True, "R3": True}


def test_validate_r1_violation_is_reported_not_fatal():
    res = run(["validate", str(FIXTURES / "cyclic_square_r1_violation.json")])
    assert res.code == EXIT_OK and res.report["conditions"]["R1"] is False


def test_invalid_datum():
    res = run(["validate", str(FIXTURES / "invalid_datum.json")])
    assert res.code == EXIT_INPUT and "error" in res.report


def test_missing_file_and_bad_json(tmp_path):
    assert run(["validate", str(tmp_path / "nope.json")]).code == EXIT_INPUT
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["validate", str(bad)]).code == EXIT_INPUT


def test_u_and_normalize():
    res = run(["u", SQUARE])
    assert res.code == EXIT_OK and set(res.report["u"]) == {"1,2", "1,3", "2,3"}
    res = run(["normalize", str(FIXTURES / "cyclic_square_r1_violation.json")])
    assert res.code == EXIT_OK and "1,3" not in res.report["mu"]["entries"]
    # every g_i has order N there, so the family is normalized away and u vanishes
    res = run(["u", str(FIXTURES / "standard_a3.json")])
    assert res.code == EXIT_OK and all(v == [] for v in res.report["u"].values())


def test_sigma_matches_fixture():
    res = run(["sigma", SQUARE])
    fixture = json.loads((FIXTURES / "cyclic_square_sigma.json").read_text())
    assert res.report["datum"] == fixture["datum"]
    assert res.report["mu_normalized"] == fixture["mu"]


def test_iso_codes():
    res = run(["iso", SQUARE, str(FIXTURES / "cyclic_square_scaled.json")])
    assert res.code == EXIT_OK and res.report["isomorphic"]
    res = run(["iso", SQUARE, str(FIXTURES / "cyclic_square_sigma.json")])
    assert res.code == EXIT_OK and any(w["rho"] == "sigma" for w in res.report["witnesses"])
    res = run(["iso", SQUARE, str(FIXTURES / "cyclic_square_other.json")])
    assert res.code == EXIT_FALSE and res.report == {"isomorphic": False, "witnesses": []}
    res = run(["iso", SQUARE, str(FIXTURES / "cyclic_square_r1_violation.json")])
    assert res.code == EXIT_INPUT and "R1" in res.report["error"]["message"]


def test_aut_and_classify():
    rep = run(["aut", SQUARE]).report
    assert rep["free_rank"] == 0 and rep["order"] == 9
    res = run(["classify", str(FIXTURES / "infinite_classes.json")])
    assert res.code == EXIT_OK
    assert res.report == {"classes": [[0], [1], [2, 6], [3, 7], [4], [5]], "count": 6}
    assert run(["classify", SQUARE]).code == EXIT_INPUT


def test_verify_all_suites():
    res = run(["verify", "--n", "3", "--samples", "2"])
    assert res.code == EXIT_OK and res.report["ok"]
    assert set(res.report["suites"]) == {"mainreverse", "degree1", "mainsystem", "coproduct"}
    modes = {r["mode"] for r in res.report["suites"]["mainreverse"]}
    assert modes == {"rewrite", "skew_oracle"}


def test_verify_with_datum_file():
    res = run(["verify", "--datum", SQUARE, "--suite", "mainsystem", "--samples", "1"])
    assert res.code == EXIT_OK and len(res.report["suites"]["mainsystem"]) == 2


def test_verify_budget_exceeded():
    res = run(["verify", "--mode", "rewrite", "--n", "3", "--degree-budget", "6", "--suite", "mainreverse"])
    assert res.code == EXIT_BUDGET and res.report["error"]["kind"] == "BudgetExceededError"


def test_verify_auto_skips_rewrite_over_budget():
    res = run(["verify", "--n", "3", "--degree-budget", "6", "--suite", "mainreverse"])
    assert res.code == EXIT_OK
    rows = res.report["suites"]["mainreverse"]
    assert sum(r["mode"] == "skew_oracle" for r in rows) == 6
    assert all(r["root"][1] - r["root"][0] <= 2 for r in rows if r["mode"] == "rewrite")


def test_verify_false_exit(monkeypatch):
    import hopfiso.braided.verify as V
    good = V.t_coefficient
    monkeypatch.setattr(V, "t_coefficient", lambda d, c: good(d, c) * 2)
    res = run(["verify", "--suite", "mainreverse", "--mode", "skew_oracle"])
    assert res.code == EXIT_FALSE and not res.report["ok"]


@pytest.mark.parametrize("argv", [
    ["verify", "--N", "4"], ["verify", "--n", "1"], ["bogus"], [], ["verify", "--mode", "guess"],
    ["validate"], ["verify", "--seed", "-1"], ["verify", "--degree-budget", "1"],
])
def test_input_errors(argv):
    assert run(argv).code == EXIT_INPUT


def test_determinism_and_seed():
    a = run(["verify", "--suite", "coproduct", "--samples", "3"]).text
    b = run(["verify", "--suite", "coproduct", "--samples", "3"]).text
    c = run(["verify", "--suite", "coproduct", "--samples", "3", "--seed", "5"]).text
    assert a == b and a != c
    assert json.loads(a)["seed"] == 20240601


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("HOPFISO_SEED", "5")
    monkeypatch.setenv("HOPFISO_OUTPUT", "text")
    monkeypatch.setenv("HOPFISO_DEGREE_BUDGET", "7")
    res = run(["verify", "--suite", "coproduct", "--samples", "1"])
    assert res.report["seed"] == 5 and res.report["degree_budget"] == 7
    assert res.text.startswith("datum:") and "seed: 5" in res.text
    assert run(["verify", "--suite", "coproduct", "--samples", "1", "--output", "json"]).text.startswith("{")
    monkeypatch.setenv("HOPFISO_SEED", "abc")
    assert run(["verify"]).code == EXIT_INPUT
    monkeypatch.setenv("HOPFISO_SEED", "1")
    monkeypatch.setenv("HOPFISO_OUTPUT", "yaml")
    assert run(["validate", SQUARE]).code == EXIT_INPUT


def test_render_text():
    assert render_text({"b": [1, 2], "a": {"c": "x"}}) == 'a:\n  c: "x"\nb: [1, 2]'
    assert render_text([{"k": 1}]) == "-\n  k: 1"


def test_main_streams(capsys):
    assert main(["validate", SQUARE]) == EXIT_OK
    out = capsys.readouterr()
    assert json.loads(out.out)["n"] == 2 and out.err == ""
    assert main(["validate", str(FIXTURES / "invalid_datum.json")]) == EXIT_INPUT
    assert "hopfiso: error:" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hopfiso", "iso", SQUARE, str(FIXTURES / "cyclic_square_other.json")],
                          capture_output=True, text=True)
    assert proc.returncode == EXIT_FALSE
    assert json.loads(proc.stdout)["isomorphic"] is False
