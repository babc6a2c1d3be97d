import json
import math

from sl2cv.cli import encode, main, run


def payload(*argv):
    out, status, _ = run(list(argv))
    return out, status


def test_verify_trefoil_pole():
    out, status = payload("verify", "--lemma", "trefoil-pole", "--p", "5")
    assert status == 0
    assert out["results"][0]["valuation"] == -6
    assert set(out) == {"command", "config", "results", "version", "ok"}


def test_verify_klein_irr():
    out, status = payload("verify", "--lemma", "klein-irr", "--p", "2")
    assert status == 0 and out["ok"]


def test_verify_torus_char2_inapplicable():
    out, status = payload("verify", "--lemma", "torus-char2", "--phi", "0,1,-1,0", "--p", "3")
    r = out["results"][0]
    assert status == 0 and r["family"] == "C_T1" and r["applicable"] is False


def test_census_commands():
    out, status = payload("census", "--group", "klein", "--q", "3")
    assert status == 0 and out["results"][0]["uncovered"] == []
    out, status = payload("census", "--group", "trefoil", "--q", "4")
    assert status == 0 and out["results"][0]["uncovered"] == []
    out, status = payload("census", "--group", "glued", "--phi", "0,1,-1,0", "--q", "2")
    assert status == 0 and out["results"][0]["coverage_checked"] is False


def test_detect_commands():
    out, status = payload("detect", "--phi", "0,1,-1,0", "--surface", "S2", "--p", "2")
    assert status == 0 and out["results"][0]["detected"] and "C_SA" in out["results"][0]["detected_by"]
    out, status = payload("detect", "--phi", "1,0,-6,1", "--surface", "S5", "--p", "3")
    assert status == 0 and out["results"][0]["detected"] is False
    out, status = payload("detect-s4", "--q", "4", "--u", "3", "--v", "1", "--p", "7")
    assert status == 0 and out["results"][0]["verdict"] == "detected"


def test_exit_codes():
    assert payload("detect", "--phi", "0,1,-1,0", "--surface", "S4", "--p", "2")[1] == 4
    assert payload("census", "--group", "klein", "--q", "17")[1] == 3
    assert payload("census", "--group", "klein", "--q", "6")[1] == 2
    assert payload("verify", "--lemma", "nonsense")[1] == 2
    assert payload("detect", "--phi", "1,1,1,1", "--surface", "S1", "--p", "2")[1] == 2
    assert payload("frobnicate")[1] == 2


def test_bound_env(monkeypatch):
    monkeypatch.setenv("SL2CV_WORK_BOUND", "100")
    assert payload("census", "--group", "klein", "--q", "3")[1] == 3


def test_infinity_encoding():
    assert encode({"valuation": math.inf}) == {"valuation": None, "infinite": True}
    assert encode({"v": [1, math.inf]}) == {"v": [1, None]}


def test_output_is_deterministic(tmp_path, capsys):
    path = tmp_path / "a.json"
    assert main(["detect-s4", "--q", "3", "--u", "2", "--v", "1", "--out", str(path)]) == 0
    first = path.read_text()
    assert main(["detect-s4", "--q", "3", "--u", "2", "--v", "1"]) == 0
    assert capsys.readouterr().out == first
    assert json.loads(first)["command"] == "detect-s4"


def test_conjecture_probe_command():
    out, status = payload("conjecture", "probe", "--q", "3", "--r", "2")
    assert status == 0 and out["results"][0]["verdict"] is None
    assert payload("conjecture", "probe", "--q", "4", "--r", "2")[1] == 2
