import json
import subprocess
import sys
from pathlib import Path

import pytest

from eulerstack import descriptors as D
from eulerstack.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_chi_kp2(capsys):
    assert run(capsys, "chi", DATA / "kp2.json") == (0, "3\n", "")


def test_chi_bz2_weights(capsys):
    assert run(capsys, "chi", DATA / "bz2.json", "--weight", "inv-e")[1] == "1/2\n"
    assert run(capsys, "chi", DATA / "bz2.json", "--weight", "o")[1] == "2\n"
    assert run(capsys, "chi", DATA / "bz2.json", "--weight", "e")[1] == "2\n"
    assert run(capsys, "chi", DATA / "bz2.json", "-f", DATA / "bz2-one.json", "--weight", "inv-e")[1] == "1/2\n"


def test_stringy(capsys):
    code, out, _ = run(capsys, "stringy", DATA / "s3-natural.json", "--check")
    assert code == 0 and out.startswith("chi(M,G) = 2 = chi_orb")
    assert run(capsys, "stringy", DATA / "v4-point.json")[1] == "chi(M,G) = 4\n"
    assert run(capsys, "stringy", DATA / "trivial-5.json", "--check")[0] == 0


def test_push_modes(capsys, tmp_path):
    out = tmp_path / "f.json"
    code, text, _ = run(capsys, "push", DATA / "pt-to-bz2.json", DATA / "pt-one.json", "--mode", "stk", "-o", out)
    assert code == 0 and "wrote" in text
    f = D.load_fn(out)
    assert f("pt") == 2
    code, text, _ = run(capsys, "push", DATA / "bz2-to-pt.json", DATA / "bz2-one.json", "--mode", "w:inv-e")
    assert json.loads(text)["values"] == {"pt": "1/2"}
    code, text, _ = run(capsys, "push", DATA / "kp1-to-pt.json", DATA / "kp1-one.json")
    assert json.loads(text)["values"] == {"pt": "2"}


def test_push_lcf(capsys):
    code, text, _ = run(capsys, "push", DATA / "lcf-map.json", DATA / "lcf-fn.json", "--mode", "naive", "--lcf")
    obj = json.loads(text)
    assert code == 0 and obj["values"] == {"t0": "6"} and obj["default"] == "1"
    # without --lcf a nonzero default is a domain error
    code, _, err = run(capsys, "push", DATA / "lcf-map.json", DATA / "lcf-fn.json")
    assert code == 1 and "NotConstructible" in err
    assert run(capsys, "push", DATA / "lcf-map.json", DATA / "lcf-fn.json", "--mode", "w:e", "--lcf")[0] == 2


def test_pull_and_compose(capsys, tmp_path):
    code, text, _ = run(capsys, "pull", DATA / "pt-to-bz2.json", DATA / "bz2-one.json")
    assert code == 0 and json.loads(text)["values"] == {"pt": "1"}
    out = tmp_path / "c.json"
    assert run(capsys, "compose", DATA / "pt-to-bz2.json", DATA / "bz2-to-pt.json", "-o", out)[0] == 0
    c = D.load_morphism(out)
    assert c.source.ids == ("pt",) and c.target.ids == ("pt",)
    assert run(capsys, "compose", DATA / "pt-to-bz2.json", DATA / "pt-to-bz2.json")[0] == 1


def test_fibprod(capsys, tmp_path):
    code, text, _ = run(capsys, "fibprod", DATA / "pt-to-bz2.json", DATA / "pt-to-bz2.json", "-o", tmp_path)
    assert code == 0
    E = D.load_stack(tmp_path / "E.json")
    eta = D.load_morphism(tmp_path / "eta.json")
    assert len(E) == 2 and eta.source == E
    code, text, _ = run(capsys, "fibprod", DATA / "pt-to-bz2.json", DATA / "pt-to-bz2.json")
    assert set(json.loads(text)) == {"E", "eta", "theta"}
    assert run(capsys, "fibprod", DATA / "bz2-to-pt.json", DATA / "kp1-to-pt.json")[0] == 1


def test_json_envelope(capsys):
    code, text, _ = run(capsys, "--json", "chi", DATA / "bz2.json", "--weight", "inv-e")
    env = json.loads(text)
    assert code == 0 and env["command"] == "chi" and env["result"] == "1/2"
    assert env["inputs"]["weight"] == "inv-e"
    code, text, _ = run(capsys, "--json", "chi", DATA / "nope.json")
    env = json.loads(text)
    assert code == 2 and env["error"]["type"] == "DescriptorError"


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "chi")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "chi", DATA / "kp2.json", "--weight", "zz")[0] == 2
    assert run(capsys, "chi", DATA / "kp2.json", "--bogus")[0] == 2
    assert run(capsys, "push", DATA / "pt-to-bz2.json", DATA / "pt-one.json", "--mode", "w")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("[1,")
    assert run(capsys, "chi", bad)[0] == 2
    # a Torus stabilizer makes inv-e undefined: domain error
    tor = tmp_path / "bt.json"
    tor.write_text(json.dumps({"strata": [{"id": "pt", "chi": 1, "stabilizer": {"kind": "torus", "rank": 1}}]}))
    code, _, err = run(capsys, "chi", tor, "--weight", "inv-e")
    assert code == 1 and "UndefinedWeight" in err
    # o of GL is rejected: domain error
    gl = tmp_path / "gl.json"
    gl.write_text(json.dumps({"strata": [{"id": "pt", "chi": 1, "stabilizer": {"kind": "gl", "n": 2}}]}))
    assert run(capsys, "chi", gl, "--weight", "o")[0] == 1


def test_check(capsys, monkeypatch):
    code, text, _ = run(capsys, "check", "--suite", "dhvw", "--suite", "weights", "--seed", "3", "--cases", "5")
    assert code == 0
    assert text.splitlines() == ["seed 3", "PASS dhvw: 5/5 passed", text.splitlines()[2]]
    monkeypatch.setenv("EULERSTACK_SEED", "11")
    assert run(capsys, "check", "--suite", "lcf", "--cases", "2")[1].startswith("seed 11")
    monkeypatch.setenv("EULERSTACK_SEED", "eleven")
    assert run(capsys, "check", "--cases", "1")[0] == 2
    monkeypatch.delenv("EULERSTACK_SEED")
    assert run(capsys, "check", "--suite", "nope")[0] == 2
    assert run(capsys, "check", "--cases", "-1")[0] == 2


def test_check_json(capsys):
    code, text, _ = run(capsys, "--json", "check", "--suite", "all", "--seed", "1", "--cases", "2")
    env = json.loads(text)
    assert code == 0 and env["result"]["ok"]
    assert len(env["result"]["suites"]) == 9


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "eulerstack", "chi", str(DATA / "kp2.json")], capture_output=True, text=True
    )
    assert out.returncode == 0 and out.stdout == "3\n"
