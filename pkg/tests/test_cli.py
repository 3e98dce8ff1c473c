import json
import time
from pathlib import Path

import pytest

from groupgames.cli import main
from groupgames.demos import DEMO_NAMES

GAMES = Path(__file__).resolve().parent.parent / "games"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_q1_interval_means(capsys):
    code, out, _ = run(capsys, "verify", GAMES / "rsp-q1.game", GAMES / "interval-means.profile")
    assert code == 0
    doc = json.loads(out)
    assert doc["certified"] is True
    assert doc["players"][0]["payoff"] == "1/2"


def test_verify_wald_stated_profile_fails(capsys):
    code, out, _ = run(capsys, "verify", "wald", GAMES / "wald-stated.profile")
    assert code == 1
    doc = json.loads(out)
    assert doc["players"][1]["gap"] == "1/2"
    assert doc["players"][0]["gap"] == "0/1"


def test_solve_and_payoff(capsys):
    code, out, _ = run(capsys, "solve", "wald")
    assert code == 0 and json.loads(out)["certified"] is True
    code, out, _ = run(capsys, "solve", "mp-z", "--tie-theta", "1/3", "--normalize")
    assert code == 0
    code, out, _ = run(capsys, "solve", "love-hate", "--players", "6")
    assert code == 0
    code, out, _ = run(capsys, "payoff", "rsp-q1", GAMES / "interval-means.profile")
    assert code == 0 and json.loads(out)["players"][0]["payoff"] == "1/2"
    assert run(capsys, "payoff", "rsp-finite")[0] == 2


def test_solve_with_nu_options(capsys):
    for extra in (["--nu", "uniform"], ["--nu", "single 2-1"], ["--flip-order"]):
        code, _, _ = run(capsys, "solve", "wald", *extra)
        assert code == 0


def test_gap(capsys):
    code, out, _ = run(capsys, "gap", "wald", GAMES / "wald-stated.profile", 2)
    assert code == 1
    assert json.loads(out)["gap"] == "1/2"
    code, out, _ = run(capsys, "gap", "wald", GAMES / "wald-stated.profile", 1)
    assert code == 0


def test_input_errors_exit_two(capsys):
    assert run(capsys, "verify", "nosuch")[0] == 2
    assert run(capsys, "verify", '{"group": "Z"}')[0] == 2
    code, _, err = run(capsys, "solve", "cones-z2")
    assert code == 2 and "error" in err
    assert run(capsys, "solve", "wald", "--nu", "single 3-1")[0] == 2
    assert run(capsys, "solve", "love-hate", "--players", "3")[0] == 2


def test_bad_nu_document_reports_line(capsys, tmp_path):
    doc = json.loads((GAMES / "wald.game").read_text())
    doc["nu"] = [{"order": [1, 2], "weight": "1/2"}, {"order": [2, 1], "weight": "1/3"}]
    path = tmp_path / "bad.game"
    path.write_text(json.dumps(doc, indent=2))
    code, _, err = run(capsys, "verify", path)
    assert code == 2 and "line" in err and "nu" in err


def test_demo_wald_content(capsys):
    code, out, _ = run(capsys, "demo", "wald")
    assert code == 0
    doc = json.loads(out)
    text = json.dumps(doc)
    assert "z_structure" in text
    assert doc["report"]["certified"] is True
    assert "stated_profile" in doc


@pytest.mark.parametrize("name", DEMO_NAMES)
def test_every_demo_is_fast(capsys, name):
    start = time.perf_counter()
    code, out, _ = run(capsys, "demo", name)
    assert time.perf_counter() - start < 10
    assert code == 0
    json.loads(out)


def test_export_round_trips(capsys):
    code, out, _ = run(capsys, "export", "mp-finite")
    assert code == 0
    assert out == (GAMES / "mp-finite.game").read_text()


def test_sweeps(capsys):
    code, out, _ = run(capsys, "sweep", "density", "--set", "2Z", "--ns", "1:3")
    assert code == 0
    assert out.splitlines() == [
        "n,window_size,value_num,value_den,value_decimal",
        "1,3,1,3,0.333333333333",
        "2,5,3,5,0.6",
        "3,7,3,7,0.428571428571",
    ]
    code, out, _ = run(capsys, "sweep", "defect", "--window", "z2-cone", "--ns", "200", "--g", "[1,1]")
    assert code == 0 and out.splitlines()[1].startswith("200,")
    code, out, _ = run(capsys, "sweep", "defect", "--window", "q1-fact", "--ns", "4", "--g", "1/8")
    assert code == 0 and out.splitlines()[1].split(",")[2] == "0"
    code, out, _ = run(capsys, "sweep", "banach", "--set", "N", "--ns", "5,10")
    assert code == 0 and all(line.split(",")[2:4] == ["1", "1"] for line in out.splitlines()[1:])
    assert run(capsys, "sweep", "density", "--window", "bogus")[0] == 2


def test_fubini(capsys):
    code, out, _ = run(capsys, "fubini", "fubini-remark")
    assert code == 0
    assert "1/1" in out or "0/1" in out
