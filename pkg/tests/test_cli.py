import json
import os
import subprocess
import sys
from argparse import ArgumentTypeError
from pathlib import Path

import pytest

from milnor_descent.cli import main, parse_window
from milnor_descent.scenario import ScenarioError, load_scenario, parse_scenario, shipped_scenarios

ROOT = Path(__file__).resolve().parents[1]
SHIPPED = ROOT / "src" / "milnor_descent" / "scenarios"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    assert set(out.split()) == set(shipped_scenarios()) >= {"sq1_descent", "p1", "empty"}


def test_parse_window():
    assert parse_window("-3..3") == (-3, 3)
    with pytest.raises(ArgumentTypeError):
        parse_window("3..-3")
    with pytest.raises(ArgumentTypeError):
        parse_window("3")


def test_bad_json_has_line(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{\n "version": 1,\n "name": \n}\n')
    code, _, err = run(capsys, "validate", "--scenario", str(p))
    assert code == 2
    assert f"{p}:4:" in err


def test_unknown_check_has_path(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"version": 1, "name": "b", "square": {"fixture": "SQ1"},
                             "plan": [{"check": "bogus"}]}))
    code, _, err = run(capsys, "run", "--scenario", str(p))
    assert code == 2
    assert "plan.0.check" in err and "bogus" in err


def test_scenario_errors_direct():
    with pytest.raises(ScenarioError) as e:
        parse_scenario('{"version": 2, "name": "x"}', "s.json")
    assert "version" in str(e.value)
    with pytest.raises(ScenarioError):
        parse_scenario('{"version": 1, "name": "x", "square": {"fixture": "SQ9"}}', "s.json")
    with pytest.raises(ScenarioError):
        parse_scenario('{"version": 1, "name": "x", "square": {"fixture": "SQ1"},'
                       ' "plan": [{"check": "cohom", "objects": ["nope"]}]}', "s.json")


def test_unknown_scenario_name(capsys):
    code, _, err = run(capsys, "validate", "--scenario", "no_such_scenario")
    assert code == 2
    assert "sq1_descent" in err


def test_exit_codes(capsys):
    assert run(capsys, "validate", "--scenario", "sq1_descent")[0] == 0
    code, out, _ = run(capsys, "validate", "--scenario", "perturbed")
    assert code == 1 and "[FAIL] curved-dga-A" in out
    code, out, _ = run(capsys, "run", "--scenario", "empty", "--format", "json")
    assert code == 0 and json.loads(out)["checks"] == []


def test_reports_are_byte_identical(capsys):
    a = run(capsys, "run", "--scenario", "sq1_descent", "--seed", "3", "--format", "json")[1]
    b = run(capsys, "run", "--scenario", "sq1_descent", "--seed", "3", "--format", "json")[1]
    assert a == b
    rep = json.loads(a)
    assert rep["ok"] and rep["seed"] == 3
    assert rep["header"]["sign-convention"]
    names = [c["name"] for c in rep["checks"]]
    assert "theorem-main-fully-faithful" in names
    assert all("elapsed_s" not in c for c in rep["checks"])


def test_timings_flag(capsys):
    out = run(capsys, "validate", "--scenario", "sq1_descent", "--format", "json", "--timings")[1]
    assert all("elapsed_s" in c for c in json.loads(out)["checks"])


def test_output_file(tmp_path, capsys):
    p = tmp_path / "r.txt"
    code, out, _ = run(capsys, "restrict", "--scenario", "nodal", "-o", str(p))
    assert code == 0 and out == ""
    text = p.read_text()
    assert text.startswith("scenario: nodal") and "summary:" in text


def test_p1_command(capsys):
    code, out, _ = run(capsys, "p1", "--j1", "2", "--j2", "0", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    hits = [c for c in rep["checks"] if c["name"].startswith("p1-2-0-")]
    assert {c["name"] for c in hits} == {"p1-2-0-N4", "p1-2-0-N6"}
    for c in hits:
        assert c["details"]["dims"] == {"H0": 0, "H1": 1}
        assert c["details"]["H1_generators"] == [-1]


def test_p1_truncation_too_small(capsys):
    code, _, err = run(capsys, "p1", "--j1", "3", "--j2", "0", "--N", "2")
    assert code == 2 and "N >= 4" in err


def test_p1_scenario(capsys):
    assert run(capsys, "p1", "--scenario", "p1")[0] == 0


def test_window_flag(capsys):
    out = run(capsys, "verify-descent", "--scenario", "sq1_descent", "--window=-1..1",
              "--format", "json")[1]
    c = [c for c in json.loads(out)["checks"] if c["name"] == "theorem-main-fully-faithful"][0]
    assert c["verdict"] == "pass" and c["details"]["window"] == [-1, 1]


def test_load_by_path_matches_name():
    a = load_scenario("nodal")
    b = load_scenario(str(SHIPPED / "nodal.json"))
    assert a.object_names() == b.object_names()


def test_shipped_files_are_regenerated_exactly(tmp_path):
    subprocess.run([sys.executable, str(ROOT / "tools" / "make_scenarios.py"), str(tmp_path)],
                   check=True, cwd=ROOT)
    for f in SHIPPED.glob("*.json"):
        assert (tmp_path / f.name).read_text() == f.read_text(), f.name


def test_module_entry_point():
    env = dict(os.environ)
    r = subprocess.run([sys.executable, "-m", "milnor_descent", "validate", "--scenario", "empty"],
                       capture_output=True, text=True, env=env)
    assert r.returncode == 0 and "summary: 0 passed, 0 failed" in r.stdout
