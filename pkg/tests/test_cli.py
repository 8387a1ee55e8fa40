import json

import pytest
from click.testing import CliRunner

from ainfloops import cosimp as cs
from ainfloops.cli import main


@pytest.fixture
def run():
    runner = CliRunner()
    return lambda *args: runner.invoke(main, [str(a) for a in args])


def test_enumerate_trees(run, tmp_path):
    out = tmp_path / "t.json"
    dot = tmp_path / "t.dot"
    r = run("enumerate", "trees", 4, "--json", out, "--dot", dot)
    assert r.exit_code == 0
    assert len(r.output.splitlines()) == 11
    assert len(json.loads(out.read_text())) == 11
    assert dot.read_text().startswith("digraph")


def test_enumerate_cofacial(run):
    r = run("enumerate", "cofacial", 1, 0, 1)
    assert r.exit_code == 0
    assert all(line.startswith("(") for line in r.output.splitlines())
    assert run("enumerate", "cofacial", 1).exit_code == 2
    assert run("enumerate", "trees", 2, 3).exit_code == 2


def test_fvector(run):
    r = run("fvector", 5)
    assert r.exit_code == 0 and r.output.split() == ["14", "21", "9", "1"]
    assert run("fvector", 1).exit_code == 2


def test_verify_all_is_byte_stable(run, tmp_path):
    a = run("verify", "all", "--seed", 3, "--samples", 20)
    b = run("verify", "all", "--seed", 3, "--samples", 20)
    assert a.exit_code == 0 and a.output == b.output
    assert "cofacial  PASS" in a.output and "note:" in a.output
    out = tmp_path / "v.json"
    r = run("verify", "lenop", "--timing", "--json", out)
    assert "time=" in r.output
    assert json.loads(out.read_text())[0]["ok"] is True


def test_verify_rejects_unknown_suite(run):
    assert run("verify", "nope").exit_code == 2


def test_hochschild_builtin_and_file(run, tmp_path):
    r = run("hochschild", "dual", "-N", 3)
    assert r.exit_code == 0
    data = json.loads(r.output)
    assert data["ranks"] == [2, 1, 1] and data["ms_ok"] and data["identities_ok"]
    path = tmp_path / "a.json"
    path.write_text(cs.algebra_to_json(cs.matrix_algebra(2)))
    r = run("hochschild", path, "-N", 2)
    assert r.exit_code == 0 and json.loads(r.output)["ranks"] == [1, 0]


def test_hochschild_bad_input(run, tmp_path):
    assert run("hochschild", "missing.json").exit_code == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 2, "unit": ["0", "1"], "mult": ["1 1 0 1"]}))
    assert run("hochschild", bad).exit_code == 2


def test_loop_demo(run, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"arity": 3, "loops": [{"winding": 1}, {"winding": 2}, {"winding": -1}]}))
    csv_path = tmp_path / "loop.csv"
    r = run("loop-demo", cfg, "--seed", 1, "--csv", csv_path)
    assert r.exit_code == 0, r.output
    assert "winding 2" in r.output
    assert csv_path.read_text().startswith("t,angle")


def test_loop_demo_collapses_outside_tube(run, tmp_path):
    cfg = tmp_path / "c.json"
    tube = {"c": 1.0, "Q": [1, 0, 0, 1], "k": 2, "eps": 0.05}
    cfg.write_text(json.dumps({"arity": 2, "tubes": [{**tube, "v": [1.2, 0.0]}, {**tube, "v": [0.0, 1.0]}]}))
    r = run("loop-demo", cfg)
    assert r.exit_code == 0 and "collapsed" in r.output


def test_loop_demo_bad_config(run, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"arity": 2, "loops": [{"winding": 1}]}))
    assert run("loop-demo", cfg).exit_code == 2


def test_counterexamples(run):
    r = run("counterexample", "delta_r")
    assert r.exit_code == 0
    vals = {line.rsplit(None, 1)[0].strip(): float(line.split()[-1]) for line in r.output.splitlines()}
    assert vals["unital suspension gap"] > 1e-6
    assert vals["gap at t = x_1"] < 1e-12
    assert vals["zero-padded suspension gap"] == 0
    r = run("counterexample", "d0_product")
    lines = r.output.splitlines()
    assert float(lines[0].split()[-1]) > 1e-6 and float(lines[1].split()[-1]) < 1e-12
