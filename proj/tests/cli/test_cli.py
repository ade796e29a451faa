import json
import os
import subprocess

import pytest

BIN = os.environ["RELALG_BIN"]


def run(*args, cwd=None):
    return subprocess.run([BIN, *args], capture_output=True, text=True, cwd=cwd)


def report(*args, cwd=None):
    r = run("--report", "json", *args, cwd=cwd)
    data = json.loads(r.stdout)
    assert data["schema"] == 1
    return r.returncode, data


@pytest.fixture
def files(tmp_path):
    (tmp_path / "fg.term").write_text("f ; g\n")
    (tmp_path / "union.term").write_text("f | g\n")
    (tmp_path / "dom.term").write_text("# oracle\ndom(f)\n")
    (tmp_path / "path.fo").write_text("exists z. (R(x,z) & R(z,y))\n")
    (tmp_path / "s.json").write_text(
        json.dumps({"domain": ["a", "b", "c"], "relations": {"f": [["a", "b"]], "g": [["b", "c"]]}})
    )
    (tmp_path / "path.json").write_text(
        json.dumps({"domain": ["1", "2", "3"], "relations": {"R": [["1", "2"], ["2", "3"]]}})
    )
    (tmp_path / "loop.json").write_text(json.dumps({"domain": ["1"], "relations": {"E": [["1", "1"]]}}))
    (tmp_path / "plain.json").write_text(json.dumps({"domain": ["1"], "relations": {"E": []}}))
    (tmp_path / "bad.json").write_text('{"domain": ["1"], "relations": {"f": [["1", "9"]]}}')
    return tmp_path


def test_eval(files):
    r = run("eval", "--term", "fg.term", "--structure", "s.json", cwd=files)
    assert r.returncode == 0
    assert "(a, c)" in r.stdout
    code, data = report("eval", "--formula", "path.fo", "--structure", "path.json", cwd=files)
    assert code == 0
    assert data["relation"] == [["1", "3"]]


def test_check_exit_codes(files):
    code, data = report("check", "fp", "--term", "fg.term", cwd=files)
    assert code == 0 and data["status"] == "pass-bounded"
    code, data = report("check", "fp", "--term", "union.term", cwd=files)
    assert code == 1 and data["status"] == "fail"
    assert data["counterexample"]["structures"]
    assert set(data["bounds"]) >= {"class", "max_size", "samples", "sample_max_size"}


def test_usage_and_io_errors(files):
    assert run("check", "bogus", "--term", "fg.term", cwd=files).returncode == 2
    assert run("eval", "--term", "missing.term", "--structure", "s.json", cwd=files).returncode == 2
    r = run("eval", "--term", "fg.term", "--structure", "bad.json", cwd=files)
    assert r.returncode == 2 and "(1, 9)" in r.stderr
    assert run("run", "paper:nope").returncode == 2
    assert run("frobnicate").returncode == 2


def test_determinism(files):
    def strip(data):
        data.pop("wall_time_ms")
        return data

    _, a = report("--seed", "5", "check", "homsafe", "--term", "union.term", cwd=files)
    _, b = report("--seed", "5", "check", "homsafe", "--term", "union.term", cwd=files)
    _, c = report("--seed", "5", "--jobs", "3", "check", "homsafe", "--term", "union.term", cwd=files)
    assert strip(a) == strip(b)
    b.pop("command")
    c.pop("command")
    assert b == strip(c)


def test_translate(files):
    r = run("translate", "posex-to-term", "--formula", "path.fo", cwd=files)
    assert r.returncode == 0 and "term: R ; R" in r.stdout
    r = run("translate", "term-to-fo3", "--term", "fg.term", cwd=files)
    assert r.stdout.startswith("exists z. (f(x,z) & g(z,y))")


def test_construct_and_claim2(files):
    r = run("--out", "c.json", "construct", "cmvee", "--m", "2", cwd=files)
    assert r.returncode == 0
    assert len(json.loads((files / "c.json").read_text())["domain"]) == 24
    r = run("verify", "claim2", "--m", "2", "--mprime", "3", "--basis", "fa")
    assert r.returncode == 0
    assert "closure = X (8 relations); separating term escapes" in r.stdout
    assert run("verify", "claim2", "--basis", "fa+converse").returncode == 1


def test_synth(files):
    code, data = report("synth", "forward", "--oracle-term", "dom.term", "--radius", "1", cwd=files)
    assert code == 0 and data["validation"]["pass"] and data["basis_ok"]
    (files / "ran.term").write_text("ran(f)\n")
    code, data = report("synth", "forward", "--oracle-term", "ran.term", "--radius", "1", cwd=files)
    assert code == 1 and "not m-bounded" in data["error"]


def test_games(files):
    code, data = report("ef", "min-rank", "--left", "loop.json", "--right", "plain.json", cwd=files)
    assert code == 0 and data["rank"] == 1
    r = run("ef", "--left", "loop.json", "--right", "plain.json", "--rank", "1", cwd=files)
    assert "distinguished" in r.stdout and "first-order moves only" in r.stdout


@pytest.mark.parametrize("preset", ["paper:separation", "paper:fig2", "paper:fv-lemma"])
def test_presets(preset):
    code, data = report("run", preset)
    assert code == 0 and data["status"] == "pass"
