import json

import pytest

import relalg


def test_structure_round_trip():
    s = relalg.Structure(["1", "2"], {"f": [("1", "2")]})
    assert len(s) == 2
    assert s.relation("f") == [("1", "2")]
    assert relalg.Structure.from_json(s.to_json()) == s


def test_eval_and_parse():
    s = relalg.Structure(["1", "2"], {"R": [("1", "2")]})
    assert relalg.eval_term("~R", s) == [("2", "2")]
    assert relalg.parse_term("(f ; g) & id") == "f ; g & id"
    assert relalg.Term("f <+ g").uses_only("fwd")


def test_translations():
    assert relalg.compile_posex("exists z.(R(x,z) & S(z,y))") == "R ; S"
    assert relalg.term_to_fo3("f ; g") == "exists z. (f(x,z) & g(z,y))"
    path = relalg.Structure(["1", "2", "3"], {"R": [("1", "2"), ("2", "3")]})
    assert relalg.define_relation("exists z. (R(x,z) & R(z,y))", path) == [("1", "3")]


def test_checks():
    assert relalg.check("fp", "f & g", samples=50)["pass"]
    verdict = relalg.check("homsafe", "-f", samples=50)
    assert verdict["status"] == "fail"
    assert len(verdict["counterexample"]["structures"]) == 2


def test_constructions_and_games():
    assert len(relalg.build_cm_vee(2)) == 24
    report = relalg.verify_claim2(2, 3, "fa")
    assert report["pass"] and report["closure_size"] == 8
    loop = relalg.Structure(["1"], {"E": [("1", "1")]})
    plain = relalg.Structure(["1"], {"E": []})
    assert relalg.min_distinguishing_rank(loop, plain, 3) == 1
    assert not relalg.ef_equiv(loop, plain, 1)


def test_synthesis():
    term = relalg.synthesize("dom(f)", "forward", 1)
    assert relalg.Term(term).uses_only("fwd")


def test_cli_and_errors():
    code, out, _ = relalg.run_cli(["--report", "json", "run", "paper:fig2"])
    assert code == 0
    assert json.loads(out)["status"] == "pass"
    assert "paper:table1" in relalg.presets()
    with pytest.raises(relalg.Error):
        relalg.parse_term("f ;")
