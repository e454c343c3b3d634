import json
import subprocess
import sys

import pytest

from hopfsquare import examples, groups, manifest
from hopfsquare.cli import main


@pytest.fixture
def run(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)

    def _run(*argv):
        code = main(list(argv))
        out = capsys.readouterr()
        return code, out.out, out.err

    return _run


def broken_cm2(path):
    S3, C2 = groups.symmetric(3), groups.cyclic(2)
    g = groups.GroupCrossedModule(C2, S3, (0,) * 6, groups.trivial_action_table(C2, S3))
    manifest.save(examples.lift_group_xmod(g, validate=False), path)


def test_gen_and_check(run):
    assert run("gen", "hopf", "--algebra", "k_s3", "-o", "k_s3.json")[0] == 0
    code, out, _ = run("check", "hopf", "k_s3.json")
    assert code == 0 and "PASS" in out
    assert run("gen", "normal-pair", "--group", "V4", "-o", "np.json")[0] == 0
    assert run("check", "square", "np.json")[0] == 0


@pytest.mark.parametrize("argv", [
    ("unit", "--algebra", "k_c3"),
    ("discrete", "--xmod", "conj_a3_s3"),
    ("xmod-square", "--xmod", "c3_s3"),
    ("group-normal-pair", "--group", "v4", "--N", "(e,e),(a,e)", "--M", "(e,e),(e,b)"),
])
def test_gen_examples(run, argv):
    code, out, _ = run("gen", *argv, "-o", "x.json")
    assert code == 0 and "manifest" in out


def test_check_names_cm2_and_the_pair(run):
    broken_cm2("broken_cm2.json")
    code, out, _ = run("check", "xmod", "broken_cm2.json", "--report", "json")
    assert code == 1
    rep = json.loads(out)
    bad = [e for e in rep["entries"] if e["status"] == "fail"]
    assert [e["axiom"] for e in bad] == ["CM2"]
    assert len(bad[0]["counterexample"]["at"]) == 2
    assert "lhs" in bad[0]["counterexample"] and "rhs" in bad[0]["counterexample"]


def test_text_and_json_reports_agree(run):
    broken_cm2("b.json")
    _, text, _ = run("check", "xmod", "b.json")
    _, js, _ = run("check", "xmod", "b.json", "--report", "json")
    for e in json.loads(js)["entries"]:
        assert ("FAIL " if e["status"] == "fail" else "ok   ") + e["axiom"] in text


def test_convert_xmod_to_cat1(run):
    run("gen", "xmod", "--xmod", "conj_a3_s3", "-o", "cm.json")
    assert run("convert", "xmod", "cat1", "cm.json", "-o", "cat1.json")[0] == 0
    c = manifest.load("cat1.json")
    assert c.graph.A1.dim == 18
    assert run("check", "cat1", "cat1.json")[0] == 0


def test_convert_square_cat2_and_back(run):
    run("gen", "unit", "--algebra", "k_c2", "-o", "u.json")
    assert run("convert", "square", "cat2", "u.json", "-o", "c.json")[0] == 0
    assert run("convert", "cat2", "square", "c.json", "-o", "u2.json")[0] == 0
    assert run("convert", "square", "cat2", "u2.json", "-o", "c2.json")[0] == 0
    assert run("check", "cat2", "c2.json")[0] == 0
    assert manifest.load("c2.json").H.dim == 16


def test_convert_trivial_square_to_trivial_cat2(run):
    run("gen", "trivial", "-o", "t.json")
    assert run("convert", "square", "cat2", "t.json", "-o", "c.json")[0] == 0
    assert manifest.load("c.json").H.dim == 1


def test_convert_group_square_both_ways(run):
    run("gen", "group-normal-pair", "--group", "v4", "--N", "(e,e),(a,e)", "--M", "(e,e),(e,b)", "-o", "g.json")
    assert run("convert", "group_square", "square", "g.json", "-o", "s.json")[0] == 0
    assert run("convert", "square", "group_square", "s.json", "-o", "g2.json")[0] == 0
    assert open("g.json").read() == open("g2.json").read()


@pytest.mark.parametrize("kind, gen", [
    ("xmod", ("xmod", "--xmod", "conj_a3_s3")),
    ("square", ("unit", "--algebra", "k_c2")),
    ("square", ("xmod-square", "--xmod", "c3_s3")),
])
def test_roundtrip(run, kind, gen):
    run("gen", *gen, "-o", "in.json")
    code, out, _ = run("roundtrip", kind, "in.json")
    assert code == 0 and "PASS" in out


def test_roundtrip_two_action(run, tmp_path):
    sq = examples.gen_example("normal-pair", group="v4")
    from hopfsquare.square import square_to_2action
    manifest.save(square_to_2action(sq), "a.json")
    assert run("roundtrip", "2action", "a.json")[0] == 0


def test_byte_identical_outputs(run):
    run("gen", "normal-pair", "--group", "V4", "-o", "a.json")
    run("gen", "normal-pair", "--group", "V4", "-o", "b.json")
    run("convert", "square", "cat2", "a.json", "-o", "ca.json")
    run("convert", "square", "cat2", "b.json", "-o", "cb.json")
    assert open("a.json").read() == open("b.json").read()
    assert open("ca.json").read() == open("cb.json").read()


# -- exit code contract under fault injection ---------------------------------------


def test_exit_2_on_missing_file(run):
    code, _, err = run("check", "hopf", "missing.json")
    assert code == 2 and "missing.json" in err


def test_exit_2_on_bad_json(run):
    open("bad.json", "w").write("{")
    assert run("check", "hopf", "bad.json")[0] == 2


def test_exit_2_on_unresolved_reference(run):
    run("gen", "xmod", "--xmod", "c2_c2", "-o", "cm.json")
    doc = json.load(open("cm.json"))
    doc["payload"]["B"] = "#missing"
    json.dump(doc, open("cm.json", "w"))
    code, _, err = run("check", "xmod", "cm.json")
    assert code == 2 and "payload.B" in err


def test_exit_2_on_kind_mismatch(run):
    run("gen", "hopf", "--algebra", "c2", "-o", "h.json")
    assert run("check", "xmod", "h.json")[0] == 2


def test_exit_2_on_field_mismatch(run):
    run("gen", "hopf", "--algebra", "c2", "-o", "h.json")
    assert run("check", "hopf", "h.json", "--field", "fp:3")[0] == 2
    assert run("check", "hopf", "h.json", "--field", "q")[0] == 0


def test_exit_2_on_budget(run):
    run("gen", "xmod", "--xmod", "conj_a3_s3", "-o", "cm.json")
    code, _, err = run("convert", "xmod", "cat1", "cm.json", "-o", "c.json", "--budget", "5")
    assert code == 2 and "budget" in err


def test_exit_2_on_usage_errors(run):
    assert run("convert", "hopf", "cat2", "x.json", "-o", "y.json")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("gen", "nonsense", "-o", "x.json")[0] == 2


def test_exit_1_on_axiom_failure_during_conversion(run):
    g = groups.relabel_h(groups.normal_pair_square(groups.symmetric(3), [0, 4, 5], list(range(6))),
                         lambda m, n: 0)
    manifest.save(examples.lift_group_square(g, validate=False), "bad.json")
    assert run("check", "square", "bad.json")[0] == 1
    code, _, err = run("convert", "square", "cat2", "bad.json", "-o", "c.json")
    assert code == 1 and err


def test_exit_1_on_invalid_normal_pair(run):
    code, _, err = run("gen", "normal-pair", "--group", "s3", "--N", "(),(12)", "--M", "(),(12)", "-o", "x.json")
    assert code == 1 and "not normal" in err


def test_flags_are_accepted(run):
    run("gen", "hopf", "--algebra", "s3", "-o", "h.json")
    code, out, _ = run("check", "hopf", "h.json", "--paranoid", "off", "--sample-seed", "7", "--report", "json")
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_console_entry_point(tmp_path):
    out = tmp_path / "h.json"
    res = subprocess.run([sys.executable, "-m", "hopfsquare", "gen", "hopf", "--algebra", "c2", "-o", str(out)],
                         capture_output=True, text=True)
    assert res.returncode == 0 and out.exists()
