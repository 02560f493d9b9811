import json
import subprocess
import sys

import pytest

from lfiswap.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--format", "json", *argv)
    return code, json.loads(out)


@pytest.fixture
def twist_model(tmp_path):
    path = tmp_path / "twist.json"
    path.write_text(json.dumps({
        "semantics": "twist", "algebra": {"type": "powerset", "atoms": 1},
        "domain": ["a", "b"], "constants": {"c": "a"},
        "predicates": {"P": {"a": "1", "b": "1/2"}}, "equality": "standard-mid"}))
    return str(path)


@pytest.fixture
def swap_model(tmp_path):
    path = tmp_path / "swap.json"
    path.write_text(json.dumps({
        "semantics": "swap", "domain": ["a"], "constants": {"c": "a"},
        "predicates": {"P": {"a": "T"}}}))
    return str(path)


def test_parse(capsys):
    code, out, _ = run(capsys, "parse", "forall x. P(x) -> Q(c)", "--const", "c")
    assert code == 0 and out.startswith("forall x.")


def test_tables_m5(capsys):
    code, out, _ = run(capsys, "tables", "m5")
    assert code == 0
    for name in ("T", "t", "t0", "F", "f0", "ND"):
        assert name in out
    code, data = run_json(capsys, "tables", "m5")
    assert data["values"] == ["f0", "F", "t0", "T", "t"]
    assert sorted(data["designated"]) == ["T", "t", "t0"]
    assert data["tables"]["neg"]["T"] == ["f0", "F"]


def test_tables_lfi1(capsys):
    code, data = run_json(capsys, "tables", "lfi1")
    assert code == 0 and data["tables"]["cons"]["½"] == "0"
    assert data["tables"]["imp"]["0"] == {"1": "1", "½": "1", "0": "1"}


def test_check_valid(capsys):
    assert run(capsys, "check-valid", "--matrix", "m5", "p | ~p")[0] == 0
    code, out, _ = run(capsys, "check-valid", "~~p -> p")
    assert code == 1 and "countermodel" in out
    assert run(capsys, "check-valid", "--matrix", "swap:2", "p -> p")[0] == 0
    assert run(capsys, "check-valid", "--matrix", "twist:2", "~~p -> p")[0] == 0


def test_check_conseq_lfi1_countermodel(capsys):
    code, data = run_json(capsys, "check-conseq", "--matrix", "lfi1", "--premise", "p",
                          "--premise", "~p", "--goal", "q")
    assert code == 1
    assert data == {"holds": False, "countermodel": {"p": "½", "q": "0"}}
    code, out, _ = run(capsys, "check-conseq", "--matrix", "lfi1", "--premise", "p",
                       "--premise", "~p", "--goal", "q")
    assert "p  ->  ½" in out and "q  ->  0" in out


def test_check_conseq_m5(capsys):
    code, data = run_json(capsys, "check-conseq", "--premise", "*p", "--premise", "p",
                          "--premise", "~p", "--goal", "q")
    assert code == 0 and data == {"holds": True}
    code, data = run_json(capsys, "check-conseq", "--premise", "p", "--premise", "~p", "--goal", "q")
    assert code == 1 and data["countermodel"]["q"] in ("F", "f0")


def test_fo_eval_twist(capsys, twist_model):
    code, data = run_json(capsys, "fo-eval", "--model", twist_model, "--sentence", "forall x. P(x)")
    assert code == 0 and data["values"] == [{"assignment": {}, "value": "½", "designated": True}]
    code, data = run_json(capsys, "fo-eval", "--model", twist_model, "--sentence", "P(x)")
    assert [r["value"] for r in data["values"]] == ["1", "½"]


def test_fo_eval_swap(capsys, swap_model):
    code, data = run_json(capsys, "fo-eval", "--model", swap_model, "--sentence", "~P(c)")
    assert code == 0 and sorted(data["possible_values"]) == ["F", "f0"]


def test_fo_conseq(capsys, twist_model, swap_model):
    assert run(capsys, "fo-conseq", "--model", twist_model, "--goal", "(forall x. P(x)) -> P(c)")[0] == 0
    code, data = run_json(capsys, "fo-conseq", "--model", twist_model, "--goal", "*(c = c)")
    assert code == 1 and data["value"] == "0"
    code, data = run_json(capsys, "fo-conseq", "--model", swap_model,
                          "--goal", "~(forall x. P(x)) -> exists x. ~P(x)")
    assert code == 1 and "closure_countermodel" in data


def test_fo_conseq_cap(capsys, swap_model):
    code, _, err = run(capsys, "fo-conseq", "--model", swap_model, "--goal",
                       "forall x. exists y. P(x) & P(y)", "--cap", "2")
    assert code == 2 and "exceeds" in err


def test_search_models(capsys):
    code, data = run_json(capsys, "search-models", "--size", "1",
                          "--goal", "~(forall x. P(x)) -> exists x. ~P(x)")
    assert code == 1 and data["model"]["semantics"] == "swap"
    code, data = run_json(capsys, "search-models", "--semantics", "twist",
                          "--goal", "~(forall x. P(x)) -> exists x. ~P(x)")
    assert code == 0 and data["tried"] == 9


def test_prove_check(capsys, tmp_path):
    prem = tmp_path / "p.txt"
    prem.write_text("*P(c)\nP(c)\n~P(c)\n")
    proof = tmp_path / "proof.json"
    proof.write_text(json.dumps([
        {"formula": "*P(c) -> (P(c) -> (~P(c) -> Q(c)))", "by": "axiom:A11"},
        {"formula": "*P(c)", "by": "premise"},
        {"formula": "P(c) -> (~P(c) -> Q(c))", "by": "mp:2,1"},
        {"formula": "P(c)", "by": "premise"},
        {"formula": "~P(c) -> Q(c)", "by": "mp:4,3"},
        {"formula": "~P(c)", "by": "premise"},
        {"formula": "Q(c)", "by": "mp:6,5"}]))
    args = ["prove-check", "--logic", "qmbc", "--premises", str(prem), "--proof", str(proof),
            "--const", "c"]
    code, out, _ = run(capsys, *args)
    assert code == 0 and out.startswith("accepted")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps([{"formula": "(forall x. P(x)) -> forall y. P(y)", "by": "axiom:Ax14"}]))
    code, data = run_json(capsys, "prove-check", "--logic", "QLFI1o", "--proof", str(bad))
    assert code == 1 and data["error"] == "UnknownSchema" and data["step"] == 1


def test_axioms(capsys):
    code, data = run_json(capsys, "axioms", "QLFI1o")
    assert code == 0 and "Ax14" not in data["axioms"] and "forall-in" in data["rules"]
    code, out, _ = run(capsys, "axioms", "mbC")
    assert "11 axiom schemas" in out


def test_selftest(capsys):
    code, data = run_json(capsys, "selftest", "--instances", "20")
    assert code == 0 and data["passed"]


@pytest.mark.parametrize("argv", [
    ["check-valid", "p &"],
    ["check-valid", "--matrix", "bogus", "p"],
    ["fo-eval", "--model", "/nonexistent.json", "--sentence", "p"],
    ["axioms", "nope"],
    ["frobnicate"],
    ["check-conseq"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_format_flag_after_subcommand(capsys):
    code, out, _ = run(capsys, "check-valid", "p -> p", "--format", "json")
    assert json.loads(out) == {"holds": True}


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "lfiswap", "check-valid", "p | ~p"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "holds"


def test_exit_codes_stable(capsys):
    codes = {run(capsys, "check-valid", "~(p & ~p) -> *p")[0] for _ in range(3)}
    assert codes == {1}
