from __future__ import annotations

import json
import subprocess
import sys

import pytest

from systemt import cli
from systemt.parser import parse_term
from systemt.syntax import numeral_term


def run_json(argv, capsys):
    res, code = cli.run([*argv, "--json"])
    doc = json.loads(capsys.readouterr().out)
    assert doc == res.to_json()
    return doc, code


def test_normalize_golden(capsys, golden):
    doc, code = run_json(["normalize", "-e", "Add #2 #3"], capsys)
    assert code == 0
    doc["metrics"].pop("wall_time")
    assert doc == json.loads((golden / "cli_normalize_add.json").read_text())


def test_normalize_output_reparses(capsys):
    doc, code = run_json(["normalize", "-e", "\\x:N. Add #2 x"], capsys)
    assert code == 0
    assert doc["payload"]["type"] == "N -> N"
    # the printed normal form parses back and is already normal
    parse_term(doc["payload"]["term"])
    doc2, _ = run_json(["normalize", "-e", doc["payload"]["term"]], capsys)
    assert doc2["payload"]["term"] == doc["payload"]["term"]


def test_no_jets_same_answer(capsys):
    a, _ = run_json(["normalize", "-e", "Mult #3 #4"], capsys)
    b, _ = run_json(["normalize", "-e", "Mult #3 #4", "--no-jets"], capsys)
    assert a["payload"] == b["payload"] == {"term": "#12", "type": "N"}
    assert b["metrics"]["steps"] > a["metrics"]["steps"]


def test_combinator_by_name(capsys):
    doc, code = run_json(["check", "--combinator", "Add"], capsys)
    assert code == 0 and doc["payload"] == {"type": "N -> N -> N"}
    doc, code = run_json(["eq", "--combinator", "Pred", "-e", "R[N] #0 (\\a:N. \\b:N. b)"], capsys)
    assert code == 0 and doc["payload"]["equal"] is True
    _, code = run_json(["check", "--combinator", "Nope"], capsys)
    assert code == 2


def test_check_and_eq(capsys):
    doc, code = run_json(["check", "-e", "\\f:N -> N. f"], capsys)
    assert code == 0 and doc["payload"] == {"type": "(N -> N) -> N -> N"}
    doc, code = run_json(["eq", "-e", "Add #1 #2", "-e", "S (S (S #0))"], capsys)
    assert code == 0 and doc["payload"]["equal"] is True
    doc, _ = run_json(["eq", "-e", "\\x:N. x", "-e", "\\x:N. #0"], capsys)
    assert doc["payload"]["equal"] is False


def test_encode(capsys):
    doc, code = run_json(["encode", "-e", "\\x:(N -> N) -> N. x (\\y:N. y)"], capsys)
    assert code == 0
    assert doc["payload"] == {"code": "69821547521", "nested": "<5,<3,<<0,0>,<5,<0,2>>>>>"}


def test_enum_nf(capsys):
    doc, code = run_json(["enum-nf", "--type", "N -> N -> N", "--max-size", "3"], capsys)
    assert code == 0
    assert doc["payload"]["terms"] == [
        {"term": "\\x:N. \\y:N. x", "code": "175"},
        {"term": "\\x:N. \\y:N. y", "code": "280"},
    ]


def test_build_enumerator(capsys, tmp_path):
    out = tmp_path / "E.t"
    doc, code = run_json(["build-enumerator", "--type", "N -> N", "--emit", str(out)], capsys)
    assert code == 0
    assert doc["payload"]["subtypes"] == ["N -> N", "N"]
    assert parse_term(out.read_text())


def test_roundtrip_and_lemma(capsys):
    doc, code = run_json(["roundtrip", "--type", "N -> N"], capsys)
    assert code == 0 and doc["payload"]["all_pass"]
    assert [r["code"] for r in doc["payload"]["rows"]] == [9]
    doc, code = run_json(["lemma-a", "--type", "N -> N", "--max-i", "1", "--max-j", "1"], capsys)
    assert code == 0 and len(doc["payload"]["rows"]) == 4


def test_tree_code(capsys):
    doc, code = run_json(["tree-code", "-e", "\\x:N -> N -> N. \\y:N. x (x y y) y"], capsys)
    assert code == 0
    assert doc["payload"] == {"tree": "Node(Node(Leaf, Leaf), Leaf)", "numeral": 3, "object_numeral": 3}


def test_reduce_with_witness_file(capsys, tmp_path):
    wit = tmp_path / "id.t"
    wit.write_text("-- identity reduction of the tree type\n\\t:(N -> N -> N) -> N -> N. t\n")
    doc, code = run_json(["reduce", "--witness", str(wit), "-e", "\\x:N -> N -> N. \\y:N. x y (x y y)"], capsys)
    assert code == 0 and doc["payload"] == {"type": "(N -> N -> N) -> N -> N", "numeral": 2}
    doc, code = run_json(["reduce"], capsys)
    assert code == 0 and parse_term(doc["payload"]["term"])
    _, code = run_json(["reduce", "--type", "N -> N"], capsys)
    assert code == 2


def test_decode_v_code_zero(capsys):
    doc, code = run_json(["decode-v", "-e", "\\n:N. #0", "--input", "\\x:N -> N -> N. \\y:N. y"], capsys)
    assert code == 0
    assert doc["payload"]["output"] == "\\x:N -> N -> N. \\y:N. #0"


def test_encode_u_builds_term(capsys):
    doc, code = run_json(["encode-u", "-e", "\\t:(N -> N -> N) -> N -> N. t"], capsys)
    assert code == 0 and parse_term(doc["payload"]["term"])


@pytest.mark.parametrize(
    "argv,category",
    [
        (["normalize", "-e", "\\x:N. (("], "syntax"),
        (["check", "-e", "S (\\x:N. x)"], "type"),
        (["check", "-e", "Nope #1"], "unbound"),
        (["normalize", "-e", "Mult #40 #40", "--no-jets", "--budget-steps", "10"], "budget"),
        (["encode", "-e", "\\x:N. S x"], "precondition"),
        (["encode-u", "-e", "\\t:(N -> N -> N) -> N -> N. t", "--code", "5000000"], "guard"),
        (["normalize", "/nonexistent/file.t"], "io"),
    ],
)
def test_error_categories(argv, category, capsys):
    doc, code = run_json(argv, capsys)
    assert code == 1
    assert doc["status"] == "error" and doc["error"]["category"] == category


def test_usage_errors(capsys):
    _, code = cli.run(["normalize"])
    assert code == 2
    _, code = cli.run(["enum-nf"])
    assert code == 2
    with pytest.raises(SystemExit) as info:
        cli.run(["no-such-command"])
    assert info.value.code == 2
    capsys.readouterr()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "systemt", "normalize", "-e", "Add #1 #1"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "#2"
    assert parse_term(proc.stdout.splitlines()[0]) == numeral_term(2)
