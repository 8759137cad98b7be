from __future__ import annotations

import json
import subprocess
import sys
from io import StringIO

import jsonschema
import pytest

from clonekit.cli import run, schema_for
from clonekit.clones import all_named, base_of

MODEL = json.dumps({"worlds": ["0", "1"], "rel": [["0", "1"]], "val": {"1": ["p"]}, "point": "0"})


def call(*argv):
    buf = StringIO()
    code = run(list(argv), out=buf)
    text = buf.getvalue()
    return code, (json.loads(text) if text.strip().startswith("{") else text)


def ok(command, *argv):
    code, data = call(*argv)
    assert code == 0, data
    jsonschema.validate(data, schema_for(command))
    return data


def test_clone_commands():
    assert ok("clone id", "clone", "id", "--basis", "nimp")["clone"]["family"] == "S1"
    assert ok("clone id", "clone", "id", "--basis", "")["clone"]["family"] == "I2"
    assert ok("clone member", "clone", "member", "--fn", "or", "--basis", "nimp,top")["member"] is True
    assert ok("clone leq", "clone", "leq", "--left", "and", "--right", "nimp,top")["leq"] is True
    data = ok("clone lattice-dot", "clone", "lattice-dot", "--json", "--degree-cap", "2")
    assert "BF -> R0" in data["dot"] or '"BF" -> "R0"' in data["dot"]
    code, dot = call("clone", "lattice-dot", "--degree-cap", "2")
    assert code == 0 and dot.startswith("digraph")
    code, again = call("clone", "lattice-dot", "--degree-cap", "2")
    assert dot == again


def test_classify():
    data = ok("classify", "classify", "--problem", "SAT", "--basis", "and,or,top,bot")
    assert data["class"] == "P"
    data = ok("classify", "classify", "--problem", "MODAL_CONSISTENCY", "--modal", "dia,box",
              "--basis", "and", "--logic", "K")
    assert (data["class"], data["completeness"]) == ("coNP", "complete")


def test_classify_batch(tmp_path):
    f = tmp_path / "batch.json"
    f.write_text(json.dumps([{"problem": "SAT", "basis": "nimp"},
                             {"problem": "TBOX_SAT", "modal": "dia", "basis": "or,top,bot",
                              "logic": "K_omega"}]))
    data = ok("classify", "classify", "--batch", str(f))
    assert [r["class"] for r in data["results"]] == ["NP", "EXPTIME"]


def test_formula_commands():
    data = ok("sat", "sat", "--formula", "maj(p,q,~r)", "--basis", "maj,not")
    assert data["status"] == "Satisfiable" and data["method"] == "self-dual"
    assert ok("count", "count", "--formula", "p | q", "--basis", "or", "--props", "p,q,r")["count"] == 6
    assert ok("express", "express", "--formula", "~(~p & ~q)", "--basis", "or")["expressible"] is True
    assert ok("measure", "measure", "--formula", "p & p", "--basis", "and") == {"tree": 3, "dag": 2}
    data = ok("measure", "measure", "--modal", "--formula", "dia p & dia ~p", "--basis", "and,not")
    assert data["tree"] == 6


def test_teach_round_trip(tmp_path):
    data = ok("teach make", "teach", "make", "--formula", "p & q", "--basis", "and")
    assert data["size"] == 3
    f = tmp_path / "ex.json"
    f.write_text(json.dumps(data["examples"]))
    v = ok("teach verify", "teach", "verify", "--formula", "p & q", "--basis", "and", "--examples", str(f))
    assert v["status"] == "Unique"

    data = ok("teach make", "teach", "make", "--modal", "--formula", "dia p")
    f.write_text(json.dumps(data["examples"]))
    v = ok("teach verify", "teach", "verify", "--modal", "--formula", "dia p", "--examples", str(f),
           "--bound", "3")
    assert v["status"] == "UniqueUpToBound"


def test_learn(tmp_path):
    f = tmp_path / "oracle.json"
    f.write_text(json.dumps({"prop": ["p", "q", "r"], "table": [0, 0, 0, 1, 0, 0, 0, 1]}))
    data = ok("learn", "learn", "--basis", "and", "--oracle-file", str(f))
    assert data["formula"] == "and(p,q)" and data["queries"] == 4
    f.write_text(json.dumps({"prop": ["p", "q"], "table": "2:9"}))
    data = ok("learn", "learn", "--basis", "xor,top", "--oracle-file", str(f))
    assert data["c0"] == 1 and data["coefficients"] == ["p", "q"]


def test_reduce():
    data = ok("reduce make", "reduce", "make", "--kind", "aimp", "--formula", "p -> q", "--basis", "and,imp")
    assert data["image"] == "aimp(w,w,aimp(w,p,q))"
    assert ok("reduce verify", "reduce", "verify", "--kind", "oxor", "--n", "2")["status"] == "pass"
    data = ok("reduce verify", "reduce", "verify", "--kind", "modal_diamond", "--n", "2", "--bound", "2",
              "--mutate")
    assert data["status"] == "fail" and "counterexample" in data


def test_modal_commands(tmp_path):
    assert ok("modal mc", "modal", "mc", "--model", MODEL, "--formula", "dia p")["value"] == 1
    f = tmp_path / "m.json"
    f.write_text(MODEL)
    assert ok("modal mc", "modal", "mc", "--model", str(f), "--formula", "box p", "--world", "1")["value"] == 1
    data = ok("modal clos", "modal", "clos", "--logic", "GL", "--modal", "dia,box", "--clone", "V2")
    assert [c["family"] for c in data["interval"]] == ["V1", "V"] and data["notes"]
    assert ok("modal clos", "modal", "clos", "--logic", "K", "--modal", "dia", "--clone", "V2")["exact"]["family"] == "V2"
    assert ok("modal leq", "modal", "leq", "--modal", "dia", "--left", "and", "--right", "and,or")["leq"] is True
    assert ok("modal complete", "modal", "complete", "--modal", "dia", "--basis", "and,not")["complete"] == "Yes"


@pytest.mark.parametrize("argv,code", [
    (["clone", "id", "--basis", "bogus"], 1),
    (["sat", "--formula", "p &", "--basis", "and"], 1),
    (["classify", "--problem", "NOPE", "--basis", "and"], 1),
    (["modal", "clos", "--logic", "K45", "--modal", "dia", "--clone", "V2"], 1),
    (["modal", "mc", "--model", "/nonexistent.json", "--formula", "p"], 1),
    (["modal", "mc", "--model", "{broken", "--formula", "p"], 1),
    (["learn", "--basis", "and,or", "--oracle-file", "/nonexistent.json"], 1),
    (["reduce", "verify", "--kind", "aimp", "--mutate"], 2),
    (["frobnicate"], 2),
    (["clone", "id"], 2),
])
def test_exit_codes(argv, code, capsys):
    got, data = call(*argv)
    assert got == code
    if code == 1:
        jsonschema.validate(data, schema_for("error"))
        assert data["error"]["code"]


def test_round_trip_base_of_via_cli():
    for c in all_named(3):
        text = ",".join(f"{f.arity}:{f.table:x}" for f in base_of(c))
        data = ok("clone id", "clone", "id", "--basis", text)
        assert data["clone"] == c.to_json()


def test_pretty_and_console_script():
    code, text = call("clone", "id", "--basis", "and", "--pretty")
    assert code == 0 and "family" in text and not text.startswith("{")
    proc = subprocess.run([sys.executable, "-m", "clonekit.cli", "clone", "id", "--basis", "xor"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["clone"]["family"] == "L0"
