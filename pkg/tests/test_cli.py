from __future__ import annotations

import json

import pytest

from rpolab.cli import main
from rpolab.rpo import Certificate, validate_certificate
from rpolab.trsfile import load_trs


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_ackermann(capsys, corpus):
    code, out, _ = run(capsys, "check", corpus / "ackermann.trs")
    assert code == 0 and out.startswith("YES")
    assert "ack=lex" in out and "0 loop" in out


def test_check_json_certificate_revalidates(capsys, corpus):
    code, out, _ = run(capsys, "check", corpus / "ackermann.trs", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "YES" and doc["certificate_valid"]
    tf = load_trs(corpus / "ackermann.trs")
    assert validate_certificate(Certificate.from_json(doc["certificate"]), tf.signature, tf.trs.pairs())
    code2, out2, _ = run(capsys, "check", corpus / "ackermann.trs", "--json")
    assert out == out2


def test_check_statuses(capsys, corpus):
    assert run(capsys, "check", corpus / "swap.trs", "--status", "lex")[0] == 2
    assert run(capsys, "check", corpus / "swap.trs", "--status", "mul")[0] == 0
    assert run(capsys, "check", corpus / "ackermann.trs", "--status", "mul")[0] == 2


@pytest.mark.parametrize("name,code", [("selfembed", 2), ("loop", 2), ("malformed", 1), ("mult", 0), ("add", 0)])
def test_check_exit_codes(capsys, corpus, name, code):
    assert run(capsys, "check", corpus / f"{name}.trs")[0] == code


def test_check_malformed_has_position(capsys, corpus):
    _, _, err = run(capsys, "check", corpus / "malformed.trs")
    assert "line 3, column 7" in err


def test_check_missing_file(capsys, tmp_path):
    assert run(capsys, "check", tmp_path / "nope.trs")[0] == 1


def test_check_budget(capsys, corpus, monkeypatch):
    assert run(capsys, "check", corpus / "ackermann.trs", "--budget", "1")[0] == 3
    monkeypatch.setenv("RPOLAB_SEARCH_BUDGET", "1")
    assert run(capsys, "check", corpus / "ackermann.trs")[0] == 3


def test_trace_ackermann(capsys, corpus):
    code, out, _ = run(capsys, "trace", corpus / "ackermann.trs", "ack(s(0),s(0))")
    assert code == 0
    assert out.strip().splitlines()[-1] == "normal form s(s(s(0))) after 4 steps"
    assert "rule 2" in out and "position [0]" in out


def test_trace_normal_form(capsys, corpus):
    code, out, _ = run(capsys, "trace", corpus / "ackermann.trs", "s(0)", "--json")
    doc = json.loads(out)
    assert doc["steps"] == 0 and doc["outcome"] == "Normal"


def test_trace_selfembed_fuel(capsys, corpus):
    code, out, _ = run(capsys, "trace", corpus / "selfembed.trs", "f(0)", "--fuel", "5")
    assert code == 0 and "FuelExhausted after 5 steps" in out


def test_trace_bad_term(capsys, corpus):
    assert run(capsys, "trace", corpus / "ackermann.trs", "ack(0)")[0] == 1


@pytest.mark.parametrize("check", ["stp", "gl", "mbs", "bi", "lemma34", "lemma44"])
def test_lab_random(capsys, check):
    code, out, _ = run(capsys, "lab", check, "--random", "--seed", "7", "--count", "50")
    assert code == 0 and "50/50 pass" in out


def test_lab_stp_thousand(capsys):
    code, out, _ = run(capsys, "lab", "stp", "--random", "--seed", "7", "--count", "1000")
    assert code == 0 and "1000/1000 pass" in out


def test_lab_json_is_stable(capsys):
    a = run(capsys, "lab", "gl", "--random", "--seed", "3", "--count", "40", "--json")[1]
    b = run(capsys, "lab", "gl", "--random", "--seed", "3", "--count", "40", "--json")[1]
    assert a == b and json.loads(a)["ok"]


def test_lab_mbs_instance(capsys, corpus):
    code, out, _ = run(capsys, "lab", "mbs", corpus / "cycle.json")
    assert code == 0 and out.startswith("MinimalBad a, b") and "verified exhaustively: True" in out


@pytest.mark.parametrize("check", ["bi", "lemma34", "lemma44"])
def test_lab_instance_checks(capsys, corpus, check):
    assert run(capsys, "lab", check, corpus / "cycle.json")[0] == 0


def test_lab_invalid_instances(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"carrier": ["a", "b"], "succ": [], "sub": [["a", "b"], ["b", "a"]]}))
    assert run(capsys, "lab", "mbs", bad)[0] == 1
    nosucc0 = tmp_path / "plain.json"
    nosucc0.write_text(json.dumps({"carrier": ["a"], "succ": [], "sub": []}))
    assert run(capsys, "lab", "stp", nosucc0)[0] == 1
    assert run(capsys, "lab", "stp")[0] == 1


def test_export_then_gl(capsys, corpus, tmp_path):
    target = tmp_path / "ack2.json"
    assert run(capsys, "export", corpus / "ackermann.trs", "--depth", "2", "-o", target)[0] == 0
    doc = json.loads(target.read_text())
    assert len(doc["carrier"]) == 13 and doc["gg"] == doc["succ0"]
    code, out, _ = run(capsys, "lab", "gl", target)
    assert code == 0 and out.strip().endswith("pass")
    assert run(capsys, "lab", "stp", target)[0] == 0


def test_export_unorientable(capsys, corpus):
    assert run(capsys, "export", corpus / "selfembed.trs")[0] == 2


def test_phi_scan(capsys):
    code, out, _ = run(capsys, "phi", "--realizer", "scan", "--alpha", "5,4,3;7")
    assert code == 0 and out.startswith("Index 2") and "holds" in out


def test_phi_constant(capsys):
    code, out, _ = run(capsys, "phi", "--alpha", ";0", "--json")
    assert code == 0 and json.loads(out)["index"] == 0


def test_phi_budget(capsys, monkeypatch):
    code, out, _ = run(capsys, "phi", "--realizer", "consult", "--alpha", "5,4,3;7", "--budget", "1")
    assert code == 4 and "partial trace" in out
    monkeypatch.setenv("RPOLAB_PHI_BUDGET", "1")
    assert run(capsys, "phi", "--realizer", "consult", "--alpha", "5,4,3;7")[0] == 4


def test_phi_bad_alpha(capsys):
    assert run(capsys, "phi", "--alpha", "5,4")[0] == 1
