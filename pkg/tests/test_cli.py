"""Command-line surface: output stability, exit codes."""

import json

import pytest

from cellmap import tables
from cellmap.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_chars_a1_json(capsys):
    code, out, _ = run(capsys, "chars", "A1", "--json")
    assert code == 0
    doc = json.loads(out)
    vals = sorted(tuple(r["values"]) for r in doc["rows"])
    assert vals == [(1, -1), (1, 1)]


def test_json_round_trip_stability(capsys):
    code, out1, _ = run(capsys, "orbits", "D4", "--json")
    assert code == 0
    # canonical form: parse + re-serialize is byte-identical
    doc = json.loads(out1)
    assert json.dumps(doc, sort_keys=True, indent=2,
                      ensure_ascii=True) + "\n" == out1
    _, out2, _ = run(capsys, "orbits", "D4", "--json")
    assert out1 == out2


def test_kl_example(capsys):
    code, out, _ = run(capsys, "kl", "A2", "--orbit", "2,1", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["class"] == "2,1"
    assert doc["report"]["delta"] == 1


def test_kl_seeded_determinism(capsys):
    code, out1, _ = run(capsys, "kl", "B2", "--orbit", "3,1,1", "--json",
                        "--seed", "7")
    assert code == 0
    _, out2, _ = run(capsys, "kl", "B2", "--orbit", "3,1,1", "--json",
                     "--seed", "7")
    assert out1 == out2


def test_jinduce(capsys):
    code, out, _ = run(capsys, "jinduce", "G2", "--levi", "0,2",
                       "--rep", "1,1,1", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["image"] == "phi_1_3b" and doc["b"] == 3


def test_verify_a1(capsys):
    code, out, _ = run(capsys, "verify", "A1", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["all_match"] is True and len(doc["rows"]) == 5


def test_predict_g2(capsys):
    code, out, _ = run(capsys, "predict", "G2", "--json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["rows"]) == 18
    assert all(r["match"] == "predicted-only" for r in doc["rows"])


def test_usage_errors(capsys):
    code, _, _ = run(capsys, "roots", "Z9")
    assert code == 1
    code, _, _ = run(capsys, "nonsense")
    assert code == 1
    code, _, _ = run(capsys, "kl", "A2")       # missing --orbit
    assert code == 1
    code, _, _ = run(capsys, "kl", "A2", "--orbit", "9,9")
    assert code == 1


def test_table_error_exit(tmp_path, capsys):
    bad = tmp_path / "kl_G2.tbl"
    text = tables.serialize("kl", "G2", [("0", "1A")], "tamper")
    bad.write_text(text.replace("1A", "3A"))
    code, _, err = run(capsys, "ingest", str(bad))
    assert code == 2
    assert "checksum" in err


def test_inconclusive_exit(capsys):
    # a starting truncation too small to certify any valuation exhausts
    # the retry budget
    code, _, err = run(capsys, "kl", "A2", "--orbit", "1,1,1",
                       "--trunc", "1")
    assert code == 4


def test_out_file(tmp_path, capsys):
    target = tmp_path / "roots.json"
    code, out, _ = run(capsys, "roots", "A2", "--json", "--out",
                       str(target))
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert doc["weyl_order"] == 6
