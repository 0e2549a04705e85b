import json

import pytest

from acdlab.cli import EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, class_labels, main
from acdlab.chartab import character_table
from acdlab.corpus import write_perm


@pytest.fixture
def small_corpus(tmp_path):
    doc = {"version": 1, "groups": [
        {"name": "S3", "family": "symmetric", "params": [3]},
        {"name": "A4", "family": "alternating", "params": [4]},
        {"name": "Q8", "family": "dicyclic", "params": [2]},
    ]}
    path = tmp_path / "m.json"
    path.write_text(json.dumps(doc))
    return path


def test_table_text_and_json(capsys, tmp_path, fam):
    assert main(["table", "S3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("S3: order 6, 3 classes")
    assert "1a" in out and "2a" in out and "3a" in out
    path = tmp_path / "s4.perm"
    write_perm(fam("symmetric", 4), path)
    assert main(["table", str(path), "--format", "json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert [c["degree"] for c in doc["characters"]] == [1, 1, 2, 3, 3]
    assert main(["table", "--family", "frobenius", "--params", "5", "4", "--out", str(tmp_path / "f.txt")]) == EXIT_OK
    assert "order 20" in (tmp_path / "f.txt").read_text()


def test_class_labels(fam):
    assert class_labels(character_table(fam("alternating", 5))) == ["1a", "2a", "3a", "5a", "5b"]


def test_inv(capsys):
    assert main(["inv", "S3", "--p", "2"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "S3: order 6, 3 irreducible characters"
    assert len([ln for ln in lines if ln.startswith("X")]) == 3
    assert lines[-1] == "acd_{2} = 4/3"
    assert main(["inv", "alternating:5", "--format", "json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["requested"]["acd"] == "5/2" and doc["primes"]["2"]["acd"] == "5/2"
    assert main(["inv", "S3", "--variant", "strong"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[-1] == "acd_{2,+} = 4/3"


def test_verify(capsys, small_corpus, tmp_path):
    assert main(["verify", "--thm", "1.1", "--corpus", str(small_corpus)]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["theorem"] == "T1.1" and doc["counts"]["VIOLATION"] == 0
    out = tmp_path / "r.json"
    assert main(["verify", "--thm", "sharpness", "--thm", "ito:3", "--corpus", str(small_corpus),
                 "--out", str(out)]) == EXIT_OK
    doc = json.loads(out.read_text())
    assert [r["theorem"] for r in doc["results"]] == ["SHARPNESS", "ITO_MICHLER(3)"]
    assert main(["verify", "--thm", "1.2", "--corpus", str(small_corpus), "--format", "csv"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("theorem,corpus,group")


def test_conjecture_and_checks(capsys, small_corpus):
    assert main(["conjecture", "--p", "3", "--corpus", str(small_corpus)]) == EXIT_OK
    captured = capsys.readouterr()
    assert "3/2" in captured.err and "A4" in captured.err
    assert main(["checks", "--corpus", str(small_corpus)]) == EXIT_OK
    assert "frattini_bound" in capsys.readouterr().out


def test_violation_exit_code(monkeypatch, small_corpus, capsys):
    import acdlab.harness as h

    real = h.evaluate_rule

    def broken(theorem, name, G):
        rec = real(theorem, name, G)
        return h.GroupRecord(rec.name, rec.order, h.VIOLATION, True, False, rec.values)

    monkeypatch.setattr(h, "evaluate_rule", broken)
    assert main(["verify", "--thm", "1.1", "--corpus", str(small_corpus)]) == EXIT_VIOLATION


@pytest.mark.parametrize("argv", [
    [],
    ["verify", "--thm", "9.9"],
    ["table", "no-such-group"],
    ["table"],
    ["inv", "S3", "--p", "4"],
    ["table", "symmetric:12"],
    ["verify", "--thm", "1.1", "--corpus", "/nonexistent/m.json"],
    ["conjecture"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE
