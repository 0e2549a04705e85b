import csv
import io
import json
from fractions import Fraction

import pytest

from acdlab.clifford import FAIL, NOT_APPLICABLE, PASS, SKIPPED
from acdlab.corpus import manifest_from_dict
from acdlab.errors import InputError
from acdlab.harness import (SATISFIES, THEOREMS, VACUOUS, VIOLATION, GroupRecord, TheoremId,
                            VerificationResult, conjecture_bound, emit_report, evaluate_rule,
                            explore_conjecture, fmt, load, parse_theorem, run_structural_checks, verify)


def small_manifest(entries):
    groups = [{"name": n, "family": f, "params": list(p)} for n, f, p in entries]
    return manifest_from_dict({"version": 1, "groups": groups}, corpus_id="test")


ABELIAN = small_manifest([("C1", "cyclic", [1]), ("C6", "cyclic", [6]), ("C2^3", "elementary_abelian", [2, 3]),
                          ("C5^2", "elementary_abelian", [5, 2])])
MIXED = small_manifest([("S3", "symmetric", [3]), ("A4", "alternating", [4]), ("S4", "symmetric", [4]),
                        ("A5", "alternating", [5]), ("D10", "dihedral", [5]), ("Q8", "dicyclic", [2]),
                        ("F21", "frobenius", [7, 3])])


def test_parse_theorem():
    assert str(parse_theorem("1.1")) == "T1.1"
    assert str(parse_theorem("t1.3ii")) == "T1.3ii"
    assert str(parse_theorem("c1.4i")) == "C1.4i"
    assert parse_theorem("ito:3") == TheoremId("ITO_MICHLER", 3)
    assert parse_theorem("conj:5") == TheoremId("CONJ", 5)
    assert parse_theorem("sharpness").kind == "SHARPNESS"
    for bad in ("1.5", "ito:4", "conj:x", ""):
        with pytest.raises((InputError, ValueError)):
            parse_theorem(bad)


def test_fmt():
    assert fmt(Fraction(4, 3)) == "4/3" and fmt(Fraction(2)) == "2"


def test_bundled_sweeps_have_no_violations(corpus):
    for t in THEOREMS + ("ito:2", "ito:3", "ito:5", "sharpness"):
        res = verify(t, corpus)
        assert res.passed, (t, [r.name for r in res.violations])
        assert sum(res.counts().values()) == len(corpus)


def test_t11_details(corpus):
    res = verify("1.1", corpus)
    s3 = next(r for r in res.records if r.name == "S3")
    assert s3.value("acd_2") == Fraction(4, 3) and s3.verdict == VACUOUS
    a4 = next(r for r in res.records if r.name == "A4")
    assert a4.verdict == SATISFIES and a4.hypothesis
    assert res.extremal["threshold"] == "4/3"
    assert res.extremal["min_relevant"]["value"] == "4/3"
    assert "S3" in res.extremal["min_relevant"]["groups"]


def test_abelian_corpus_t12():
    res = verify("1.2", ABELIAN)
    assert res.counts() == {SATISFIES: 4, VACUOUS: 0, VIOLATION: 0}


def test_sharpness(corpus):
    res = verify("sharpness", corpus)
    assert [w.name for w in res.witnesses] == ["S3", "A5"]
    assert all(w.verdict == SATISFIES for w in res.witnesses)
    assert res.extremal["acd_2_without_normal_sylow_2"]["value"] == "4/3"
    assert res.extremal["acd_2_nonsolvable"]["value"] == "5/2"
    assert "A5" in res.extremal["acd_2_nonsolvable"]["groups"]
    doc = res.to_dict()
    assert doc["witnesses"][0]["acd_2"] == "4/3" and doc["witnesses"][1]["acd_2"] == "5/2"


def test_violation_is_a_result_not_an_error():
    rec = GroupRecord("X", 6, VIOLATION, True, False, (("acd_2", Fraction(1)),))
    res = VerificationResult("T1.1", "test", [rec])
    assert not res.passed and res.to_dict()["violations"] == ["X"]


def test_rule_verdict_logic(fam):
    assert evaluate_rule("T1.1", "S4", fam("symmetric", 4)).verdict == VACUOUS
    assert evaluate_rule("T1.2", "A5", fam("alternating", 5)).verdict == VACUOUS
    assert evaluate_rule("T1.2", "S4", fam("symmetric", 4)).verdict == SATISFIES


def test_conjecture(corpus):
    assert conjecture_bound(3) == Fraction(3, 2) and conjecture_bound(7) == Fraction(7, 4)
    r3 = explore_conjecture(3, corpus)
    assert r3.passed and r3.extremal["min_relevant"]["value"] == "3/2"
    assert "A4" in r3.extremal["min_relevant"]["groups"]
    r5 = explore_conjecture(5, corpus)
    assert r5.passed and Fraction(r5.extremal["min_relevant"]["value"]) > Fraction(5, 3)
    r7 = explore_conjecture(7, small_manifest([("S3", "symmetric", [3]), ("A5", "alternating", [5])]))
    assert any("no non-normal-Sylow groups for p = 7" in n for n in r7.notes)
    r2 = explore_conjecture(2, MIXED)
    assert r2.theorem == "T1.1" and any("redirected" in n for n in r2.notes)


def test_reports_are_deterministic_and_parallel_safe():
    a = emit_report(verify("1.1", MIXED), "json")
    b = emit_report(verify("1.1", MIXED, jobs=2), "json")
    assert a == b
    assert json.loads(a)["schema"] == "acdlab.verify/1"


def test_report_formats(tmp_path):
    res = verify("sharpness", MIXED)
    doc = json.loads(emit_report(res, "json"))
    assert doc["groups"][0]["group"] == "S3" and doc["groups"][0]["acd_2"] == "4/3"
    rows = list(csv.reader(io.StringIO(emit_report(res, "csv"))))
    assert rows[0][:5] == ["theorem", "corpus", "group", "order", "verdict"]
    assert len(rows) == 1 + len(MIXED) + 2
    text = emit_report([res, verify("1.2", MIXED)], "text")
    assert "SHARPNESS over test" in text and "T1.2 over test" in text
    path = tmp_path / "out.json"
    emit_report(res, "json", path)
    assert json.loads(path.read_text()) == doc
    with pytest.raises(InputError):
        emit_report(res, "yaml")


def test_empty_results():
    assert json.loads(emit_report([], "json")) == {"schema": "acdlab.verify/1", "results": []}
    assert emit_report([], "csv").strip() == "theorem,corpus,group,order,verdict,hypothesis,conclusion,values"
    empty = verify("1.1", small_manifest([]))
    assert empty.passed and json.loads(emit_report(empty, "json"))["groups"] == []


def test_structural_checks(corpus):
    res = run_structural_checks(corpus)
    assert res.passed, [r.to_dict() for r in res.failures]
    assert all(r.verdict != FAIL for r in res.reports)
    assert res.for_group("S3", "frattini_bound")[0].verdict == PASS
    assert res.for_group("S3", "acd_plus_bound")[0].comparisons[0].lhs == Fraction(4, 3)
    assert res.for_group("S4", "frattini_bound")[0].verdict == NOT_APPLICABLE
    counting = res.for_group("S5", "counting_inequalities")
    assert counting and counting[0].verdict == PASS
    assert res.for_group("A5", "counting_inequalities")[0].verdict == PASS
    skipped = res.for_group("PSL(2,7)", "counting_inequalities")
    assert skipped and skipped[0].verdict == SKIPPED
    doc = json.loads(emit_report(res, "json"))
    assert doc["schema"] == "acdlab.checks/1"
    assert emit_report(res, "csv").splitlines()[0] == "check,corpus,group,N,verdict,comparisons"


def test_loaded_corpus_lookup():
    lc = load(MIXED)
    assert lc.get("A5").order == 60 and len(lc) == 7
    with pytest.raises(KeyError):
        lc.get("nope")
