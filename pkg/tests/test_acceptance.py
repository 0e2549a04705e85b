"""One test per acceptance criterion; each prints a single PASS/FAIL line.

Tolerances: every value comparison is exact (fractions and integers, zero
tolerance); the only inexact limits are the wall-clock budgets below.
"""

import subprocess
import sys
import time
from fractions import Fraction

import pytest

import oracles as o
from acdlab.chartab import character_table, table_self_check, table_to_dict
from acdlab.classes import conjugacy_classes
from acdlab.clifford import FAIL, PASS, check_acd_plus_bound, check_frattini_bound, \
    check_odd_index_real_extension, check_counting_inequalities, subgroup_table
from acdlab.corpus import build_family, bundled_manifest, format_perm, parse_perm, read_perm, write_perm
from acdlab.group import derived_subgroup, has_normal_sylow, is_solvable, minimal_normal_subgroups, \
    squares_subgroup, whole
from acdlab.harness import EXTENDIBLE, THEOREMS, emit_report, load, run_structural_checks, verify
from acdlab.invariants import Variant, acd, count_degree

BUDGET_WITNESSES_S = 1.0
BUDGET_EXTRASPECIAL_S = 30.0
BUDGET_SWEEPS_S = 120.0


_capsys = None


@pytest.fixture(autouse=True)
def _uncaptured(capsys):
    # the verdict line is shown even when pytest captures output
    global _capsys
    _capsys = capsys
    yield
    _capsys = None


def report(n, ok, detail):
    with _capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}")
    assert ok, detail


def test_criterion_1_witness_values():
    start = time.perf_counter()
    S3, A5, S4, A4 = (build_family(f, p) for f, p in
                      (("symmetric", [3]), ("alternating", [5]), ("symmetric", [4]), ("alternating", [4])))
    values = {
        "acd_2(S3)": acd(character_table(S3), 2),
        "acd_2(A5)": acd(character_table(A5), 2),
        "acd_2+(S3)": acd(character_table(S3), 2, Variant.STRONG),
        "acd_3(A4)": acd(character_table(A4), 3),
    }
    flags = {
        "S3 Sylow 2 not normal": not has_normal_sylow(S3, 2),
        "S4 Sylow 2 not normal": not has_normal_sylow(S4, 2),
        "A5 nonsolvable": not is_solvable(A5),
        "A4 Sylow 3 not normal": not has_normal_sylow(A4, 3),
    }
    elapsed = time.perf_counter() - start
    want = {"acd_2(S3)": Fraction(4, 3), "acd_2(A5)": Fraction(5, 2),
            "acd_2+(S3)": Fraction(4, 3), "acd_3(A4)": Fraction(3, 2)}
    ok = values == want and all(flags.values()) and elapsed < BUDGET_WITNESSES_S
    shown = ", ".join(f"{k}={v}" for k, v in values.items())
    report(1, ok, f"{shown}; flags {all(flags.values())}; {elapsed:.2f}s < {BUDGET_WITNESSES_S}s")


def test_criterion_2_extraspecial_limit():
    start = time.perf_counter()
    got = []
    for n in (1, 2, 3):
        G = build_family("extraspecial_2", [n, "plus"])
        got.append(acd(character_table(G), 2))
    elapsed = time.perf_counter() - start
    want = [Fraction(2 ** (2 * n) + 2 ** n, 2 ** (2 * n) + 1) for n in (1, 2, 3)]
    ok = (got == want == [Fraction(6, 5), Fraction(20, 17), Fraction(72, 65)]
          and got[0] > got[1] > got[2] > 1 and elapsed < BUDGET_EXTRASPECIAL_S)
    report(2, ok, f"orders 8, 32, 128 -> {', '.join(map(str, got))}; {elapsed:.2f}s < {BUDGET_EXTRASPECIAL_S}s")


def test_criterion_3_theorem_sweeps():
    start = time.perf_counter()
    fresh = load(bundled_manifest())
    results = [verify(t, fresh) for t in THEOREMS + ("ito:2", "ito:3", "ito:5")]
    elapsed = time.perf_counter() - start
    orders = [G.order for _, G in fresh]
    names = {s.name for s, _ in fresh}
    coverage = (len(fresh) >= 60 and max(orders) <= 2000
                and {"SL(2,5)", "S5", "2^{1+4}_+", "F20", "D18"} <= names
                and sum(1 for s, G in fresh if G.order <= 16 and s.file) == 42)
    violations = sum(len(r.violations) for r in results)
    ok = coverage and violations == 0 and elapsed < BUDGET_SWEEPS_S
    report(3, ok, f"{len(results)} sweeps over {len(fresh)} groups, {violations} violations; "
                  f"{elapsed:.1f}s < {BUDGET_SWEEPS_S}s")


CLASSICAL = {
    "C2": [(1, 1), (1, 1)],
    "C6": [(1, 0)] * 4 + [(1, 1)] * 2,
    "S3": [(1, 1), (1, 1), (2, 1)],
    "D8": [(1, 1)] * 4 + [(2, 1)],
    "Q8": [(1, 1)] * 4 + [(2, -1)],
    "A4": [(1, 0), (1, 0), (1, 1), (3, 1)],
    "S4": [(1, 1), (1, 1), (2, 1), (3, 1), (3, 1)],
    "A5": [(1, 1), (3, 1), (3, 1), (4, 1), (5, 1)],
    "SL(2,5)": [(1, 1), (2, -1), (2, -1), (3, 1), (3, 1), (4, -1), (4, 1), (5, 1), (6, -1)],
}


def test_criterion_4_table_oracles(corpus):
    mismatched = []
    for name, want in CLASSICAL.items():
        G = corpus.get(name)
        got = sorted((c.degree, c.fs_indicator) for c in character_table(G))
        if got != want or o.float_indicators(o.elements_of(G)) != want:
            mismatched.append(name)
    failed = [s.name for s, G in corpus if not table_self_check(character_table(G)).ok]
    ok = not mismatched and not failed
    report(4, ok, f"{len(CLASSICAL)} classical tables, {len(mismatched)} mismatches; "
                  f"self-check on {len(corpus)} groups, {len(failed)} failures")


def test_criterion_5_linear_character_identities(corpus):
    bad = []
    for spec, G in corpus:
        T = character_table(G)
        if count_degree(T, 1) != G.order // derived_subgroup(whole(G)).order:
            bad.append((spec.name, "n_1"))
        if count_degree(T, 1, Variant.STRONG) != G.order // squares_subgroup(G).order:
            bad.append((spec.name, "n_1+"))
    report(5, not bad, f"n_1 = |G:G'| and n_1+ = |G:G*| on {len(corpus)} groups; {len(bad)} failures {bad[:3]}")


def test_criterion_6_structural_checks(corpus):
    res = run_structural_checks(corpus)
    fails = [(r.group, r.check) for r in res.reports if r.verdict == FAIL]
    named = {}
    for name in ("S3", "F20", "D10", "C3^2:Q8"):
        G = corpus.get(name)
        named[name] = (check_frattini_bound(G).verdict, check_acd_plus_bound(G).verdict)
    s3_plus = check_acd_plus_bound(corpus.get("S3")).comparisons[0].lhs
    pairs = {}
    for name, sub in (("A4", 4), ("C9", 3)):
        G = corpus.get(name)
        N = next(M for M in minimal_normal_subgroups(G) if M.order == sub)
        pairs[name] = check_odd_index_real_extension(G, N).verdict
    ok = (not fails and all(v == (PASS, PASS) for v in named.values())
          and s3_plus == Fraction(4, 3) and all(v == PASS for v in pairs.values()))
    report(6, ok, f"{len(res.reports)} reports, {len(fails)} fail; S3/F20/D10/C3^2:Q8 pass "
                  f"(acd_2+(S3) = {s3_plus}); (A4,V4) {pairs['A4']}, (C9,C3) {pairs['C9']}")


def test_criterion_7_counting_inequalities(fam):
    S5 = fam("symmetric", 5)
    (N,) = minimal_normal_subgroups(S5)
    entry = next(e for e in EXTENDIBLE if e.matches(N))
    phi = next(c.index for c in subgroup_table(N).chars if c.degree == entry.degree)
    rep = check_counting_inequalities(S5, N, phi, assume_extends=True,
                                      strongly_real_extends=entry.strongly_real)
    by = {c.label.split(")")[0] + ")": c for c in rep.comparisons}
    i, iii = by["(i)"], by["(iii)"]
    ok = rep.verdict == PASS and (i.lhs, i.rhs) == (2, 2) and (iii.lhs, iii.rhs) == (0, 1)
    report(7, ok, f"S5 over A5, degree-{entry.degree} character: (i) {i.lhs} <= {i.rhs}, "
                  f"(iii) {iii.lhs} <= {iii.rhs}")


def test_criterion_8_determinism_and_round_trip(corpus, tmp_path):
    cmd = [sys.executable, "-m", "acdlab.cli", "verify", "--thm", "sharpness", "--thm", "1.1"]
    runs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
    in_process = [emit_report(verify("1.3i", corpus, jobs=j), "json").encode() for j in (1, 2)]
    tables = [str(table_to_dict(character_table(build_family("symmetric", [5])))) for _ in range(2)]
    identical = runs[0] == runs[1] and in_process[0] == in_process[1] and tables[0] == tables[1]
    broken = []
    for spec, G in corpus:
        path = tmp_path / "g.perm"
        write_perm(G, path)
        H = read_perm(path)
        key = lambda X: (X.order, X.exponent, sorted(conjugacy_classes(X).class_sizes.tolist()))
        if key(H) != key(G) or parse_perm(format_perm(H))[1] != parse_perm(format_perm(G))[1]:
            broken.append(spec.name)
    ok = identical and not broken and len(runs[0]) > 0
    report(8, ok, f"byte-identical JSON {identical}; .perm round trip on {len(corpus)} groups, "
                  f"{len(broken)} failures")
