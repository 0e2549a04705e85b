"""Corpus sweeps of the average-degree theorems, conjecture exploration and
structural checks, with deterministic report output.

Per-group verdicts:

* ``satisfies``: hypothesis true and conclusion true,
* ``vacuous``: hypothesis false,
* ``VIOLATION``: hypothesis true, conclusion false.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .chartab import character_table
from .clifford import (NOT_APPLICABLE, CheckReport, check_acd_plus_bound, check_counting_inequalities,
                       check_frattini_bound, check_odd_index_real_extension, check_orbit_parity,
                       subgroup_table)
from .corpus import GroupSpec, alternating, as_manifest, load_corpus, symmetric
from .errors import InputError, PreconditionError
from .group import (FiniteGroup, Subgroup, _check_prime, derived_subgroup, has_normal_sylow, is_abelian,
                    is_solvable, minimal_normal_subgroups, sylow_subgroup, whole)
from .invariants import Variant, acd

SCHEMA = "acdlab.verify/1"
CHECKS_SCHEMA = "acdlab.checks/1"

SATISFIES = "satisfies"
VACUOUS = "vacuous"
VIOLATION = "VIOLATION"


def fmt(x) -> str:
    """Exact fraction as ``"n/d"``, or ``"n"`` when integral."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# theorem ids
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TheoremId:
    kind: str
    p: int | None = None

    def __str__(self) -> str:
        return f"{self.kind}({self.p})" if self.p is not None else self.kind


_ALIASES = {
    "1.1": "T1.1", "t1.1": "T1.1",
    "1.2": "T1.2", "t1.2": "T1.2",
    "1.3i": "T1.3i", "t1.3i": "T1.3i",
    "1.3ii": "T1.3ii", "t1.3ii": "T1.3ii",
    "c1.4i": "C1.4i", "1.4i": "C1.4i",
    "c1.4ii": "C1.4ii", "1.4ii": "C1.4ii",
    "sharpness": "SHARPNESS",
}
THEOREMS = ("T1.1", "T1.2", "T1.3i", "T1.3ii", "C1.4i", "C1.4ii")


def parse_theorem(text) -> TheoremId:
    if isinstance(text, TheoremId):
        return text
    s = str(text).strip()
    low = s.lower()
    if low in _ALIASES:
        return TheoremId(_ALIASES[low])
    for prefix, kind in (("ito:", "ITO_MICHLER"), ("ito_michler:", "ITO_MICHLER"), ("conj:", "CONJ")):
        if low.startswith(prefix):
            try:
                p = int(low[len(prefix):])
            except ValueError:
                raise InputError(f"bad prime in {s!r}") from None
            return TheoremId(kind, _check_prime(p))
    for kind in ("ITO_MICHLER", "CONJ"):
        if s.upper().startswith(kind + "(") and s.endswith(")"):
            return parse_theorem(f"{'ito' if kind == 'ITO_MICHLER' else 'conj'}:{s[len(kind) + 1:-1]}")
    raise InputError(f"unknown theorem {s!r}")


# ---------------------------------------------------------------------------
# results
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupRecord:
    name: str
    order: int
    verdict: str
    hypothesis: bool
    conclusion: bool
    values: tuple[tuple[str, object], ...] = ()

    def value(self, key: str):
        return dict(self.values)[key]

    def to_dict(self) -> dict:
        vals = {k: fmt(v) if isinstance(v, Fraction) else v for k, v in self.values}
        return {"group": self.name, "order": self.order, "verdict": self.verdict,
                "hypothesis": self.hypothesis, "conclusion": self.conclusion, **vals}


@dataclass
class VerificationResult:
    theorem: str
    corpus: str
    records: list[GroupRecord]
    extremal: dict = field(default_factory=dict)
    witnesses: list[GroupRecord] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    duration: float = 0.0

    @property
    def violations(self) -> list[GroupRecord]:
        return [r for r in self.records + self.witnesses if r.verdict == VIOLATION]

    @property
    def passed(self) -> bool:
        return not self.violations

    def counts(self) -> dict[str, int]:
        out = {SATISFIES: 0, VACUOUS: 0, VIOLATION: 0}
        for r in self.records:
            out[r.verdict] += 1
        return out

    def to_dict(self, include_duration: bool = False) -> dict:
        doc = {
            "schema": SCHEMA,
            "theorem": self.theorem,
            "corpus": self.corpus,
            "passed": self.passed,
            "counts": self.counts(),
            "violations": [r.name for r in self.violations],
            "extremal": self.extremal,
            "groups": [r.to_dict() for r in self.records],
        }
        if self.witnesses:
            doc["witnesses"] = [r.to_dict() for r in self.witnesses]
        if self.notes:
            doc["notes"] = list(self.notes)
        if include_duration:
            doc["duration_seconds"] = round(self.duration, 3)
        return doc


# ---------------------------------------------------------------------------
# per-group evaluation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Rule:
    variant: Variant
    threshold: Fraction
    strict: bool
    conclusion: str  # "normal_sylow" or "solvable"
    label: str


RULES = {
    "T1.1": _Rule(Variant.ALL, Fraction(4, 3), True, "normal_sylow", "acd_2"),
    "T1.2": _Rule(Variant.ALL, Fraction(5, 2), True, "solvable", "acd_2"),
    "T1.3i": _Rule(Variant.STRONG, Fraction(2), False, "solvable", "acd_2+"),
    "T1.3ii": _Rule(Variant.STRONG, Fraction(4, 3), True, "normal_sylow", "acd_2+"),
    "C1.4i": _Rule(Variant.REAL, Fraction(2), False, "solvable", "acd_2R"),
    "C1.4ii": _Rule(Variant.REAL, Fraction(4, 3), True, "normal_sylow", "acd_2R"),
}


def _conclusion(G: FiniteGroup, kind: str, p: int = 2) -> bool:
    return has_normal_sylow(G, p) if kind == "normal_sylow" else is_solvable(G)


def _verdict(hyp: bool, concl: bool) -> str:
    if not hyp:
        return VACUOUS
    return SATISFIES if concl else VIOLATION


def evaluate_rule(theorem: str, name: str, G: FiniteGroup) -> GroupRecord:
    rule = RULES[theorem]
    value = acd(character_table(G), 2, rule.variant)
    hyp = value < rule.threshold if rule.strict else value <= rule.threshold
    concl = _conclusion(G, rule.conclusion)
    return GroupRecord(name, G.order, _verdict(hyp, concl), hyp, concl,
                       ((rule.label, value), (rule.conclusion, concl)))


def evaluate_ito_michler(p: int, name: str, G: FiniteGroup) -> GroupRecord:
    value = acd(character_table(G), p)
    P = sylow_subgroup(G, p)
    normal_abelian = has_normal_sylow(G, p) and is_abelian(P)
    hyp = value == 1
    verdict = SATISFIES if hyp == normal_abelian else VIOLATION
    return GroupRecord(name, G.order, verdict, hyp, normal_abelian,
                       ((f"acd_{p}", value), ("normal_abelian_sylow", normal_abelian)))


def conjecture_bound(p: int) -> Fraction:
    return Fraction(2 * p, p + 1)


def evaluate_conjecture(p: int, name: str, G: FiniteGroup) -> GroupRecord:
    value = acd(character_table(G), p)
    hyp = value < conjecture_bound(p)
    concl = has_normal_sylow(G, p)
    return GroupRecord(name, G.order, _verdict(hyp, concl), hyp, concl,
                       ((f"acd_{p}", value), ("normal_sylow", concl)))


def evaluate_sharpness(name: str, G: FiniteGroup) -> GroupRecord:
    """A group is a witness (``satisfies``) when it attains one of the bounds
    4/3 (acd_2 or acd_2+, without a normal Sylow 2-subgroup) or 5/2 (acd_2,
    nonsolvable); a value strictly beyond a bound without the conclusion is a
    violation of the corresponding theorem."""
    table = character_table(G)
    a2 = acd(table, 2)
    a2s = acd(table, 2, Variant.STRONG)
    normal = has_normal_sylow(G, 2)
    solvable = is_solvable(G)
    below = (a2 < Fraction(4, 3) and not normal) or (a2 < Fraction(5, 2) and not solvable) or \
            (a2s < Fraction(4, 3) and not normal)
    attains = (a2 == Fraction(4, 3) and not normal) or (a2 == Fraction(5, 2) and not solvable) or \
              (a2s == Fraction(4, 3) and not normal)
    verdict = VIOLATION if below else (SATISFIES if attains else VACUOUS)
    return GroupRecord(name, G.order, verdict, attains or below, not below,
                       (("acd_2", a2), ("acd_2+", a2s), ("normal_sylow_2", normal), ("solvable", solvable)))


def _evaluator(theorem: TheoremId) -> Callable[[str, FiniteGroup], GroupRecord]:
    if theorem.kind in RULES:
        return lambda name, G: evaluate_rule(theorem.kind, name, G)
    if theorem.kind == "ITO_MICHLER":
        return lambda name, G: evaluate_ito_michler(theorem.p, name, G)
    if theorem.kind == "CONJ":
        return lambda name, G: evaluate_conjecture(theorem.p, name, G)
    if theorem.kind == "SHARPNESS":
        return evaluate_sharpness
    raise InputError(f"no evaluator for {theorem}")


def _evaluate_one(args) -> GroupRecord:
    theorem, name, G = args
    return _evaluator(theorem)(name, G)


# ---------------------------------------------------------------------------
# corpora
# ---------------------------------------------------------------------------


@dataclass
class LoadedCorpus:
    corpus_id: str
    entries: list[tuple[GroupSpec, FiniteGroup]]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, name: str) -> FiniteGroup:
        for spec, G in self.entries:
            if spec.name == name:
                return G
        raise KeyError(name)


def load(corpus) -> LoadedCorpus:
    """Accepts a manifest path, manifest dict, CorpusManifest or LoadedCorpus."""
    if isinstance(corpus, LoadedCorpus):
        return corpus
    manifest = as_manifest(corpus)
    return LoadedCorpus(manifest.corpus_id, load_corpus(manifest))


def _sweep(theorem: TheoremId, corpus: LoadedCorpus, jobs: int) -> list[GroupRecord]:
    work = [(theorem, spec.name, G) for spec, G in corpus]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            # map yields in submission order: the merge is by manifest index
            return list(pool.map(_evaluate_one, work))
    return [_evaluate_one(w) for w in work]


def _extremes(records: Sequence[GroupRecord], key: str, relevant: Callable[[GroupRecord], bool]) -> dict:
    def pick(rs, best):
        if not rs:
            return None
        v = best(r.value(key) for r in rs)
        return {"value": fmt(v), "groups": [r.name for r in rs if r.value(key) == v]}

    rel = [r for r in records if relevant(r)]
    return {"key": key, "min": pick(records, min), "max": pick(records, max),
            "relevant": len(rel), "min_relevant": pick(rel, min), "max_relevant": pick(rel, max)}


def witness_records() -> list[GroupRecord]:
    """The sharpness witnesses S3 and A5 built from their families."""
    out = []
    for name, G in (("S3", symmetric(3)), ("A5", alternating(5))):
        table = character_table(G)
        a2, a2s = acd(table, 2), acd(table, 2, Variant.STRONG)
        normal, solvable = has_normal_sylow(G, 2), is_solvable(G)
        if name == "S3":
            ok = a2 == Fraction(4, 3) and a2s == Fraction(4, 3) and not normal
        else:
            ok = a2 == Fraction(5, 2) and not solvable
        out.append(GroupRecord(name, G.order, SATISFIES if ok else VIOLATION, True, ok,
                               (("acd_2", a2), ("acd_2+", a2s), ("normal_sylow_2", normal),
                                ("solvable", solvable))))
    return out


def verify(theorem, corpus, jobs: int = 1) -> VerificationResult:
    """Sweep one theorem over a corpus; a VIOLATION is a result, not an error."""
    theorem = parse_theorem(theorem)
    start = time.perf_counter()
    loaded = load(corpus)
    records = _sweep(theorem, loaded, jobs)
    result = VerificationResult(str(theorem), loaded.corpus_id, records)
    if theorem.kind in RULES:
        rule = RULES[theorem.kind]
        result.extremal = _extremes(records, rule.label, lambda r: not r.conclusion)
        result.extremal["threshold"] = fmt(rule.threshold)
    elif theorem.kind == "ITO_MICHLER":
        result.extremal = _extremes(records, f"acd_{theorem.p}", lambda r: not r.conclusion)
    elif theorem.kind == "CONJ":
        result.extremal = _extremes(records, f"acd_{theorem.p}", lambda r: not r.conclusion)
        result.extremal["threshold"] = fmt(conjecture_bound(theorem.p))
    elif theorem.kind == "SHARPNESS":
        result.witnesses = witness_records()
        result.extremal = {
            "acd_2_without_normal_sylow_2": _extremes(records, "acd_2", lambda r: not r.value("normal_sylow_2"))["min_relevant"],
            "acd_2_nonsolvable": _extremes(records, "acd_2", lambda r: not r.value("solvable"))["min_relevant"],
            "acd_2+_without_normal_sylow_2": _extremes(records, "acd_2+", lambda r: not r.value("normal_sylow_2"))["min_relevant"],
        }
    result.duration = time.perf_counter() - start
    return result


def verify_all(corpus, theorems: Iterable = THEOREMS, jobs: int = 1) -> list[VerificationResult]:
    loaded = load(corpus)
    return [verify(t, loaded, jobs=jobs) for t in theorems]


def explore_conjecture(p: int, corpus, jobs: int = 1) -> VerificationResult:
    """Minimum ``acd_p`` over groups without a normal Sylow p-subgroup versus
    ``2p/(p+1)``; a group below the bound without one is a counterexample
    (reported as VIOLATION).  For ``p = 2`` the bound is 4/3 and the sweep is
    that of T1.1."""
    p = _check_prime(p)
    if p == 2:
        result = verify("T1.1", corpus, jobs=jobs)
        result.notes.append("p = 2 is the proved case: redirected to T1.1")
        return result
    result = verify(TheoremId("CONJ", p), corpus, jobs=jobs)
    rel = result.extremal["min_relevant"]
    if rel is None:
        result.notes.append(f"no non-normal-Sylow groups for p = {p}")
    else:
        v = Fraction(rel["value"])
        bound = conjecture_bound(p)
        relation = "equal to" if v == bound else ("above" if v > bound else "BELOW")
        result.notes.append(f"minimum acd_{p} without a normal Sylow {p}-subgroup is {rel['value']} "
                            f"({', '.join(rel['groups'])}), {relation} the bound {fmt(bound)}")
    if result.violations:
        result.notes.append("COUNTEREXAMPLE: " + ", ".join(r.name for r in result.violations))
    return result


# ---------------------------------------------------------------------------
# structural checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtendibleCharacter:
    """A minimal normal subgroup type whose character of ``degree`` is known
    to extend (to a strongly real character, if flagged) to its inertia
    group in any group containing it as a minimal normal subgroup."""

    label: str
    order: int
    degrees: tuple[int, ...]
    degree: int
    strongly_real: bool

    def matches(self, N: Subgroup) -> bool:
        if N.order != self.order or is_abelian(N):
            return False
        H = N.as_group()
        if len(minimal_normal_subgroups(H)) != 1 or minimal_normal_subgroups(H)[0].order != H.order:
            return False
        return tuple(sorted(int(d) for d in subgroup_table(N).degrees)) == self.degrees


EXTENDIBLE = (
    ExtendibleCharacter("A5", 60, (1, 3, 3, 4, 5), 4, True),
)


def _named(report: CheckReport, name: str, subgroup: str | None = None) -> CheckReport:
    report.group = name
    if subgroup is not None:
        report.notes = {"N": subgroup, **report.notes}
    return report


def _not_applicable(check: str, name: str, reason: str, subgroup: str | None = None) -> CheckReport:
    notes = {"reason": reason}
    if subgroup is not None:
        notes = {"N": subgroup, **notes}
    return CheckReport(check, name, NOT_APPLICABLE, notes=notes)


def _describe(N: Subgroup) -> str:
    return f"order {N.order}"


def structural_checks_for(name: str, G: FiniteGroup) -> list[CheckReport]:
    out = [_named(check_frattini_bound(G), name), _named(check_acd_plus_bound(G), name)]
    mins = minimal_normal_subgroups(G) if G.order > 1 else []
    for N in mins:
        if not is_abelian(N):
            continue
        try:
            out.append(_named(check_orbit_parity(G, N), name, _describe(N)))
        except PreconditionError as exc:
            out.append(_not_applicable("orbit_parity", name, str(exc), _describe(N)))
    candidates: list[Subgroup] = list(mins)
    if G.order > 1:
        D = derived_subgroup(whole(G))
        if not any(D.same_as(M) for M in candidates):
            candidates.append(D)
    for N in candidates:
        if (G.order // N.order) % 2 == 1:
            out.append(_named(check_odd_index_real_extension(G, N), name, _describe(N)))
    for N in mins:
        if is_abelian(N):
            continue
        entry = next((e for e in EXTENDIBLE if e.matches(N)), None)
        table_N = subgroup_table(N)
        if entry is None:
            phi = max(c.index for c in table_N.chars)
            out.append(_named(check_counting_inequalities(G, N, phi, assume_extends=False), name, _describe(N)))
            continue
        phi = next(c.index for c in table_N.chars if c.degree == entry.degree)
        report = check_counting_inequalities(G, N, phi, assume_extends=True,
                                             strongly_real_extends=entry.strongly_real)
        report.notes = {"extendible": f"{entry.label} degree {entry.degree}", **report.notes}
        out.append(_named(report, name, _describe(N)))
    return out


@dataclass
class ChecksResult:
    corpus: str
    reports: list[CheckReport]

    @property
    def failures(self) -> list[CheckReport]:
        return [r for r in self.reports if r.verdict == "fail"]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        out: dict[str, dict[str, int]] = {}
        for r in self.reports:
            out.setdefault(r.check, {}).setdefault(r.verdict, 0)
            out[r.check][r.verdict] += 1
        return {k: dict(sorted(v.items())) for k, v in sorted(out.items())}

    def for_group(self, name: str, check: str | None = None) -> list[CheckReport]:
        return [r for r in self.reports if r.group == name and (check is None or r.check == check)]

    def to_dict(self) -> dict:
        return {"schema": CHECKS_SCHEMA, "corpus": self.corpus, "passed": self.passed,
                "summary": self.summary(), "reports": [r.to_dict() for r in self.reports]}


def _checks_one(args) -> list[CheckReport]:
    name, G = args
    return structural_checks_for(name, G)


def run_structural_checks(corpus, jobs: int = 1) -> ChecksResult:
    loaded = load(corpus)
    work = [(spec.name, G) for spec, G in loaded]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_checks_one, work))
    else:
        chunks = [_checks_one(w) for w in work]
    return ChecksResult(loaded.corpus_id, [r for chunk in chunks for r in chunk])


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

CSV_COLUMNS = ("theorem", "corpus", "group", "order", "verdict", "hypothesis", "conclusion", "values")


def _json_text(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _as_docs(results) -> list[dict]:
    if isinstance(results, (VerificationResult, ChecksResult)):
        results = [results]
    return [r.to_dict() for r in results]


def render_json(results) -> str:
    docs = _as_docs(results)
    if len(docs) == 1:
        return _json_text(docs[0])
    return _json_text({"schema": SCHEMA, "results": docs})


CHECK_CSV_COLUMNS = ("check", "corpus", "group", "N", "verdict", "comparisons")


def _comparisons_text(r: CheckReport) -> str:
    return ";".join(f"{c.label}: {fmt(c.lhs)} {c.relation} {fmt(c.rhs)}" for c in r.comparisons)


def render_csv(results) -> str:
    """One row per (theorem, group); ``values`` holds ``key=value`` pairs
    joined by ``;``.  Check results get one row per check report."""
    if isinstance(results, ChecksResult):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CHECK_CSV_COLUMNS)
        for r in results.reports:
            w.writerow([r.check, results.corpus, r.group, r.notes.get("N", ""), r.verdict, _comparisons_text(r)])
        return buf.getvalue()
    if isinstance(results, VerificationResult):
        results = [results]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for res in results:
        for r in res.records + res.witnesses:
            vals = ";".join(f"{k}={fmt(v) if isinstance(v, Fraction) else v}" for k, v in r.values)
            w.writerow([res.theorem, res.corpus, r.name, r.order, r.verdict,
                        int(r.hypothesis), int(r.conclusion), vals])
    return buf.getvalue()


def _table(rows: list[list[str]], header: list[str]) -> str:
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)] if rows else [len(h) for h in header]
    line = lambda cells: "  ".join(str(c).ljust(w) for c, w in zip(cells, widths)).rstrip()  # noqa: E731
    out = [line(header), line(["-" * w for w in widths])]
    out += [line(r) for r in rows]
    return "\n".join(out) + "\n"


def render_text(results) -> str:
    if isinstance(results, ChecksResult):
        rows = [[r.group, r.check, r.notes.get("N", ""), r.verdict, _comparisons_text(r)] for r in results.reports]
        summary = "".join(f"{k}: " + ", ".join(f"{n} {v}" for v, n in counts.items()) + "\n"
                          for k, counts in results.summary().items())
        return _table(rows, ["group", "check", "N", "verdict", "comparisons"]) + summary
    if isinstance(results, VerificationResult):
        results = [results]
    parts = []
    for res in results:
        rows = []
        for r in res.records + res.witnesses:
            vals = " ".join(f"{k}={fmt(v) if isinstance(v, Fraction) else v}" for k, v in r.values)
            rows.append([r.name, str(r.order), r.verdict, vals])
        c = res.counts()
        parts.append(f"{res.theorem} over {res.corpus}: {c[SATISFIES]} satisfies, {c[VACUOUS]} vacuous, "
                     f"{c[VIOLATION]} violations\n" + _table(rows, ["group", "order", "verdict", "values"])
                     + "".join(f"note: {n}\n" for n in res.notes))
    return "\n".join(parts)


def emit_report(results, fmt_name: str = "json", path=None) -> str:
    """Render ``results`` as ``json``, ``csv`` or ``text``; write to ``path``
    when given.  Output is a pure function of the results."""
    renderers = {"json": render_json, "csv": render_csv, "text": render_text, "text-table": render_text}
    if fmt_name not in renderers:
        raise InputError(f"unknown report format {fmt_name!r}")
    text = renderers[fmt_name](results)
    if path is not None:
        Path(path).write_text(text)
    return text
