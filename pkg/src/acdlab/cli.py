"""``acdlab`` command line.

Exit codes: 0 no violations, 1 violations found, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .chartab import CharacterTable, character_table, table_to_dict
from .corpus import FAMILIES, bundled_manifest, bundled_manifest_path, build_family, load_corpus, read_perm
from .cyclotomic import rational_integer
from .errors import ConstructionError, InputError, PreconditionError, SizeLimitError
from .harness import (emit_report, explore_conjecture, fmt, parse_theorem, run_structural_checks,
                      verify)
from .invariants import Variant, acd, invariant_report, irr_subset

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def _param(x: str):
    try:
        return int(x)
    except ValueError:
        return x


def resolve_group(text: str, family_params=None):
    """A ``.perm`` path, ``family:p1,p2`` or the name of a bundled corpus group."""
    if family_params is not None:
        return build_family(text, [_param(x) for x in family_params], label=text)
    path = Path(text)
    if path.suffix == ".perm" or path.is_file():
        return read_perm(path)
    if ":" in text:
        fam, _, rest = text.partition(":")
        if fam in FAMILIES:
            params = [_param(x) for x in rest.split(",") if x]
            return build_family(fam, params, label=text)
    manifest = bundled_manifest()
    if text in manifest.names():
        for spec, G in load_corpus(manifest):
            if spec.name == text:
                return G
    raise InputError(f"{text!r} is not a .perm file, a family:params spec or a bundled group name")


def _value_text(vec) -> str:
    v = rational_integer(vec)
    if v is not None:
        return str(v)
    import numpy as np

    e = len(vec)
    z = complex(np.dot(vec, np.exp(2j * np.pi * np.arange(e) / e)))
    re, im = round(z.real, 3) + 0.0, round(z.imag, 3) + 0.0
    if abs(im) < 5e-4:
        return f"{re:g}"
    return f"{re:g}{im:+g}i"


def class_labels(table: CharacterTable) -> list[str]:
    """Element order plus a letter counting classes of that order: 1a, 2a, 5a, 5b, ..."""
    seen: dict[int, int] = {}
    out = []
    for k in range(table.classes.count):
        o = int(table.classes.rep_orders[k])
        n = seen.get(o, 0)
        seen[o] = n + 1
        letters = ""
        n += 1
        while n:
            n, r = divmod(n - 1, 26)
            letters = chr(ord("a") + r) + letters
        out.append(f"{o}{letters}")
    return out


def render_table_text(table: CharacterTable) -> str:
    cd = table.classes
    header = ["chi", "deg", "ind"] + class_labels(table)
    sizes = ["size", "", ""] + [str(int(s)) for s in cd.class_sizes]
    rows = [[f"X{c.index + 1}", str(c.degree), {1: "+", -1: "-", 0: "o"}[c.fs_indicator]]
            + [_value_text(c.mults[k]) for k in range(cd.count)] for c in table.chars]
    allrows = [header, sizes] + rows
    widths = [max(len(r[i]) for r in allrows) for i in range(len(header))]
    lines = ["  ".join(x.rjust(w) for x, w in zip(r, widths)).rstrip() for r in allrows]
    name = table.group.name or "group"
    return f"{name}: order {table.group.order}, {cd.count} classes\n" + "\n".join(lines) + "\n"


def render_invariants_text(G, p: int, variant: Variant) -> str:
    """Character summary (index, degree, indicator, real, strongly real) and
    the requested average."""
    table = character_table(G)
    lines = [f"{G.name or 'group'}: order {G.order}, {len(table)} irreducible characters"]
    rows = [["chi", "degree", "indicator", "real", "strongly_real", f"in Irr_{p}"]]
    chosen = {c.index for c in irr_subset(table, p, variant)}
    for c in table.chars:
        rows.append([f"X{c.index + 1}", str(c.degree), str(c.fs_indicator), "yes" if c.is_real else "no",
                     "yes" if c.is_strongly_real else "no", "yes" if c.index in chosen else "no"])
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines += ["  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip() for r in rows]
    suffix = {Variant.ALL: "", Variant.REAL: ",R", Variant.STRONG: ",+"}[variant]
    lines.append(f"acd_{{{p}{suffix}}} = {fmt(acd(table, p, variant))}")
    return "\n".join(lines) + "\n"


def _write(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_table(args) -> int:
    if args.family is not None:
        G = resolve_group(args.family, args.params or [])
    elif args.group is not None:
        G = resolve_group(args.group)
    else:
        raise InputError("give a group (file, family:params or corpus name) or --family")
    table = character_table(G)
    if args.format == "json":
        _write(json.dumps(table_to_dict(table), indent=2) + "\n", args.out)
    else:
        _write(render_table_text(table), args.out)
    return EXIT_OK


def cmd_inv(args) -> int:
    G = resolve_group(args.group)
    variant = Variant(args.variant)
    if args.format == "json":
        report = invariant_report(G, primes=sorted({2, args.p}))
        doc = report.to_dict()
        doc["requested"] = {"p": args.p, "variant": variant.value,
                            "acd": fmt(acd(character_table(G), args.p, variant))}
        _write(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        _write(render_invariants_text(G, args.p, variant), args.out)
    return EXIT_OK


def _corpus(args):
    return args.corpus if args.corpus else bundled_manifest_path()


def cmd_verify(args) -> int:
    results = [verify(t, _corpus(args), jobs=args.jobs) for t in args.thm]
    payload = results[0] if len(results) == 1 else results
    text = emit_report(payload, args.format, args.out)
    if not args.out:
        sys.stdout.write(text)
    else:
        for r in results:
            c = r.counts()
            print(f"{r.theorem}: {c['satisfies']} satisfies, {c['vacuous']} vacuous, "
                  f"{c['VIOLATION']} violations", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VIOLATION


def cmd_conjecture(args) -> int:
    result = explore_conjecture(args.p, _corpus(args), jobs=args.jobs)
    text = emit_report(result, args.format, args.out)
    if not args.out:
        sys.stdout.write(text)
    for note in result.notes:
        print(note, file=sys.stderr)
    return EXIT_OK if result.passed else EXIT_VIOLATION


def cmd_checks(args) -> int:
    result = run_structural_checks(_corpus(args), jobs=args.jobs)
    text = emit_report(result, args.format, args.out)
    if not args.out:
        sys.stdout.write(text)
    return EXIT_OK if result.passed else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="acdlab", description="Character tables and average character degrees.")
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="print a character table")
    t.add_argument("group", nargs="?", help=".perm file, family:params or bundled group name")
    t.add_argument("--family", help="family name (params via --params)")
    t.add_argument("--params", nargs="*", help="family parameters")
    t.add_argument("--format", choices=("text", "json"), default="text")
    t.add_argument("--out")
    t.set_defaults(func=cmd_table)

    i = sub.add_parser("inv", help="average-degree invariants of one group")
    i.add_argument("group")
    i.add_argument("--p", type=int, default=2)
    i.add_argument("--variant", choices=("all", "real", "strong"), default="all")
    i.add_argument("--format", choices=("text", "json"), default="text")
    i.add_argument("--out")
    i.set_defaults(func=cmd_inv)

    def corpus_opts(sp, fmt_default="json"):
        sp.add_argument("--corpus", help="manifest JSON (default: the bundled core corpus)")
        sp.add_argument("--out")
        sp.add_argument("--format", choices=("json", "csv", "text"), default=fmt_default)
        sp.add_argument("--jobs", type=int, default=1, help="worker processes")

    v = sub.add_parser("verify", help="sweep theorem statements over a corpus")
    v.add_argument("--thm", action="append", required=True, type=parse_theorem,
                   help="1.1, 1.2, 1.3i, 1.3ii, c1.4i, c1.4ii, ito:P or sharpness (repeatable)")
    corpus_opts(v)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("conjecture", help="extremal acd_p over groups without a normal Sylow p-subgroup")
    c.add_argument("--p", type=int, required=True)
    corpus_opts(c, "text")
    c.set_defaults(func=cmd_conjecture)

    k = sub.add_parser("checks", help="run the structural checks over a corpus")
    corpus_opts(k, "text")
    k.set_defaults(func=cmd_checks)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (InputError, SizeLimitError, ConstructionError, PreconditionError, OSError) as exc:
        print(f"acdlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
