"""Regenerate the bundled corpus: ``src/acdlab/data/groups/*.perm`` and
``src/acdlab/data/core.json``.

Run from the repository root:  python tools/build_corpus_data.py
"""

from __future__ import annotations

import json
from pathlib import Path

from acdlab.corpus import (affine_group, alternating, cyclic, dicyclic, dihedral, elementary_abelian,
                           fingerprint, matrix_group, projective_group, regular_group, write_perm)
from acdlab.group import central_product, direct_product

DATA = Path(__file__).resolve().parent.parent / "src" / "acdlab" / "data"


def _semidirect_cyclic(m: int, k: int, mult: int):
    """``C_m x| C_k`` with the generator of ``C_k`` acting by ``x -> mult*x``."""

    def mul(u, v):
        (i, t), (j, s) = u, v
        return ((i + pow(mult, t, m) * j) % m, (t + s) % k)

    elements = [(i, t) for t in range(k) for i in range(m)]
    return regular_group(elements, mul, [(1, 0), (0, 1)])


def _v4_by_c4():
    """``(C2 x C2) x| C4`` with the generator of ``C4`` swapping the factors."""

    def mul(u, v):
        (a, b, t), (c, d, s) = u, v
        if t % 2:
            c, d = d, c
        return ((a + c) % 2, (b + d) % 2, (t + s) % 4)

    elements = [(a, b, t) for t in range(4) for a in range(2) for b in range(2)]
    return regular_group(elements, mul, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])


def _x(*groups):
    G = groups[0]
    for H in groups[1:]:
        G = direct_product(G, H)
    return G


def small_groups() -> list[tuple[str, object]]:
    """One representative of each of the 42 isomorphism types of order <= 16."""
    C = cyclic
    out = [
        ("C1", C(1)), ("C2", C(2)), ("C3", C(3)), ("C4", C(4)), ("V4", dihedral(2)),
        ("C5", C(5)), ("C6", C(6)), ("S3", dihedral(3)), ("C7", C(7)),
        ("C8", C(8)), ("C4xC2", _x(C(4), C(2))), ("C2^3", elementary_abelian(2, 3)),
        ("D8", dihedral(4)), ("Q8", dicyclic(2)),
        ("C9", C(9)), ("C3xC3", elementary_abelian(3, 2)),
        ("C10", C(10)), ("D10", dihedral(5)), ("C11", C(11)),
        ("C12", C(12)), ("C6xC2", _x(C(6), C(2))), ("A4", alternating(4)), ("D12", dihedral(6)),
        ("Dic3", dicyclic(3)), ("C13", C(13)), ("C14", C(14)), ("D14", dihedral(7)), ("C15", C(15)),
        ("C16", C(16)), ("C4xC4", _x(C(4), C(4))), ("C2^2:C4", _v4_by_c4()),
        ("C4:C4", _semidirect_cyclic(4, 4, 3)), ("C8xC2", _x(C(8), C(2))),
        ("M16", _semidirect_cyclic(8, 2, 5)), ("D16", dihedral(8)), ("SD16", _semidirect_cyclic(8, 2, 3)),
        ("Q16", dicyclic(4)), ("C4xC2^2", _x(C(4), elementary_abelian(2, 2))),
        ("D8xC2", _x(dihedral(4), C(2))), ("Q8xC2", _x(dicyclic(2), C(2))),
        ("C4oD8", central_product(C(4), dihedral(4), _central_involution(C(4)), _central_involution(dihedral(4)))),
        ("C2^4", elementary_abelian(2, 4)),
    ]
    return out


def _central_involution(G) -> int:
    from acdlab.group import center

    return next(int(z) for z in center(G).members if G.element_orders[z] == 2)


Q8_MATS_F3 = [[[0, 1], [2, 0]], [[1, 1], [1, 2]]]


def matrix_groups() -> list[tuple[str, object]]:
    """Groups given by matrices over prime fields, stored as generator files."""
    return [
        ("SL(2,3)", matrix_group([[[1, 1], [0, 1]], [[0, 1], [2, 0]]], 3)),
        ("GL(2,3)", matrix_group([[[1, 1], [0, 1]], [[0, 1], [2, 0]], [[2, 0], [0, 1]]], 3)),
        ("PSL(2,7)", projective_group([[[1, 1], [0, 1]], [[0, 1], [6, 0]]], 7)),
        ("PGL(2,7)", projective_group([[[1, 1], [0, 1]], [[0, 1], [6, 0]], [[3, 0], [0, 1]]], 7)),
        ("PSL(2,11)", projective_group([[[1, 1], [0, 1]], [[0, 1], [10, 0]]], 11)),
        ("PSL(2,13)", projective_group([[[1, 1], [0, 1]], [[0, 1], [12, 0]]], 13)),
        # companion matrix of x^3 + x + 1, then the Frobenius (squaring) map of F_8
        ("C2^3:C7", affine_group([[[0, 1, 0], [0, 0, 1], [1, 1, 0]]], 2)),
        ("C2^3:C7:C3", affine_group([[[0, 1, 0], [0, 0, 1], [1, 1, 0]],
                                     [[1, 0, 0], [0, 0, 1], [0, 1, 1]]], 2)),
        ("C2^4:C5", affine_group([[[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 1, 1]]], 2)),
        ("C2^4:C15", affine_group([[[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 0, 0]]], 2)),
        ("C3^2:C2", affine_group([[[2, 0], [0, 2]]], 3)),
        ("C3^2:C4", affine_group([[[0, 1], [2, 0]]], 3)),
        # x^2 = x + 1 is primitive over F_3, so its companion matrix has order 8
        ("C3^2:C8", affine_group([[[0, 1], [1, 1]]], 3)),
        ("C3^2:D8", affine_group([[[0, 1], [1, 0]], [[1, 0], [0, 2]]], 3)),
        ("C3^2:Q8", affine_group(Q8_MATS_F3, 3)),
        ("C3^2:SD16", affine_group([[[0, 1], [1, 1]], [[1, 0], [1, 2]]], 3)),
        ("ASL(2,3)", affine_group([[[1, 1], [0, 1]], [[0, 1], [2, 0]]], 3)),
        ("AGL(2,3)", affine_group([[[1, 1], [0, 1]], [[0, 1], [2, 0]], [[2, 0], [0, 1]]], 3)),
        ("C5^2:Q8", affine_group([[[0, 1], [4, 0]], [[2, 0], [0, 3]]], 5)),
        ("C5^2:C3", affine_group([[[0, 1], [4, 4]]], 5)),
        # x^2 = x + 3 is primitive over F_5: a Singer cycle of order 24
        ("C5^2:C24", affine_group([[[0, 1], [3, 1]]], 5)),
        ("GL(2,5)", matrix_group([[[1, 1], [0, 1]], [[0, 1], [4, 0]], [[2, 0], [0, 1]]], 5)),
        ("SL(2,7)", matrix_group([[[1, 1], [0, 1]], [[0, 1], [6, 0]]], 7)),
    ]


MATRIX_GROUP_ORDERS = {
    "SL(2,3)": 24, "GL(2,3)": 48, "PSL(2,7)": 168, "PGL(2,7)": 336, "PSL(2,11)": 660,
    "PSL(2,13)": 1092, "C2^3:C7": 56, "C2^3:C7:C3": 168, "C2^4:C5": 80, "C2^4:C15": 240,
    "C3^2:C2": 18, "C3^2:C4": 36, "C3^2:C8": 72, "C3^2:D8": 72, "C3^2:Q8": 72, "C3^2:SD16": 144,
    "ASL(2,3)": 216, "AGL(2,3)": 432, "C5^2:Q8": 200, "C5^2:C3": 75, "C5^2:C24": 600,
    "GL(2,5)": 480, "SL(2,7)": 336,
}


def family_entries() -> list[dict]:
    def fam(name, family, params, order):
        return {"name": name, "family": family, "params": params, "expected_order": order}

    return [
        fam("S4", "symmetric", [4], 24),
        fam("A5", "alternating", [5], 60),
        fam("S5", "symmetric", [5], 120),
        fam("A6", "alternating", [6], 360),
        fam("S6", "symmetric", [6], 720),
        fam("SL(2,5)", "sl25", [], 120),
        fam("2^{1+2}_+", "extraspecial_2", [1, "plus"], 8),
        fam("2^{1+2}_-", "extraspecial_2", [1, "minus"], 8),
        fam("2^{1+4}_+", "extraspecial_2", [2, "plus"], 32),
        fam("2^{1+4}_-", "extraspecial_2", [2, "minus"], 32),
        fam("2^{1+6}_+", "extraspecial_2", [3, "plus"], 128),
        fam("2^{1+6}_-", "extraspecial_2", [3, "minus"], 128),
        fam("2^{1+8}_+", "extraspecial_2", [4, "plus"], 512),
        fam("F20", "frobenius", [5, 4], 20),
        fam("F21", "frobenius", [7, 3], 21),
        fam("F42", "frobenius", [7, 6], 42),
        fam("F55", "frobenius", [11, 5], 55),
        fam("F110", "frobenius", [11, 10], 110),
        fam("F39", "frobenius", [13, 3], 39),
        fam("F52", "frobenius", [13, 4], 52),
        fam("F156", "frobenius", [13, 12], 156),
        fam("F272", "frobenius", [17, 16], 272),
        fam("F171", "frobenius", [19, 9], 171),
        fam("F930", "frobenius", [31, 30], 930),
        fam("F1640", "frobenius", [41, 40], 1640),
        fam("D18", "dihedral", [9], 18),
        fam("D30", "dihedral", [15], 30),
        fam("D32", "dihedral", [16], 32),
        fam("D64", "dihedral", [32], 64),
        fam("Dic5", "dicyclic", [5], 20),
        fam("Dic6", "dicyclic", [6], 24),
        fam("Q32", "dicyclic", [8], 32),
        fam("C24", "cyclic", [24], 24),
        fam("C3^3", "elementary_abelian", [3, 3], 27),
        fam("C2^5", "elementary_abelian", [2, 5], 32),
        fam("C5^2", "elementary_abelian", [5, 2], 25),
        fam("S3xS3", "direct", ["S3", "S3"], 36),
        fam("S3xC3", "direct", ["S3", "C3"], 18),
        fam("A4xC2", "direct", ["A4", "C2"], 24),
        fam("S4xC2", "direct", ["S4", "C2"], 48),
        fam("A5xC2", "direct", ["A5", "C2"], 120),
        fam("A4xA4", "direct", ["A4", "A4"], 144),
        fam("A5xS3", "direct", ["A5", "S3"], 360),
        fam("S4xS3", "direct", ["S4", "S3"], 144),
        fam("D8oQ8", "central", ["D8", "Q8"], 32),
        fam("SL(2,5)oC4", "central", ["SL(2,5)", "C4"], 240),
        fam("C7:C3", "semidirect", ["C7", "C3", "power:2"], 21),
        fam("C3:C8", "semidirect", ["C3", "C8", "inversion"], 24),
        fam("C5:C4", "semidirect", ["C5", "C4", "power:2"], 20),
    ]


def main() -> None:
    groups_dir = DATA / "groups"
    groups_dir.mkdir(parents=True, exist_ok=True)
    for old in groups_dir.glob("*.perm"):
        old.unlink()
    entries = []
    prints = {}
    for name, G in small_groups() + matrix_groups():
        fname = name.replace("(", "").replace(")", "").replace(",", "_").replace(":", "_") + ".perm"
        write_perm(G, groups_dir / fname)
        entries.append({"name": name, "file": f"groups/{fname}", "expected_order": G.order})
        if name in MATRIX_GROUP_ORDERS and G.order != MATRIX_GROUP_ORDERS[name]:
            raise SystemExit(f"{name} has order {G.order}, expected {MATRIX_GROUP_ORDERS[name]}")
        if G.order <= 16:
            fp = fingerprint(G)
            if fp in prints:
                raise SystemExit(f"{name} and {prints[fp]} have the same fingerprint")
            prints[fp] = name
    small = sum(1 for e in entries if e["expected_order"] <= 16)
    if small != 42:
        raise SystemExit(f"expected 42 groups of order <= 16, have {small}")
    entries += family_entries()
    doc = {"version": 1, "cap": 20000, "groups": entries}
    (DATA / "core.json").write_text(json.dumps(doc, indent=1) + "\n")
    print(f"wrote {len(entries)} groups")


if __name__ == "__main__":
    main()
