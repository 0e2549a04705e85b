"""Average character degrees over linear and p-divisible characters.

``acd(table, p, variant)`` averages ``chi(1)`` over the characters whose
degree is 1 or divisible by ``p``; the REAL and STRONG variants restrict
further to real-valued characters and to characters of indicator +1.
Everything is exact (``fractions.Fraction``).
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from sympy import primefactors

from .chartab import CharacterRecord, CharacterTable, character_table
from .errors import InputError
from .group import (FiniteGroup, Subgroup, _check_prime, is_abelian, is_normal,
                    is_solvable, sylow_subgroup)

SCHEMA = "acdlab.invariants/1"


class Variant(enum.Enum):
    ALL = "all"
    REAL = "real"
    STRONG = "strong"

    def admits(self, chi: CharacterRecord) -> bool:
        if self is Variant.ALL:
            return True
        if self is Variant.REAL:
            return chi.is_real
        return chi.is_strongly_real


def _variant(v) -> Variant:
    return v if isinstance(v, Variant) else Variant(str(v).lower())


def irr_subset(table: CharacterTable, p: int, variant=Variant.ALL) -> list[CharacterRecord]:
    p = _check_prime(p)
    variant = _variant(variant)
    return [c for c in table.chars
            if (c.degree == 1 or c.degree % p == 0) and variant.admits(c)]


def acd(table: CharacterTable, p: int, variant=Variant.ALL) -> Fraction:
    chars = irr_subset(table, p, variant)
    return Fraction(sum(c.degree for c in chars), len(chars))


def count_degree(table: CharacterTable, k: int, variant=Variant.ALL) -> int:
    if k < 1:
        raise InputError("degree must be positive")
    variant = _variant(variant)
    return sum(1 for c in table.chars if c.degree == k and variant.admits(c))


def normal_subgroup_classes(table: CharacterTable, N: Subgroup) -> frozenset[int]:
    """Classes of the table's group that make up the normal subgroup ``N``."""
    G = table.group
    if N.parent is not G:
        raise InputError("subgroup does not belong to the table's group")
    if not is_normal(G, N):
        raise InputError("subgroup is not normal")
    return frozenset(int(k) for k in np.unique(table.classes.class_of[N.members]))


def count_degree_rel(table: CharacterTable, k: int, N: Subgroup, variant=Variant.ALL) -> int:
    """Characters of degree ``k`` whose kernel does not contain ``N``."""
    variant = _variant(variant)
    n_classes = normal_subgroup_classes(table, N)
    return sum(1 for c in table.chars
               if c.degree == k and variant.admits(c) and not n_classes <= c.kernel_classes)


def degree_counts(table: CharacterTable, variant=Variant.ALL) -> dict[int, int]:
    variant = _variant(variant)
    return dict(sorted(Counter(c.degree for c in table.chars if variant.admits(c)).items()))


@dataclass(frozen=True)
class PrimeData:
    p: int
    acd: Fraction
    acd_real: Fraction
    acd_strong: Fraction
    has_normal_sylow: bool
    sylow_abelian: bool
    sylow_order: int


@dataclass(frozen=True)
class InvariantReport:
    group: str | None
    order: int
    class_count: int
    primes: dict[int, PrimeData]
    counts: dict[int, int]
    counts_strong: dict[int, int]
    solvable: bool
    degrees: tuple[int, ...] = field(default=())

    def to_dict(self) -> dict:
        def frac(x: Fraction) -> str:
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        return {
            "schema": SCHEMA,
            "group": self.group,
            "order": self.order,
            "class_count": self.class_count,
            "solvable": self.solvable,
            "degrees": list(self.degrees),
            "n": {str(k): v for k, v in self.counts.items()},
            "n_plus": {str(k): v for k, v in self.counts_strong.items()},
            "primes": {
                str(p): {
                    "acd": frac(d.acd),
                    "acd_real": frac(d.acd_real),
                    "acd_strong": frac(d.acd_strong),
                    "normal_sylow": d.has_normal_sylow,
                    "sylow_abelian": d.sylow_abelian,
                    "sylow_order": d.sylow_order,
                }
                for p, d in self.primes.items()
            },
        }


def prime_data(G: FiniteGroup, table: CharacterTable, p: int) -> PrimeData:
    P = sylow_subgroup(G, p)
    return PrimeData(
        p=p,
        acd=acd(table, p, Variant.ALL),
        acd_real=acd(table, p, Variant.REAL),
        acd_strong=acd(table, p, Variant.STRONG),
        has_normal_sylow=is_normal(G, P),
        sylow_abelian=is_abelian(P),
        sylow_order=P.order,
    )


def invariant_report(G: FiniteGroup, primes=None, name: str | None = None) -> InvariantReport:
    """Report for ``primes`` (default: 2 plus every prime dividing |G|)."""
    table = character_table(G)
    if primes is None:
        primes = sorted({2, *primefactors(G.order)})
    primes = [_check_prime(p) for p in primes]
    return InvariantReport(
        group=name if name is not None else G.name,
        order=G.order,
        class_count=len(table),
        primes={p: prime_data(G, table, p) for p in primes},
        counts=degree_counts(table, Variant.ALL),
        counts_strong=degree_counts(table, Variant.STRONG),
        solvable=is_solvable(G),
        degrees=tuple(int(d) for d in table.degrees),
    )


def ito_michler_check(report: InvariantReport) -> bool:
    """``acd_p == 1`` iff the Sylow p-subgroup is normal and abelian, for
    every prime in the report that divides the group order."""
    for p, d in report.primes.items():
        if report.order % p:
            continue
        if (d.acd == 1) != (d.has_normal_sylow and d.sylow_abelian):
            return False
    return True
