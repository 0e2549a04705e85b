"""Action of a group on the characters of a normal subgroup, and the
structural checks built on it.

Every ``check_*`` function returns a :class:`CheckReport`.  Hypotheses that
are decided computationally and fail give ``not-applicable`` (or raise
:class:`PreconditionError` where the caller must supply a suitable input);
a ``fail`` verdict means the checked inequality itself was violated.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .chartab import CharacterRecord, CharacterTable, character_table
from .cyclotomic import conjugate_vec, convolve, rational_integer, rescale
from .errors import InternalError, PreconditionError
from .group import (FiniteGroup, Subgroup, frattini_of_p_group, is_abelian, is_normal,
                    minimal_normal_subgroups, p_part, subgroup_generated, sylow_subgroup)
from .invariants import Variant, acd, count_degree

PASS = "pass"
FAIL = "fail"
VACUOUS = "vacuous"
NOT_APPLICABLE = "not-applicable"
SKIPPED = "conditional-skipped"


@dataclass(frozen=True)
class Comparison:
    label: str
    lhs: Fraction
    rhs: Fraction
    relation: str = "<="

    @property
    def holds(self) -> bool:
        if self.relation == "<=":
            return self.lhs <= self.rhs
        if self.relation == ">=":
            return self.lhs >= self.rhs
        if self.relation == "==":
            return self.lhs == self.rhs
        raise ValueError(self.relation)

    def to_dict(self) -> dict:
        return {"label": self.label, "lhs": _fmt(self.lhs), "relation": self.relation,
                "rhs": _fmt(self.rhs), "holds": self.holds}


def _fmt(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass
class CheckReport:
    check: str
    group: str | None
    verdict: str
    hypotheses: dict[str, bool] = field(default_factory=dict)
    comparisons: list[Comparison] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "group": self.group,
            "verdict": self.verdict,
            "hypotheses": dict(self.hypotheses),
            "comparisons": [c.to_dict() for c in self.comparisons],
            "notes": self.notes,
        }


# ---------------------------------------------------------------------------
# the action on Irr(N)
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class InertiaData:
    normal_subgroup: Subgroup
    table: CharacterTable
    orbits: tuple[tuple[int, ...], ...]
    orbit_of: tuple[int, ...]
    generator_actions: np.ndarray = field(repr=False)

    @property
    def orbit_sizes(self) -> tuple[int, ...]:
        return tuple(len(o) for o in self.orbits)

    def inertia_index(self, phi: int) -> int:
        """``|G : I_G(phi)|``, the size of the orbit of ``phi``."""
        return len(self.orbits[self.orbit_of[phi]])

    def d_value(self, phi: int) -> int:
        return self.table.chars[phi].degree * self.inertia_index(phi)


def subgroup_table(N: Subgroup) -> CharacterTable:
    """Character table of ``N`` as a group in its own right (cached on N)."""
    cached = N.__dict__.get("_table")
    if cached is None:
        cached = character_table(N.as_group())
        N.__dict__["_table"] = cached
    return cached


def _fusion(N: Subgroup, table_N: CharacterTable) -> np.ndarray:
    """Parent-group element index of each class representative of N."""
    return N.members[table_N.classes.class_reps]


def conjugated_class_map(G: FiniteGroup, N: Subgroup, table_N: CharacterTable, g: int) -> np.ndarray:
    """``cmap[c]`` = N-class of ``g^-1 x_c g``."""
    reps = _fusion(N, table_N)
    images = np.asarray(G.conj(reps, g))
    return table_N.classes.class_of[np.searchsorted(N.members, images)]


def _char_lookup(table: CharacterTable) -> dict[bytes, int]:
    return {c.mults.tobytes(): c.index for c in table.chars}


def action_on_irr(G: FiniteGroup, N: Subgroup) -> InertiaData:
    """Orbits of ``G`` on ``Irr(N)`` under ``theta^g(x) = theta(g^-1 x g)``."""
    if N.parent is not G or not is_normal(G, N):
        raise PreconditionError("action on characters needs a normal subgroup of G")
    table_N = subgroup_table(N)
    lookup = _char_lookup(table_N)
    nchar = len(table_N)
    actions = np.empty((len(G.gens), nchar), dtype=np.int64)
    for s, g in enumerate(G.gens):
        cmap = conjugated_class_map(G, N, table_N, g)
        for c in table_N.chars:
            image = np.ascontiguousarray(c.mults[cmap])
            j = lookup.get(image.tobytes())
            if j is None:
                raise InternalError("conjugate of an irreducible character is not in the table")
            actions[s, c.index] = j
    labels = np.asarray(_kernels.orbit_labels(actions)) if len(G.gens) else np.arange(nchar)
    orbits: dict[int, list[int]] = {}
    for i, lab in enumerate(labels):
        orbits.setdefault(int(lab), []).append(i)
    ordered = tuple(tuple(v) for _, v in sorted(orbits.items()))
    orbit_of = [0] * nchar
    for oi, orb in enumerate(ordered):
        for i in orb:
            orbit_of[i] = oi
    index = G.order // N.order
    if any(index % len(o) for o in ordered):
        raise InternalError("an orbit size does not divide |G:N|")
    return InertiaData(N, table_N, ordered, tuple(orbit_of), actions)


def restriction_multiplicity(table_G: CharacterTable, chi, N: Subgroup,
                             table_N: CharacterTable, phi) -> int:
    """``[chi|_N, phi]`` computed exactly over the classes of N."""
    chi = table_G.chars[chi] if not isinstance(chi, CharacterRecord) else chi
    phi = table_N.chars[phi] if not isinstance(phi, CharacterRecord) else phi
    G = table_G.group
    if N.parent is not G or table_N.group.order != N.order:
        raise PreconditionError("tables do not match the subgroup")
    e = table_G.e
    in_g = table_G.classes.class_of[_fusion(N, table_N)]
    phi_vecs = rescale(conjugate_vec(phi.mults.astype(np.int64)), e)
    chi_vecs = chi.mults.astype(np.int64)
    total = np.zeros(e, dtype=np.int64)
    for c, size in enumerate(table_N.classes.class_sizes):
        total += int(size) * convolve(chi_vecs[in_g[c]], phi_vecs[c])
    value = rational_integer(total)
    if value is None or value % N.order or value < 0:
        raise InternalError(f"restriction multiplicity {value}/{N.order} is not a natural number")
    return value // N.order


def restriction_matrix(table_G: CharacterTable, N: Subgroup, table_N: CharacterTable) -> np.ndarray:
    return np.array([[restriction_multiplicity(table_G, chi, N, table_N, phi) for phi in table_N.chars]
                     for chi in table_G.chars], dtype=np.int64)


# ---------------------------------------------------------------------------
# counting inequalities for a nonabelian minimal normal subgroup
# ---------------------------------------------------------------------------


def check_counting_inequalities(G: FiniteGroup, N: Subgroup, phi: int, assume_extends: bool,
                                strongly_real_extends: bool = False) -> CheckReport:
    """Bounds on ``n_1`` and ``n_2`` from a character ``phi`` of ``N`` that
    extends to its inertia group (extendibility is supplied by the caller)."""
    if N.parent is not G or not is_normal(G, N):
        raise PreconditionError("N is not a normal subgroup of G")
    if is_abelian(N):
        raise PreconditionError("N is abelian")
    if not any(M.same_as(N) for M in minimal_normal_subgroups(G)):
        raise PreconditionError("N is not a minimal normal subgroup")
    report = CheckReport("counting_inequalities", G.name, SKIPPED,
                         hypotheses={"normal": True, "nonabelian": True, "minimal_normal": True,
                                     "extends_to_inertia_group": bool(assume_extends)})
    if not assume_extends:
        return report
    inertia = action_on_irr(G, N)
    table = character_table(G)
    idx = inertia.inertia_index(phi)
    d = inertia.d_value(phi)
    n = lambda k, v=Variant.ALL: count_degree(table, k, v)  # noqa: E731
    report.notes = {"phi_degree": inertia.table.chars[phi].degree, "inertia_index": idx, "d": d}
    report.comparisons.append(Comparison("(i) n_1(G) <= n_d(G)|G:I|", Fraction(n(1)), Fraction(n(d) * idx)))
    if strongly_real_extends:
        report.comparisons.append(Comparison(
            "(ii) n_1+(G) <= n_d+(G)|G:I|", Fraction(n(1, Variant.STRONG)),
            Fraction(n(d, Variant.STRONG) * idx)))
    report.comparisons.append(Comparison(
        "(iii) n_2(G) <= n_2d(G)|G:I| + n_d(G)|G:I|/2", Fraction(n(2)),
        Fraction(n(2 * d) * idx) + Fraction(n(d) * idx, 2)))
    if idx == 1:
        report.comparisons.append(Comparison("invariant phi: n_2(G) <= n_2d(G)", Fraction(n(2)),
                                             Fraction(n(2 * d))))
    report.verdict = PASS if all(c.holds for c in report.comparisons) else FAIL
    return report


# ---------------------------------------------------------------------------
# orbit parity for split extensions by an abelian normal subgroup
# ---------------------------------------------------------------------------


def find_complement(G: FiniteGroup, N: Subgroup, budget: int = 5000) -> Subgroup | None:
    """A subgroup ``M`` with ``|M| = |G:N|`` and ``M & N = 1``, or None.

    Depth-first over subgroups generated by elements outside ``HN``; the
    number of subgroup closures is capped by ``budget``.
    """
    target = G.order // N.order
    if target == 1:
        return subgroup_generated(G, [])
    orders = G.element_orders
    cands = np.nonzero((target % orders == 0) & ~N.mask)[0]
    seen: set[bytes] = set()
    stack = [subgroup_generated(G, [])]
    while stack:
        H = stack.pop()
        HN = np.zeros(G.order, dtype=bool)
        HN[np.asarray(G.mul(H.members[:, None], N.members[None, :])).ravel()] = True
        for x in cands:
            if HN[x]:
                continue
            budget -= 1
            if budget < 0:
                return None
            K = subgroup_generated(G, H.gens + (int(x),))
            key = K.members.tobytes()
            if key in seen:
                continue
            seen.add(key)
            if target % K.order or np.count_nonzero(N.mask[K.members]) > 1:
                continue
            if K.order == target:
                return K
            stack.append(K)
    return None


def check_orbit_parity(G: FiniteGroup, N: Subgroup, complement: Subgroup | None = None) -> CheckReport:
    """With ``G = N x| M``, ``N`` abelian and no nontrivial ``M``-invariant
    character of ``N``: if ``acd_2(G) < 4/3`` every orbit on ``Irr(N)`` is odd."""
    if N.parent is not G or not is_normal(G, N):
        raise PreconditionError("N is not a normal subgroup of G")
    if not is_abelian(N):
        raise PreconditionError("N is not abelian")
    M = complement if complement is not None else find_complement(G, N)
    if M is None:
        raise PreconditionError("no complement to N found")
    inertia = action_on_irr(G, N)
    # N abelian acts trivially on Irr(N), so M-orbits are G-orbits
    fixed = [o for o in inertia.orbits if len(o) == 1 and not inertia.table.chars[o[0]].is_trivial()]
    if fixed:
        raise PreconditionError("a nontrivial character of N is M-invariant")
    a2 = acd(character_table(G), 2)
    sizes = sorted(inertia.orbit_sizes)
    report = CheckReport("orbit_parity", G.name, VACUOUS,
                         hypotheses={"normal": True, "abelian": True, "split": True,
                                     "no_invariant_character": True, "acd_2_below_4/3": a2 < Fraction(4, 3)},
                         notes={"acd_2": _fmt(a2), "orbit_sizes": dict(sorted(Counter(sizes).items())),
                                "complement_order": M.order})
    if a2 < Fraction(4, 3):
        even = sum(1 for s in sizes if s % 2 == 0)
        report.comparisons.append(Comparison("orbits of even size", Fraction(even), Fraction(0), "=="))
        report.verdict = PASS if even == 0 else FAIL
    return report


# ---------------------------------------------------------------------------
# split extensions of an odd abelian group by a 2-group
# ---------------------------------------------------------------------------


def odd_by_two_hypotheses(G: FiniteGroup) -> tuple[dict[str, bool], Subgroup | None, Subgroup | None]:
    """Decide whether ``G = N x| P`` with ``P`` a 2-group and ``N`` abelian
    of odd order, the unique minimal normal subgroup."""
    hyp = {"nontrivial": G.order > 1}
    if G.order == 1:
        return hyp, None, None
    mins = minimal_normal_subgroups(G)
    hyp["unique_minimal_normal"] = len(mins) == 1
    if len(mins) != 1:
        return hyp, None, None
    N = mins[0]
    hyp["N_abelian"] = is_abelian(N)
    hyp["N_odd"] = N.order % 2 == 1
    index = G.order // N.order
    hyp["index_power_of_2"] = p_part(index, 2) == index
    if not all(hyp.values()):
        return hyp, N, None
    P = sylow_subgroup(G, 2)
    return hyp, N, P


def check_frattini_bound(G: FiniteGroup) -> CheckReport:
    """``|N| - 1 >= |P : Phi(P)|``."""
    hyp, N, P = odd_by_two_hypotheses(G)
    report = CheckReport("frattini_bound", G.name, NOT_APPLICABLE, hypotheses=hyp)
    if P is None:
        return report
    phi = frattini_of_p_group(P, 2)
    report.comparisons.append(Comparison("|N| - 1 >= |P:Phi(P)|", Fraction(N.order - 1),
                                         Fraction(P.order // phi.order), ">="))
    report.notes = {"N_order": N.order, "P_order": P.order, "frattini_order": phi.order}
    report.verdict = PASS if report.comparisons[0].holds else FAIL
    return report


def check_acd_plus_bound(G: FiniteGroup) -> CheckReport:
    """``acd_{2,+}(G) >= 4/3`` when additionally ``P`` is nontrivial."""
    hyp, N, P = odd_by_two_hypotheses(G)
    if P is not None:
        hyp["P_nontrivial"] = P.order > 1
    report = CheckReport("acd_plus_bound", G.name, NOT_APPLICABLE, hypotheses=hyp)
    if P is None or P.order == 1:
        return report
    value = acd(character_table(G), 2, Variant.STRONG)
    report.comparisons.append(Comparison("acd_2+(G) >= 4/3", value, Fraction(4, 3), ">="))
    report.verdict = PASS if report.comparisons[0].holds else FAIL
    return report


def check_odd_index_real_extension(G: FiniteGroup, N: Subgroup) -> CheckReport:
    """Every strongly real character of ``N`` lies under exactly one strongly
    real character of ``G`` when ``|G:N|`` is odd."""
    if N.parent is not G or not is_normal(G, N):
        raise PreconditionError("N is not a normal subgroup of G")
    if (G.order // N.order) % 2 == 0:
        raise PreconditionError("|G:N| is even")
    table_G = character_table(G)
    table_N = subgroup_table(N)
    strong_G = [c for c in table_G.chars if c.is_strongly_real]
    report = CheckReport("odd_index_real_extension", G.name, PASS,
                         hypotheses={"normal": True, "odd_index": True})
    over = {}
    for phi in table_N.chars:
        if not phi.is_strongly_real:
            continue
        above = [chi.index for chi in strong_G
                 if restriction_multiplicity(table_G, chi, N, table_N, phi) > 0]
        over[phi.index] = above
        report.comparisons.append(Comparison(f"strongly real characters over phi_{phi.index}",
                                             Fraction(len(above)), Fraction(1), "=="))
    report.notes = {"over": {str(k): v for k, v in over.items()}}
    if not all(c.holds for c in report.comparisons):
        report.verdict = FAIL
    return report
