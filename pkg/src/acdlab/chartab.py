"""Exact character tables by the Dixon-Schneider method.

Outline: the class matrices of the group act on ``F_p^r`` (``r`` classes,
``p`` a Dixon prime) and their common eigenvectors are exactly the central
characters ``omega_chi(K) = |K| chi(g_K) / chi(1)`` reduced mod ``p``.  The
degree follows from the orthogonality normalization and the values are
lifted to sums of roots of unity through their eigenvalue multiplicities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _kernels
from .classes import ConjugacyData, conjugacy_classes
from .cyclotomic import (CyclotomicValue, centered, embed, prime_with_root,
                         require_integer, units)
from .errors import InternalError
from .group import FiniteGroup
from .modp import DixonPrime, choose_dixon_prime, split_common_eigenspaces


@dataclass(frozen=True, eq=False)
class CharacterRecord:
    """One irreducible character; ``mults[k]`` is the eigenvalue multiplicity
    vector of the representing matrix of class ``k``'s representative."""

    index: int
    degree: int
    mults: np.ndarray = field(repr=False)
    fs_indicator: int
    is_real: bool
    is_strongly_real: bool
    kernel_classes: frozenset[int] = field(repr=False)

    @property
    def values(self) -> tuple[CyclotomicValue, ...]:
        return tuple(CyclotomicValue.from_array(row) for row in self.mults)

    def value(self, k: int) -> CyclotomicValue:
        return CyclotomicValue.from_array(self.mults[k])

    def complex_values(self) -> np.ndarray:
        e = self.mults.shape[1]
        roots = np.exp(2j * np.pi * np.arange(e) / e)
        return self.mults @ roots

    def is_linear(self) -> bool:
        return self.degree == 1

    def is_trivial(self) -> bool:
        return self.degree == 1 and len(self.kernel_classes) == self.mults.shape[0]


@dataclass(frozen=True, eq=False)
class CharacterTable:
    group: FiniteGroup
    classes: ConjugacyData
    chars: tuple[CharacterRecord, ...]
    dixon: DixonPrime

    def __len__(self) -> int:
        return len(self.chars)

    def __iter__(self):
        return iter(self.chars)

    def __getitem__(self, i) -> CharacterRecord:
        return self.chars[i]

    @property
    def e(self) -> int:
        return self.dixon.e

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.array([c.degree for c in self.chars], dtype=np.int64)

    @cached_property
    def indicators(self) -> np.ndarray:
        return np.array([c.fs_indicator for c in self.chars], dtype=np.int64)

    @cached_property
    def mults(self) -> np.ndarray:
        """All multiplicity vectors, shape ``(characters, classes, e)``."""
        return np.stack([c.mults for c in self.chars])

    def complex_table(self) -> np.ndarray:
        return np.array([c.complex_values() for c in self.chars])


def class_matrix(G: FiniteGroup, classes: ConjugacyData, j: int) -> np.ndarray:
    """``M[i, k] = a_{jik} = #{(x, y) in K_j x K_i : xy = g_k}``."""
    r = classes.count
    xs_inv = G.inverse[classes.members[j]]
    reps = classes.class_reps
    out = np.zeros((r, r), dtype=np.int64)
    step = max(1, (1 << 22) // r)
    for s in range(0, xs_inv.size, step):
        prods = np.asarray(G.mul(xs_inv[s : s + step, None], reps[None, :]))
        out += _kernels.count_classes(classes.class_of[prods], r)
    return out


def _class_matrices(G, classes):
    for j in range(1, classes.count):
        yield class_matrix(G, classes, j)


def _lift_values(chi_modp: np.ndarray, classes: ConjugacyData, dixon: DixonPrime,
                 degrees: np.ndarray) -> np.ndarray:
    """Multiplicity vectors ``(characters, classes, e)`` from values mod p."""
    p, e, zeta = dixon.p, dixon.e, dixon.zeta_modp
    nchar, r = chi_modp.shape
    mults = np.zeros((nchar, r, e), dtype=np.int64)
    for o in np.unique(classes.rep_orders):
        o = int(o)
        ks = np.nonzero(classes.rep_orders == o)[0]
        zeta_o = pow(zeta, e // o, p)
        # z[s, u] = zeta_o ** (-s u)
        zinv = pow(zeta_o, p - 2, p)
        pw = np.empty(o, dtype=np.int64)
        acc = 1
        for s in range(o):
            pw[s] = acc
            acc = acc * zinv % p
        s_idx = np.arange(o)
        z = pw[(s_idx[:, None] * s_idx[None, :]) % o]
        o_inv = pow(o, p - 2, p)
        for k in ks:
            x = chi_modp[:, classes.power_map[k, :o]]
            m = _kernels.matmul_mod(np.ascontiguousarray(x), z, p) * o_inv % p
            if np.any(m > degrees[:, None]) or np.any(m.sum(axis=1) != degrees):
                raise InternalError(f"eigenvalue multiplicities for class {k} do not lift")
            mults[:, k, :: e // o] = m
    return mults


def character_table(G: FiniteGroup) -> CharacterTable:
    cached = G.__dict__.get("_character_table")
    if cached is not None:
        return cached
    classes = conjugacy_classes(G)
    dixon = choose_dixon_prime(G)
    p = dixon.p
    r = classes.count
    n = G.order
    spaces = split_common_eigenspaces(_class_matrices(G, classes), r, p)
    if len(spaces) != r or any(b.shape[1] != 1 for b in spaces):
        raise InternalError("common eigenspaces did not refine to lines")

    h_inv = np.array([pow(int(h), p - 2, p) for h in classes.class_sizes], dtype=np.int64)
    inv_cls = classes.inv_class
    dmax = math.isqrt(n)
    squares = {d * d % p: d for d in range(1, dmax + 1)}
    degrees = np.empty(r, dtype=np.int64)
    chi_modp = np.empty((r, r), dtype=np.int64)
    for c, b in enumerate(spaces):
        w = b[:, 0] % p
        if w[0] != 1:
            w = w * pow(int(w[0]), p - 2, p) % p
        norm = int((w * w[inv_cls] % p * h_inv % p).sum() % p)
        d_sq = n % p * pow(norm, p - 2, p) % p
        d = squares.get(d_sq)
        if d is None:
            raise InternalError("no admissible degree matches the orthogonality normalization")
        degrees[c] = d
        chi_modp[c] = d * w % p * h_inv % p

    mults = _lift_values(chi_modp, classes, dixon, degrees)
    _check_reduction(mults, chi_modp, dixon)

    key = [(int(degrees[c]), tuple((-mults[c]).ravel().tolist())) for c in range(r)]
    order = sorted(range(r), key=key.__getitem__)
    chars = []
    for i, c in enumerate(order):
        chars.append(_make_record(i, int(degrees[c]), mults[c], classes, n))
    table = CharacterTable(group=G, classes=classes, chars=tuple(chars), dixon=dixon)
    G.__dict__["_character_table"] = table
    return table


def _check_reduction(mults, chi_modp, dixon):
    p, e = dixon.p, dixon.e
    zp = np.array([pow(dixon.zeta_modp, t, p) for t in range(e)], dtype=np.int64)
    back = _kernels.matmul_mod(mults.reshape(-1, e), zp[:, None], p).reshape(chi_modp.shape)
    if not np.array_equal(back, chi_modp):
        raise InternalError("lifted values do not reduce to the eigenvector data")


def _make_record(index, degree, mults, classes, order) -> CharacterRecord:
    mults = np.ascontiguousarray(mults.astype(np.int32))
    mults.setflags(write=False)
    nu = _indicator_from_mults(mults, classes, order)
    reversed_ok = bool(np.array_equal(mults, mults[:, (-np.arange(mults.shape[1])) % mults.shape[1]]))
    inv_ok = bool(np.array_equal(mults, mults[classes.inv_class]))
    if reversed_ok != inv_ok or (nu != 0) != reversed_ok:
        raise InternalError(f"character {index}: realness tests disagree "
                            f"(indicator {nu}, conjugation {reversed_ok}, inverse classes {inv_ok})")
    kernel = frozenset(int(k) for k in range(mults.shape[0]) if mults[k, 0] == degree)
    return CharacterRecord(index=index, degree=degree, mults=mults, fs_indicator=nu,
                           is_real=nu != 0, is_strongly_real=nu == 1, kernel_classes=kernel)


def _indicator_from_mults(mults, classes, order) -> int:
    total = (classes.class_sizes[:, None] * mults[classes.sq_class].astype(np.int64)).sum(axis=0)
    value = require_integer(total, "Frobenius-Schur sum")
    nu, rem = divmod(value, order)
    if rem or nu not in (-1, 0, 1):
        raise InternalError(f"Frobenius-Schur indicator {value}/{order} is not -1, 0 or 1")
    return nu


def frobenius_schur_indicator(table: CharacterTable, chi: int | CharacterRecord) -> int:
    """``(1/|G|) sum_k |K_k| chi(g_k^2)``, evaluated exactly."""
    rec = table.chars[chi] if isinstance(chi, (int, np.integer)) else chi
    if rec is not table.chars[rec.index]:
        raise ValueError("character does not belong to this table")
    return _indicator_from_mults(rec.mults, table.classes, table.group.order)


# ---------------------------------------------------------------------------
# self check
# ---------------------------------------------------------------------------


@dataclass
class SelfCheckReport:
    failures: list[str] = field(default_factory=list)
    passed: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def raise_on_failure(self):
        if self.failures:
            raise InternalError("; ".join(self.failures))


def inner_product_matrix(table: CharacterTable) -> np.ndarray:
    """``|G| <chi_i, chi_j>`` for all pairs, exactly.

    Every Galois image of every entry is computed modulo a prime ``q`` larger
    than twice the bound ``|G| chi_i(1) chi_j(1)``; entries are accepted only
    when all images agree, which pins down the integer exactly.
    """
    G, cd = table.group, table.classes
    e = table.e
    mults = table.mults.astype(np.int64)
    nchar = mults.shape[0]
    dmax = int(table.degrees.max())
    bound = G.order * dmax * dmax
    q, zeta = prime_with_root(e, 2 * bound + 1)
    fs = units(e)
    neg = (-fs) % e
    both = np.concatenate([fs, neg])
    images = embed(mults, q, zeta, both)  # (chars, classes, 2*len(fs))
    h = cd.class_sizes % q
    result = None
    for j in range(fs.size):
        a = images[:, :, j] * h[None, :] % q
        b = images[:, :, fs.size + j]
        gram = _kernels.matmul_mod(np.ascontiguousarray(a), np.ascontiguousarray(b.T), q)
        if result is None:
            result = gram
        elif not np.array_equal(gram, result):
            raise InternalError("inner products are not rational")
    assert result is not None
    return np.vectorize(lambda x: centered(int(x), q), otypes=[np.int64])(result).reshape(nchar, nchar)


def table_self_check(table: CharacterTable) -> SelfCheckReport:
    rep = SelfCheckReport()
    G, cd = table.group, table.classes
    n = G.order
    degs = table.degrees

    label = "sum of squared degrees equals |G|"
    total = int((degs**2).sum())
    (rep.passed if total == n else rep.failures).append(
        label if total == n else f"{label}: got {total}, |G| = {n}")

    label = "character count equals class count"
    ok = len(table.chars) == cd.count
    (rep.passed if ok else rep.failures).append(
        label if ok else f"{label}: {len(table.chars)} characters, {cd.count} classes")

    label = "row orthogonality"
    try:
        gram = inner_product_matrix(table)
        bad = np.argwhere(gram != n * np.eye(len(table.chars), dtype=np.int64))
        if bad.size:
            i, j = bad[0]
            rep.failures.append(f"{label}: <chi_{i}, chi_{j}> * |G| = {gram[i, j]}")
        else:
            rep.passed.append(label)
    except InternalError as exc:
        rep.failures.append(f"{label}: {exc}")

    label = "sum of indicator * degree counts solutions of g^2 = 1"
    lhs = int((table.indicators * degs).sum())
    allidx = np.arange(n)
    rhs = int(np.count_nonzero(np.asarray(G.mul(allidx, allidx)) == 0))
    (rep.passed if lhs == rhs else rep.failures).append(
        label if lhs == rhs else f"{label}: {lhs} != {rhs}")

    label = "identity column equals degrees"
    first = [require_integer(c.mults[0].astype(np.int64), "chi(1)") for c in table.chars]
    bad = [i for i, (v, d) in enumerate(zip(first, degs)) if v != d]
    (rep.passed if not bad else rep.failures).append(
        label if not bad else f"{label}: character {bad[0]} has chi(1) = {first[bad[0]]}")

    label = "degrees divide |G|"
    bad = [i for i, d in enumerate(degs) if n % int(d)]
    (rep.passed if not bad else rep.failures).append(
        label if not bad else f"{label}: character {bad[0]} has degree {degs[bad[0]]}")
    return rep


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------


def table_to_dict(table: CharacterTable) -> dict:
    """Stable JSON-ready form; values are eigenvalue multiplicity vectors
    over the ``e``-th roots of unity, ``e`` the group exponent."""
    G, cd = table.group, table.classes
    classes = []
    for k in range(cd.count):
        perm = G.permutation(int(cd.class_reps[k]))
        classes.append({
            "index": k,
            "size": int(cd.class_sizes[k]),
            "element_order": int(cd.rep_orders[k]),
            "cycle_type": list(perm.cycle_type()),
            "representative": str(perm),
        })
    chars = []
    for c in table.chars:
        chars.append({
            "index": c.index,
            "degree": c.degree,
            "indicator": c.fs_indicator,
            "real": c.is_real,
            "strongly_real": c.is_strongly_real,
            "values": [row.tolist() for row in c.mults],
        })
    return {
        "schema": "acdlab.table/1",
        "group": G.name,
        "order": G.order,
        "exponent": table.e,
        "dixon_prime": table.dixon.p,
        "classes": classes,
        "characters": chars,
    }
