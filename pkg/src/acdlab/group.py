"""Fully enumerated finite permutation groups.

Elements are referred to by index.  Index 0 is always the identity.
Composition acts on the right: ``mul(a, b)`` is "apply a, then b", so for
the underlying permutations ``(a*b)[i] == b[a[i]]``.

Groups up to ``TABLE_LIMIT`` elements carry a full multiplication table;
larger ones (up to the enumeration cap) compose permutations on demand and
find the product by a hashed lookup.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import ConstructionError, InputError, SizeLimitError

DEFAULT_CAP = 20000
TABLE_LIMIT = 4096


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{0, ..., degree-1}`` given by its image list."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise InputError(f"not a permutation: {list(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        images = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise InputError("cannot compose permutations of different degree")
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def __str__(self) -> str:
        parts = ["(" + " ".join(map(str, c)) + ")" for c in self.cycles() if len(c) > 1]
        return "".join(parts) or "()"


def _as_rows(gens) -> np.ndarray:
    rows = []
    if not gens:
        return np.zeros((0, 0), dtype=np.int32)
    for g in gens:
        images = g.images if isinstance(g, Permutation) else tuple(int(x) for x in g)
        rows.append(images)
    degrees = {len(r) for r in rows}
    if len(degrees) > 1:
        raise InputError(f"generators have different degrees: {sorted(degrees)}")
    for r in rows:
        Permutation(r)  # validates bijectivity
    return np.array(rows, dtype=np.int32).reshape(len(rows), -1)


class FiniteGroup:
    """An enumerated finite group with index-based multiplication.

    Do not call the constructor directly; use :func:`enumerate_from_generators`
    or :meth:`from_table`.
    """

    def __init__(self, perms, *, table=None, rgen=None, gens=(), name=None):
        self.perms = np.ascontiguousarray(perms, dtype=np.int32)
        self.perms.setflags(write=False)
        self._table = table
        if table is not None:
            table.setflags(write=False)
        self.gens = tuple(int(g) for g in gens)
        self._rgen = rgen
        self.name = name
        if table is None:
            self._build_lookup()

    # -- construction -----------------------------------------------------

    @classmethod
    def from_table(cls, table, gens=None, name=None) -> "FiniteGroup":
        """Group given by its multiplication table, realized by the right
        regular action (element ``a`` acts as ``x -> x*a``)."""
        table = np.ascontiguousarray(table, dtype=np.int32)
        n = table.shape[0]
        if table.shape != (n, n) or not np.array_equal(table[0], np.arange(n)):
            raise InputError("table must be square with identity at index 0")
        g = cls(table.T.copy(), table=table, name=name)
        g.gens = tuple(gens) if gens is not None else _greedy_generators(g)
        return g

    def _build_lookup(self):
        n, deg = self.perms.shape
        rng = np.random.default_rng(0x5EED)
        for _ in range(8):
            w = rng.integers(1, 2**63, size=deg, dtype=np.uint64)
            keys = self._hash(self.perms, w)
            order = np.argsort(keys, kind="stable")
            sk = keys[order]
            if n < 2 or np.all(sk[1:] != sk[:-1]):
                self._hash_w = w
                self._sorted_keys = sk
                self._key_order = order
                return
        raise RuntimeError("could not find a collision-free element hash")

    @staticmethod
    def _hash(rows, w):
        with np.errstate(over="ignore"):
            return (rows.astype(np.uint64) * w).sum(axis=-1, dtype=np.uint64)

    # -- basic structure --------------------------------------------------

    @property
    def order(self) -> int:
        return self.perms.shape[0]

    def __len__(self) -> int:
        return self.order

    @property
    def degree(self) -> int:
        return self.perms.shape[1]

    @property
    def has_table(self) -> bool:
        return self._table is not None

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            raise InputError(f"group of order {self.order} has no multiplication table")
        return self._table

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<FiniteGroup{label} order={self.order} degree={self.degree}>"

    def index_of(self, rows) -> np.ndarray:
        """Element indices of permutation rows (shape ``(..., degree)``)."""
        rows = np.asarray(rows)
        if self._table is not None and not hasattr(self, "_hash_w"):
            self._build_lookup()
        keys = self._hash(rows, self._hash_w)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, self.order - 1)
        idx = self._key_order[pos]
        if not np.array_equal(self.perms[idx], rows):
            raise KeyError("permutation is not an element of this group")
        return idx

    def mul(self, a, b):
        """Product index (or array of indices, broadcasting) of ``a*b``."""
        if self._table is not None:
            return self._table[a, b]
        a = np.asarray(a)
        b = np.asarray(b)
        a, b = np.broadcast_arrays(a, b)
        out = np.empty(a.shape, dtype=np.int64)
        flat_a, flat_b, flat_o = a.ravel(), b.ravel(), out.reshape(-1)
        step = max(1, (1 << 20) // max(1, self.degree))
        for s in range(0, flat_a.size, step):
            pa = self.perms[flat_a[s : s + step]]
            pb = self.perms[flat_b[s : s + step]]
            flat_o[s : s + step] = self.index_of(np.take_along_axis(pb, pa, axis=-1))
        return out if out.ndim else int(out)

    @cached_property
    def inverse(self) -> np.ndarray:
        if self._table is not None:
            inv = np.argmin(self._table, axis=1).astype(np.int64)
        else:
            inv_perms = np.empty_like(self.perms)
            rows = np.arange(self.order)[:, None]
            inv_perms[rows, self.perms] = np.arange(self.degree)[None, :]
            inv = self.index_of(inv_perms)
        inv.setflags(write=False)
        return inv

    @property
    def identity_index(self) -> int:
        return 0

    def conj(self, x, g):
        """``g^-1 x g`` (broadcasting)."""
        return self.mul(self.mul(self.inverse[g], x), g)

    def commutator(self, a, b):
        """``a^-1 b^-1 a b`` (broadcasting)."""
        inv = self.inverse
        return self.mul(self.mul(inv[a], inv[b]), self.mul(a, b))

    def power(self, x, k: int):
        x = np.asarray(x)
        result = np.zeros_like(x)
        base = x
        k = int(k)
        while k > 0:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result if result.ndim else int(result)

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        if self._table is not None:
            orders = np.zeros(n, dtype=np.int64)
            allidx = np.arange(n)
            cur = allidx.copy()
            k = 1
            while True:
                hit = (cur == 0) & (orders == 0)
                orders[hit] = k
                if orders.all():
                    break
                cur = self._table[cur, allidx]
                k += 1
        else:
            # order of a permutation = lcm of its cycle lengths
            n, deg = self.perms.shape
            lengths = np.zeros((n, deg), dtype=np.int64)
            start = np.broadcast_to(np.arange(deg), (n, deg))
            rows = np.arange(n)[:, None]
            pos = self.perms.astype(np.int64)
            k = 1
            while not lengths.all():
                lengths[(pos == start) & (lengths == 0)] = k
                pos = self.perms[rows, pos]
                k += 1
            orders = np.array([math.lcm(*map(int, set(r))) for r in lengths], dtype=np.int64)
        orders.setflags(write=False)
        return orders

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, (int(o) for o in np.unique(self.element_orders)), 1)

    @cached_property
    def conj_maps(self) -> np.ndarray:
        """Row ``s`` is the map ``x -> g_s^-1 x g_s`` for generator ``g_s``."""
        allidx = np.arange(self.order)
        maps = np.array([self.conj(allidx, g) for g in self.gens], dtype=np.int64)
        return maps.reshape(len(self.gens), self.order)

    @cached_property
    def is_abelian(self) -> bool:
        return is_abelian(whole(self))

    def permutation(self, i: int) -> Permutation:
        return Permutation(tuple(int(x) for x in self.perms[i]))

    def generator_permutations(self) -> list[Permutation]:
        return [self.permutation(g) for g in self.gens]


def enumerate_from_generators(gens, *, cap: int = DEFAULT_CAP, table_limit: int = TABLE_LIMIT,
                              degree: int | None = None, name: str | None = None) -> FiniteGroup:
    """Close a set of permutations under composition.

    ``degree`` is only needed when ``gens`` is empty.
    """
    rows = _as_rows(list(gens))
    if rows.shape[0] == 0:
        if degree is None:
            raise InputError("degree must be given when there are no generators")
        rows = np.zeros((0, degree), dtype=np.int32)
    deg = rows.shape[1]
    ident = np.arange(deg, dtype=np.int32)
    perms = [ident]
    index = {ident.tobytes(): 0}
    parent = [0]
    gen_of = [0]
    rgen = []
    head = 0
    while head < len(perms):
        x = perms[head]
        row = []
        for s, g in enumerate(rows):
            y = g[x]
            key = y.tobytes()
            j = index.get(key)
            if j is None:
                j = len(perms)
                if j >= cap:
                    raise SizeLimitError(cap)
                index[key] = j
                perms.append(y)
                parent.append(head)
                gen_of.append(s)
            row.append(j)
        rgen.append(row)
        head += 1
    n = len(perms)
    rgen = np.array(rgen, dtype=np.int64).reshape(n, rows.shape[0])
    gen_idx = tuple(dict.fromkeys(int(index[g.tobytes()]) for g in rows if index[g.tobytes()] != 0))
    table = None
    if n <= table_limit:
        table = np.empty((n, n), dtype=np.int32)
        _kernels.fill_table(table, rgen.astype(np.int32), np.array(parent, dtype=np.int64),
                            np.array(gen_of, dtype=np.int64))
    return FiniteGroup(np.array(perms, dtype=np.int32).reshape(n, deg), table=table,
                       rgen=rgen, gens=gen_idx, name=name)


def _greedy_generators(G: FiniteGroup) -> tuple[int, ...]:
    gens: list[int] = []
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    for x in range(1, G.order):
        if not mask[x]:
            gens.append(x)
            mask[_closure(G, gens)] = True
            if mask.all():
                break
    return tuple(gens)


# ---------------------------------------------------------------------------
# subgroups
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``parent`` given by its sorted member indices."""

    parent: FiniteGroup
    members: np.ndarray
    gens: tuple[int, ...] = ()
    _mask: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        members = np.asarray(self.members, dtype=np.int64)
        members.setflags(write=False)
        object.__setattr__(self, "members", members)
        mask = np.zeros(self.parent.order, dtype=bool)
        mask[members] = True
        mask.setflags(write=False)
        object.__setattr__(self, "_mask", mask)

    @property
    def order(self) -> int:
        return int(self.members.size)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, x) -> bool:
        return bool(self._mask[int(x)])

    def contains(self, xs) -> np.ndarray:
        return self._mask[np.asarray(xs)]

    @property
    def mask(self) -> np.ndarray:
        return self._mask

    def is_trivial(self) -> bool:
        return self.order == 1

    def same_as(self, other: "Subgroup") -> bool:
        return other.parent is self.parent and np.array_equal(self.members, other.members)

    def issubset(self, other: "Subgroup") -> bool:
        return bool(other._mask[self.members].all())

    def index_in_parent(self) -> int:
        return self.parent.order // self.order

    def __repr__(self) -> str:
        return f"<Subgroup order={self.order} of {self.parent!r}>"

    def as_group(self, name: str | None = None) -> FiniteGroup:
        """This subgroup as a group in its own right (same permutation degree).

        Element ``i`` of the result is ``members[i]`` of the parent.
        """
        G = self.parent
        members = self.members
        gens = [int(np.searchsorted(members, g)) for g in self.gens]
        if G.has_table:
            sub = G.table[np.ix_(members, members)]
            table = np.searchsorted(members, sub).astype(np.int32)
            return FiniteGroup(G.perms[members], table=table, gens=gens, name=name)
        if self.order <= TABLE_LIMIT:
            sub = G.mul(members[:, None], members[None, :])
            table = np.searchsorted(members, sub).astype(np.int32)
            return FiniteGroup(G.perms[members], table=table, gens=gens, name=name)
        return FiniteGroup(G.perms[members], gens=gens, name=name)


def _closure(G: FiniteGroup, gens: Iterable[int]) -> np.ndarray:
    gens = np.array(sorted({int(g) for g in gens} - {0}), dtype=np.int64)
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    frontier = np.array([0], dtype=np.int64)
    while frontier.size and gens.size:
        prods = np.unique(np.asarray(G.mul(frontier[:, None], gens[None, :])).ravel())
        new = prods[~mask[prods]]
        mask[new] = True
        frontier = new
    return np.nonzero(mask)[0]


def whole(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, np.arange(G.order), G.gens)


def trivial(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, np.array([0]), ())


def subgroup_generated(G: FiniteGroup, indices: Iterable[int]) -> Subgroup:
    gens = tuple(dict.fromkeys(int(i) for i in indices if int(i) != 0))
    for g in gens:
        if not 0 <= g < G.order:
            raise InputError(f"element index {g} out of range for order {G.order}")
    return Subgroup(G, _closure(G, gens), gens)


def _normal_closure_under(G: FiniteGroup, conjugators: Sequence[int], indices: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``indices`` and stable under conjugation
    by every element of ``conjugators``."""
    H = subgroup_generated(G, indices)
    conjugators = np.array([c for c in conjugators if c != 0], dtype=np.int64)
    if conjugators.size == 0:
        return H
    while True:
        images = np.asarray(G.conj(H.members[None, :], conjugators[:, None])).ravel()
        missing = images[~H.mask[images]]
        if missing.size == 0:
            return H
        H = subgroup_generated(G, H.gens + (int(missing[0]),))


def normal_closure(G: FiniteGroup, indices: Iterable[int]) -> Subgroup:
    return _normal_closure_under(G, G.gens, indices)


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    # a Subgroup built from bare members has no generators; test them all
    hgens = H.gens if H.gens or H.order == 1 else tuple(int(x) for x in H.members)
    if not hgens or not G.gens:
        return True
    images = np.asarray(G.conj(np.array(hgens)[None, :], np.array(G.gens)[:, None]))
    return bool(H.mask[images].all())


def is_abelian(H: Subgroup) -> bool:
    gens = np.array(H.gens if H.gens else H.members, dtype=np.int64)
    if gens.size < 2:
        return True
    G = H.parent
    return bool(np.array_equal(G.mul(gens[:, None], gens[None, :]), G.mul(gens[None, :], gens[:, None])))


def derived_subgroup(H: Subgroup) -> Subgroup:
    G = H.parent
    gens = np.array(H.gens, dtype=np.int64)
    comms = np.asarray(G.commutator(gens[:, None], gens[None, :])).ravel() if gens.size else []
    return _normal_closure_under(G, H.gens, comms)


def derived_series(G: FiniteGroup | Subgroup) -> list[Subgroup]:
    """``[G, G', G'', ...]`` down to the first repeated term."""
    H = G if isinstance(G, Subgroup) else whole(G)
    series = [H]
    while True:
        D = derived_subgroup(series[-1])
        if D.order == series[-1].order:
            return series
        series.append(D)


def is_solvable(G: FiniteGroup | Subgroup) -> bool:
    return derived_series(G)[-1].is_trivial()


def _check_prime(p: int) -> int:
    from sympy import isprime

    p = int(p)
    if not isprime(p):
        raise InputError(f"{p} is not prime")
    return p


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    allidx = np.arange(G.order)
    ok = np.ones(G.order, dtype=bool)
    for h in H.gens:
        ok &= H.mask[np.asarray(G.conj(h, allidx))]
    members = np.nonzero(ok)[0]
    return Subgroup(G, members, _greedy_subgroup_gens(G, members))


def _greedy_subgroup_gens(G: FiniteGroup, members: np.ndarray) -> tuple[int, ...]:
    gens: list[int] = []
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    for x in members:
        if not mask[x]:
            gens.append(int(x))
            mask[_closure(G, gens)] = True
    return tuple(gens)


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown one factor of p at a time inside normalizers."""
    p = _check_prime(p)
    target = p_part(G.order, p)
    P = trivial(G)
    orders = G.element_orders
    while P.order < target:
        N = normalizer(G, P)
        cands = N.members[~P.mask[N.members]]
        # x with x^p in P generates, together with P, a p-group of order p|P|
        # (its order is a p-power because N/P is the ambient group).
        cands = cands[_is_p_power(orders[cands], p)]
        powers = np.asarray(G.power(cands, p))
        hits = cands[P.mask[powers]]
        if hits.size == 0:
            raise RuntimeError("Sylow growth stalled; p-part bookkeeping is inconsistent")
        P = subgroup_generated(G, P.gens + (int(hits[0]),))
    return P


def _is_p_power(vals: np.ndarray, p: int) -> np.ndarray:
    vals = vals.copy()
    while True:
        div = (vals % p == 0) & (vals > 1)
        if not div.any():
            return vals == 1
        vals[div] //= p


def has_normal_sylow(G: FiniteGroup, p: int) -> bool:
    return is_normal(G, sylow_subgroup(G, p))


def center(G: FiniteGroup) -> Subgroup:
    allidx = np.arange(G.order)
    ok = np.ones(G.order, dtype=bool)
    for g in G.gens:
        ok &= np.asarray(G.mul(allidx, g)) == np.asarray(G.mul(g, allidx))
    members = np.nonzero(ok)[0]
    return Subgroup(G, members, _greedy_subgroup_gens(G, members))


def frattini_of_p_group(P: Subgroup | FiniteGroup, p: int) -> Subgroup:
    """Frattini subgroup of a p-group: generated by commutators and p-th powers."""
    if isinstance(P, FiniteGroup):
        P = whole(P)
    p = _check_prime(p)
    if p_part(P.order, p) != P.order:
        raise InputError(f"subgroup of order {P.order} is not a {p}-group")
    G = P.parent
    gens = np.array(P.gens, dtype=np.int64)
    seeds = set(np.unique(np.asarray(G.power(P.members, p))).tolist())
    if gens.size:
        seeds |= set(np.unique(np.asarray(G.commutator(gens[:, None], gens[None, :]))).tolist())
    return _normal_closure_under(G, P.gens, sorted(seeds))


def squares_subgroup(G: FiniteGroup) -> Subgroup:
    allidx = np.arange(G.order)
    return subgroup_generated(G, np.unique(np.asarray(G.mul(allidx, allidx))))


def minimal_normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every minimal normal subgroup, ordered by (order, least nonidentity member)."""
    from .classes import conjugacy_classes

    if G.order == 1:
        raise InputError("the trivial group has no minimal normal subgroups")
    cd = conjugacy_classes(G)
    closures: list[Subgroup] = []
    for rep in cd.class_reps[1:]:
        N = normal_closure(G, [int(rep)])
        if not any(N.same_as(M) for M in closures):
            closures.append(N)
    minimal = [N for N in closures
               if not any(M.order < N.order and M.issubset(N) for M in closures)]
    minimal.sort(key=lambda N: (N.order, int(N.members[1])))
    return minimal


# ---------------------------------------------------------------------------
# quotients and products
# ---------------------------------------------------------------------------


def coset_projection(G: FiniteGroup, N: Subgroup) -> tuple[np.ndarray, np.ndarray]:
    """``(labels, reps)``: ``labels[g]`` is the quotient index of ``gN``;
    ``reps`` are the least members of each coset, identity coset first."""
    if not is_normal(G, N):
        raise InputError("quotient requires a normal subgroup")
    canon = np.empty(G.order, dtype=np.int64)
    step = max(1, (1 << 22) // N.order)
    for s in range(0, G.order, step):
        rows = np.arange(s, min(G.order, s + step))
        canon[rows] = np.asarray(G.mul(rows[:, None], N.members[None, :])).min(axis=1)
    reps = np.unique(canon)
    return np.searchsorted(reps, canon), reps


def quotient_group(G: FiniteGroup, N: Subgroup, name: str | None = None) -> FiniteGroup:
    labels, reps = coset_projection(G, N)
    m = reps.size
    if m > TABLE_LIMIT:
        raise SizeLimitError(TABLE_LIMIT, what="quotient group")
    table = labels[np.asarray(G.mul(reps[:, None], reps[None, :]))]
    gens = tuple(dict.fromkeys(int(labels[g]) for g in G.gens if labels[g] != 0))
    return FiniteGroup.from_table(table, gens=gens, name=name)


def direct_product(A: FiniteGroup, B: FiniteGroup, name: str | None = None, **kw) -> FiniteGroup:
    """``A x B`` acting on the disjoint union of the two point sets."""
    da, db = A.degree, B.degree
    gens = [np.concatenate([A.perms[g], np.arange(da, da + db)]) for g in A.gens]
    gens += [np.concatenate([np.arange(da), B.perms[g] + da]) for g in B.gens]
    G = enumerate_from_generators(gens, degree=da + db, name=name, **kw)
    if G.order != A.order * B.order:
        raise ConstructionError(f"direct product has order {G.order}, expected {A.order * B.order}")
    return G


def central_product(A: FiniteGroup, B: FiniteGroup, zA: int, zB: int,
                    name: str | None = None, **kw) -> FiniteGroup:
    """``A x B`` modulo the diagonal ``{(z, phi(z)^-1)}`` where ``phi`` sends
    ``zA`` to ``zB``; both must be central of the same order."""
    for H, z, label in ((A, zA, "zA"), (B, zB, "zB")):
        if not center(H).mask[z]:
            raise ConstructionError(f"{label} is not central")
    if A.element_orders[zA] != B.element_orders[zB]:
        raise ConstructionError("zA and zB have different orders")
    D = direct_product(A, B, **kw)
    row = np.concatenate([A.perms[zA], B.perms[B.inverse[zB]] + A.degree])
    diag = int(D.index_of(row))
    Z = subgroup_generated(D, [diag])
    G = quotient_group(D, Z, name=name)
    expected = A.order * B.order // int(A.element_orders[zA])
    if G.order != expected:
        raise ConstructionError(f"central product has order {G.order}, expected {expected}")
    return G


def semidirect_product(N: FiniteGroup, P: FiniteGroup, action: Sequence[Sequence[int]],
                       name: str | None = None, **kw) -> FiniteGroup:
    """``N x| P`` with ``(n1,p1)(n2,p2) = (n1 * a_p1(n2), p1 p2)``.

    ``action[s]`` lists the images ``a_s(x)`` of every element index ``x`` of
    ``N`` for the generator ``P.gens[s]``.  The group is realized on the points
    of ``N`` (right regular, twisted) plus the points of ``P``.
    """
    if len(action) != len(P.gens):
        raise InputError("need one automorphism per generator of P")
    nn = N.order
    allidx = np.arange(nn)
    alphas = []
    for s, images in enumerate(action):
        a = np.asarray(images, dtype=np.int64)
        if a.shape != (nn,) or sorted(a.tolist()) != list(range(nn)) or a[0] != 0:
            raise ConstructionError(f"action of generator {s} is not a bijection of N fixing 1")
        for g in N.gens:
            if not np.array_equal(a[np.asarray(N.mul(allidx, g))], np.asarray(N.mul(a[allidx], a[g]))):
                raise ConstructionError(f"action of generator {s} is not an automorphism of N")
        alphas.append(a)
    # x^(n, p) = a_p^-1(x n): keeps the composition a right action
    gens = []
    right = [np.asarray(N.mul(allidx, g)) for g in N.gens]
    for r in right:
        gens.append(np.concatenate([r, nn + np.arange(P.degree)]))
    for a, g in zip(alphas, P.gens):
        a_inv = np.empty(nn, dtype=np.int64)
        a_inv[a] = allidx
        gens.append(np.concatenate([a_inv, nn + P.perms[g]]))
    G = enumerate_from_generators(gens, degree=nn + P.degree, name=name, **kw)
    if G.order != N.order * P.order:
        raise ConstructionError(
            f"semidirect product has order {G.order}, expected {N.order * P.order}; "
            "the action does not respect the relations of P")
    return G
