"""Conjugacy classes and class maps of an enumerated group."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .group import FiniteGroup


@dataclass(frozen=True, eq=False)
class ConjugacyData:
    """Classes in canonical order: identity first, then by
    (element order, class size, least member index).

    ``power_map[k, s]`` is the class of ``g_k ** s`` for ``0 <= s < exponent``.
    """

    class_reps: np.ndarray
    class_sizes: np.ndarray
    class_of: np.ndarray
    inv_class: np.ndarray
    sq_class: np.ndarray
    centralizer_orders: np.ndarray
    rep_orders: np.ndarray
    power_map: np.ndarray
    members: tuple[np.ndarray, ...]

    @property
    def count(self) -> int:
        return int(self.class_reps.size)

    def __len__(self) -> int:
        return self.count


def conjugacy_classes(G: FiniteGroup) -> ConjugacyData:
    cached = G.__dict__.get("_conjugacy")
    if cached is not None:
        return cached
    n = G.order
    if G.gens:
        labels = np.asarray(_kernels.orbit_labels(G.conj_maps.astype(np.int64)))
    else:
        labels = np.arange(n, dtype=np.int64)
    reps, class_idx, sizes = np.unique(labels, return_inverse=True, return_counts=True)
    # unique() labels by least member; reorder canonically
    orders = G.element_orders[reps]
    perm = np.lexsort((reps, sizes, orders))
    rank = np.empty_like(perm)
    rank[perm] = np.arange(perm.size)
    class_of = rank[class_idx.ravel()].astype(np.int64)
    reps = reps[perm].astype(np.int64)
    sizes = sizes[perm].astype(np.int64)
    orders = orders[perm].astype(np.int64)

    e = G.exponent
    power_map = np.empty((reps.size, e), dtype=np.int64)
    cur = np.zeros_like(reps)
    for s in range(e):
        power_map[:, s] = class_of[cur]
        cur = np.asarray(G.mul(cur, reps))
    inv_class = class_of[G.inverse[reps]]
    sq_class = class_of[np.asarray(G.mul(reps, reps))]

    order_of_members = np.argsort(class_of, kind="stable")
    bounds = np.concatenate([[0], np.cumsum(sizes)])
    members = tuple(order_of_members[bounds[k]:bounds[k + 1]] for k in range(reps.size))

    for arr in (reps, sizes, class_of, inv_class, sq_class, orders, power_map):
        arr.setflags(write=False)
    data = ConjugacyData(
        class_reps=reps,
        class_sizes=sizes,
        class_of=class_of,
        inv_class=inv_class,
        sq_class=sq_class,
        centralizer_orders=n // sizes,
        rep_orders=orders,
        power_map=power_map,
        members=members,
    )
    G.__dict__["_conjugacy"] = data
    return data
