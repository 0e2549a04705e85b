"""Hot inner loops, in two interchangeable flavours.

Every kernel exists as a numba ``@njit`` function and as a pure-numpy
function with the same signature and the same results.  The module-level
names point at one of the two sets; which one is decided once, at import,
from the ``ACDLAB_BACKEND`` environment variable (``numba`` or ``numpy``).
When numba cannot be imported the numpy set is used regardless.

All modular kernels take int64 arrays with entries already reduced into
``[0, p)`` and require ``p < 2**31``.
"""

from __future__ import annotations

import logging
import os

import numpy as np

log = logging.getLogger(__name__)

# ---------------------------------------------------------------------------
# numpy flavour
# ---------------------------------------------------------------------------


def _np_fill_table(table, rgen, parent, gen_of):
    n = table.shape[0]
    table[:, 0] = np.arange(n)
    for j in range(1, n):
        table[:, j] = rgen[table[:, parent[j]], gen_of[j]]
    return table


def _np_orbit_labels(maps):
    """Label every point by the least point of its orbit under ``maps``."""
    n = maps.shape[1]
    labels = np.arange(n, dtype=np.int64)
    if maps.shape[0] == 0:
        return labels
    while True:
        old = labels.copy()
        for m in maps:
            # an edge x -> m[x] joins two orbit labels
            np.minimum.at(labels, m, labels)
            labels = np.minimum(labels, labels[m])
        labels = labels[labels]
        if np.array_equal(labels, old):
            return labels


def _np_count_classes(cls, r):
    m, cols = cls.shape
    out = np.zeros((r, cols), dtype=np.int64)
    if m == 0:
        return out
    flat = cls + r * np.arange(cols)[None, :]
    counts = np.bincount(flat.ravel(), minlength=r * cols)
    return counts.reshape(cols, r).T.copy()


def _np_rref_mod(a, p):
    a = a.copy() % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            a[nzr] = (a[nzr] - (col[nzr, None] * a[r][None, :]) % p) % p
        pivots.append(c)
        r += 1
    return a, np.array(pivots, dtype=np.int64)


def _np_charpoly_mod(a, p):
    h = _hessenberg_np(a % p, p)
    n = h.shape[0]
    # polys[k] holds the coefficients (lowest degree first) of the
    # characteristic polynomial of the leading k x k block
    polys = [np.array([1], dtype=np.int64)]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = np.zeros(k + 1, dtype=np.int64)
        cur[1:] = prev
        cur[:k] = (cur[:k] - h[k - 1, k - 1] * prev) % p
        t = 1
        for i in range(1, k):
            t = (t * h[k - i, k - i - 1]) % p
            coef = (t * h[k - i - 1, k - 1]) % p
            if coef:
                q = polys[k - i - 1]
                cur[: q.size] = (cur[: q.size] - coef * q) % p
        polys.append(cur % p)
    return polys[n]


def _hessenberg_np(h, p):
    h = h.copy()
    n = h.shape[0]
    for m in range(1, n - 1):
        nz = np.nonzero(h[m:, m - 1])[0]
        if nz.size == 0:
            continue
        i = m + nz[0]
        if i != m:
            h[[i, m]] = h[[m, i]]
            h[:, [i, m]] = h[:, [m, i]]
        inv = pow(int(h[m, m - 1]), p - 2, p)
        for i in range(m + 1, n):
            u = (h[i, m - 1] * inv) % p
            if u == 0:
                continue
            h[i] = (h[i] - (u * h[m]) % p) % p
            h[:, m] = (h[:, m] + (u * h[:, i]) % p) % p
    return h


def _np_poly_roots_mod(coeffs, p):
    """All roots in F_p of a polynomial (lowest degree first), by evaluation."""
    roots = []
    chunk = 1 << 16
    for start in range(0, p, chunk):
        x = np.arange(start, min(p, start + chunk), dtype=np.int64)
        acc = np.zeros_like(x)
        for c in coeffs[::-1]:
            acc = (acc * x + c) % p
        roots.append(x[acc == 0])
    return np.concatenate(roots)


def _np_matmul_mod(a, b, p):
    a = a % p
    b = b % p
    inner = a.shape[1]
    # largest number of products that may be summed without int64 overflow
    step = max(1, (2**63 - 1) // max(1, (p - 1) ** 2) - 1)
    if step >= inner:
        return (a @ b) % p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, inner, step):
        out = (out + (a[:, s : s + step] @ b[s : s + step]) % p) % p
    return out


NUMPY_KERNELS = {
    "fill_table": _np_fill_table,
    "orbit_labels": _np_orbit_labels,
    "count_classes": _np_count_classes,
    "rref_mod": _np_rref_mod,
    "charpoly_mod": _np_charpoly_mod,
    "poly_roots_mod": _np_poly_roots_mod,
    "matmul_mod": _np_matmul_mod,
}


def load_numba_kernels():
    """The numba kernels (compiled on first call, cached on disk), or None when numba is unavailable."""
    try:
        from . import _numba_kernels
    except ImportError:  # pragma: no cover - numba is a declared dependency
        return None
    return dict(_numba_kernels.KERNELS)


def _select():
    wanted = os.environ.get("ACDLAB_BACKEND", "numba").strip().lower()
    if wanted not in ("numba", "numpy"):
        raise ValueError(f"ACDLAB_BACKEND must be 'numba' or 'numpy', not {wanted!r}")
    if wanted == "numba":
        kernels = load_numba_kernels()
        if kernels is not None:
            return "numba", kernels
        log.warning("numba unavailable; using the numpy kernels")
    return "numpy", NUMPY_KERNELS


BACKEND, _ACTIVE = _select()

fill_table = _ACTIVE["fill_table"]
orbit_labels = _ACTIVE["orbit_labels"]
count_classes = _ACTIVE["count_classes"]
rref_mod = _ACTIVE["rref_mod"]
charpoly_mod = _ACTIVE["charpoly_mod"]
poly_roots_mod = _ACTIVE["poly_roots_mod"]
matmul_mod = _ACTIVE["matmul_mod"]
