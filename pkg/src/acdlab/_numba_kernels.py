"""numba versions of the kernels in :mod:`acdlab._kernels`.

Kept at module level so that ``cache=True`` can reuse compiled code across
processes; helpers called from other kernels must be globals for that.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def fill_table(table, rgen, parent, gen_of):
    n = table.shape[0]
    for i in range(n):
        table[i, 0] = i
    for j in range(1, n):
        pj = parent[j]
        g = gen_of[j]
        for i in range(n):
            table[i, j] = rgen[table[i, pj], g]
    return table


@njit(cache=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def orbit_labels(maps):
    n = maps.shape[1]
    parent = np.arange(n)
    for s in range(maps.shape[0]):
        for x in range(n):
            a = _find(parent, x)
            b = _find(parent, maps[s, x])
            if a < b:
                parent[b] = a
            elif b < a:
                parent[a] = b
    out = np.empty(n, dtype=np.int64)
    for x in range(n):
        out[x] = _find(parent, x)
    return out


@njit(cache=True)
def count_classes(cls, r):
    m, cols = cls.shape
    out = np.zeros((r, cols), dtype=np.int64)
    for x in range(m):
        for k in range(cols):
            out[cls[x, k], k] += 1
    return out


@njit(cache=True)
def _inv(a, p):
    result = 1
    e = p - 2
    base = a % p
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


@njit(cache=True)
def rref_mod(a_in, p):
    a = a_in.copy()
    rows, cols = a.shape
    for i in range(rows):
        for j in range(cols):
            a[i, j] %= p
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    npiv = 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(cols):
                t = a[r, j]
                a[r, j] = a[k, j]
                a[k, j] = t
        inv = _inv(a[r, c], p)
        for j in range(cols):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(rows):
            if i != r and a[i, c] != 0:
                f = a[i, c]
                for j in range(cols):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
        pivots[npiv] = c
        npiv += 1
        r += 1
    return a, pivots[:npiv].copy()


@njit(cache=True)
def charpoly_mod(a_in, p):
    n = a_in.shape[0]
    h = a_in.copy()
    for i in range(n):
        for j in range(n):
            h[i, j] %= p
    for m in range(1, n - 1):
        i0 = -1
        for i in range(m, n):
            if h[i, m - 1] != 0:
                i0 = i
                break
        if i0 < 0:
            continue
        if i0 != m:
            for j in range(n):
                t = h[i0, j]
                h[i0, j] = h[m, j]
                h[m, j] = t
            for j in range(n):
                t = h[j, i0]
                h[j, i0] = h[j, m]
                h[j, m] = t
        inv = _inv(h[m, m - 1], p)
        for i in range(m + 1, n):
            u = (h[i, m - 1] * inv) % p
            if u == 0:
                continue
            for j in range(n):
                h[i, j] = (h[i, j] - u * h[m, j]) % p
            for j in range(n):
                h[j, m] = (h[j, m] + u * h[j, i]) % p
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for k in range(1, n + 1):
        for d in range(k):
            polys[k, d + 1] = polys[k - 1, d]
        for d in range(k):
            polys[k, d] = (polys[k, d] - h[k - 1, k - 1] * polys[k - 1, d]) % p
        t = 1
        for i in range(1, k):
            t = (t * h[k - i, k - i - 1]) % p
            coef = (t * h[k - i - 1, k - 1]) % p
            if coef != 0:
                for d in range(k - i):
                    polys[k, d] = (polys[k, d] - coef * polys[k - i - 1, d]) % p
    return polys[n].copy()


@njit(cache=True)
def poly_roots_mod(coeffs, p):
    deg = coeffs.shape[0] - 1
    found = np.empty(max(deg, 1), dtype=np.int64)
    count = 0
    for x in range(p):
        acc = 0
        for d in range(deg, -1, -1):
            acc = (acc * x + coeffs[d]) % p
        if acc == 0:
            found[count] = x
            count += 1
            if count == deg:
                break
    return found[:count].copy()


@njit(cache=True)
def matmul_mod(a, b, p):
    n, inner = a.shape
    m = b.shape[1]
    ar = a % p
    br = b % p
    # products are < p^2; sum that many before reducing, as in the numpy path
    step = max(1, (2**63 - 1) // max(1, (p - 1) * (p - 1)) - 1)
    out = np.zeros((n, m), dtype=np.int64)
    for i in range(n):
        since = 0
        for k in range(inner):
            aik = ar[i, k]
            if aik == 0:
                continue
            for j in range(m):
                out[i, j] += aik * br[k, j]
            since += 1
            if since >= step:
                for j in range(m):
                    out[i, j] %= p
                since = 0
        for j in range(m):
            out[i, j] %= p
    return out


KERNELS = {
    "fill_table": fill_table,
    "orbit_labels": orbit_labels,
    "count_classes": count_classes,
    "rref_mod": rref_mod,
    "charpoly_mod": charpoly_mod,
    "poly_roots_mod": poly_roots_mod,
    "matmul_mod": matmul_mod,
}
