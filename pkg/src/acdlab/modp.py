"""Linear algebra over a prime field, as needed for Dixon-Schneider."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .cyclotomic import PRIME_CAP, prime_with_root
from .errors import InternalError
from .group import FiniteGroup


@dataclass(frozen=True)
class DixonPrime:
    p: int
    e: int
    zeta_modp: int

    def __post_init__(self):
        if (self.p - 1) % self.e:
            raise ValueError(f"p={self.p} is not 1 mod e={self.e}")
        if pow(self.zeta_modp, self.e, self.p) != 1:
            raise ValueError("zeta_modp is not an e-th root of unity")


def choose_dixon_prime(G: FiniteGroup) -> DixonPrime:
    """Least prime ``p = 1 (mod exponent)`` with ``p > 2*isqrt(|G|)``."""
    e = G.exponent
    floor = 2 * math.isqrt(G.order)
    try:
        p, zeta = prime_with_root(e, floor)
    except OverflowError as exc:
        raise OverflowError(f"Dixon prime search passed {PRIME_CAP}") from exc
    return DixonPrime(p=p, e=e, zeta_modp=zeta)


def nullspace_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning ``{x : a @ x = 0}`` over ``F_p``."""
    rows, cols = a.shape
    r, pivots = _kernels.rref_mod(np.ascontiguousarray(a, dtype=np.int64), p)
    pivots = list(pivots)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-r[i, f]) % p
    return basis


def column_echelon(b: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Canonical basis (as columns) of the column space of ``b`` and the rows
    on which it restricts to the identity."""
    r, pivots = _kernels.rref_mod(np.ascontiguousarray(b.T, dtype=np.int64), p)
    return np.ascontiguousarray(r[: len(pivots)].T), np.asarray(pivots)


def split_common_eigenspaces(matrices, size: int, p: int) -> list[np.ndarray]:
    """Refine ``F_p^size`` into the common eigenspaces of a commuting family.

    ``matrices`` yields the family one matrix at a time (so expensive ones
    are only built while some subspace still has dimension > 1).  Each
    returned space is given as a column basis in canonical echelon form.
    """
    spaces = [(np.eye(size, dtype=np.int64), np.arange(size))]
    for m in matrices:
        if all(b.shape[1] == 1 for b, _ in spaces):
            break
        m = np.ascontiguousarray(np.asarray(m, dtype=np.int64) % p)
        refined = []
        for b, piv in spaces:
            dim = b.shape[1]
            if dim == 1:
                refined.append((b, piv))
                continue
            restricted = _kernels.matmul_mod(m, b, p)[piv]
            roots = _kernels.poly_roots_mod(_kernels.charpoly_mod(restricted, p), p)
            total = 0
            for lam in roots:
                shifted = restricted.copy()
                shifted[np.diag_indices(dim)] = (shifted[np.diag_indices(dim)] - lam) % p
                c = nullspace_mod(shifted, p)
                total += c.shape[1]
                refined.append(column_echelon(_kernels.matmul_mod(b, c, p), p))
            if total != dim:
                raise InternalError(
                    f"class matrix is not diagonalizable over F_{p} on a {dim}-dimensional space")
        spaces = refined
    return [b for b, _ in spaces]
