"""Exact arithmetic on sums of e-th roots of unity.

A value is stored as a multiplicity vector ``m`` of length ``e`` standing for
``sum_t m[t] * zeta_e**t``; no reduction modulo the cyclotomic polynomial is
done, so equality of vectors is a sufficient (for eigenvalue multisets also
necessary) test of equality of values.

Deciding whether such a sum is a rational integer uses reduction modulo a
prime ``q = 1 (mod e)``: the images of the sum under every Galois embedding
are computed in ``F_q``.  If they all agree and ``q`` exceeds twice the
absolute size bound of the sum, the common residue *is* the value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy import isprime, primitive_root

from . import _kernels
from .errors import InternalError

PRIME_CAP = 2**31


@dataclass(frozen=True)
class CyclotomicValue:
    coeffs: tuple[int, ...]

    @classmethod
    def from_array(cls, arr) -> "CyclotomicValue":
        return cls(tuple(int(x) for x in arr))

    @classmethod
    def integer(cls, n: int, e: int) -> "CyclotomicValue":
        return cls((n,) + (0,) * (e - 1))

    @property
    def e(self) -> int:
        return len(self.coeffs)

    def conjugate(self) -> "CyclotomicValue":
        e = self.e
        return CyclotomicValue(tuple(self.coeffs[(e - t) % e] for t in range(e)))

    def is_self_conjugate(self) -> bool:
        return self == self.conjugate()

    def __complex__(self) -> complex:
        e = self.e
        return complex(sum(c * np.exp(2j * np.pi * t / e) for t, c in enumerate(self.coeffs) if c))

    def as_integer(self) -> int | None:
        """The value as a Python int, or None when it is not rational."""
        return rational_integer(np.array(self.coeffs, dtype=np.int64))

    def __str__(self) -> str:
        terms = []
        for t, c in enumerate(self.coeffs):
            if c:
                z = "1" if t == 0 else f"z^{t}"
                terms.append(z if c == 1 else f"{c}*{z}")
        return " + ".join(terms) or "0"


def units(e: int) -> np.ndarray:
    return np.array([f for f in range(e) if math.gcd(f, e) == 1], dtype=np.int64)


@lru_cache(maxsize=None)
def prime_with_root(e: int, floor: int) -> tuple[int, int]:
    """Least prime ``q = 1 (mod e)`` with ``q > floor``, and an element of
    exact multiplicative order ``e`` modulo ``q``."""
    k = max(1, floor // e)
    while True:
        q = e * k + 1
        if q >= PRIME_CAP:
            raise OverflowError(f"no prime = 1 mod {e} above {floor} below 2^31")
        if q > floor and isprime(q):
            break
        k += 1
    g = primitive_root(q)
    zeta = pow(g, (q - 1) // e, q)
    return q, zeta


def root_powers(zeta: int, e: int, q: int) -> np.ndarray:
    out = np.empty(e, dtype=np.int64)
    acc = 1
    for t in range(e):
        out[t] = acc
        acc = acc * zeta % q
    return out


def embed(mults: np.ndarray, q: int, zeta: int, fs) -> np.ndarray:
    """Images in ``F_q`` of multiplicity vectors (last axis, length e) under
    ``zeta_e -> zeta**f`` for every ``f`` in ``fs``."""
    mults = np.asarray(mults, dtype=np.int64)
    e = mults.shape[-1]
    zp = root_powers(zeta, e, q)
    t = np.arange(e)
    basis = zp[(np.asarray(fs)[None, :] * t[:, None]) % e]
    flat = mults.reshape(-1, e) % q
    out = _kernels.matmul_mod(np.ascontiguousarray(flat), np.ascontiguousarray(basis), q)
    return out.reshape(mults.shape[:-1] + (len(fs),))


def centered(x: int, q: int) -> int:
    x %= q
    return x - q if x > q // 2 else x


def rational_integer(vec: np.ndarray) -> int | None:
    """Exact value of ``sum_t vec[t] zeta_e**t`` if it is an integer, else None."""
    vec = np.asarray(vec, dtype=np.int64)
    e = vec.size
    bound = int(np.abs(vec).sum())
    q, zeta = prime_with_root(e, 2 * bound + 1)
    images = embed(vec[None, :], q, zeta, units(e))[0]
    if np.any(images != images[0]):
        return None
    return centered(int(images[0]), q)


def require_integer(vec: np.ndarray, what: str) -> int:
    value = rational_integer(vec)
    if value is None:
        raise InternalError(f"{what} is not a rational integer")
    return value


def convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Group-ring product of two multiplicity vectors of equal length."""
    e = a.size
    ia = np.nonzero(a)[0]
    ib = np.nonzero(b)[0]
    if ia.size == 0 or ib.size == 0:
        return np.zeros(e, dtype=np.int64)
    idx = (ia[:, None] + ib[None, :]) % e
    w = a[ia][:, None] * b[ib][None, :]
    return np.bincount(idx.ravel(), weights=w.ravel(), minlength=e).astype(np.int64)


def conjugate_vec(a: np.ndarray) -> np.ndarray:
    e = a.shape[-1]
    return a[..., (-np.arange(e)) % e]


def rescale(a: np.ndarray, e_to: int) -> np.ndarray:
    """Re-express vectors over ``e_from``-th roots (last axis) over ``e_to``-th roots."""
    e_from = a.shape[-1]
    if e_to % e_from:
        raise ValueError(f"{e_from} does not divide {e_to}")
    out = np.zeros(a.shape[:-1] + (e_to,), dtype=a.dtype)
    out[..., :: e_to // e_from] = a
    return out
