"""Both kernel flavours against each other and against sympy / brute force."""

import numpy as np
import pytest
import sympy
from sympy import GF
from sympy.polys.matrices import DomainMatrix
from hypothesis import given, settings
from hypothesis import strategies as st

from acdlab import _kernels
from acdlab.modp import nullspace_mod

NUMBA = _kernels.load_numba_kernels()
NP = _kernels.NUMPY_KERNELS
needs_numba = pytest.mark.skipif(NUMBA is None, reason="numba not importable")

primes = st.sampled_from([2, 3, 7, 101, 2003, 1_000_003, 2_147_483_647])


@st.composite
def square_mod(draw, max_n=7):
    p = draw(primes)
    n = draw(st.integers(1, max_n))
    flat = draw(st.lists(st.integers(0, p - 1), min_size=n * n, max_size=n * n))
    return np.array(flat, dtype=np.int64).reshape(n, n), p


@st.composite
def rect_mod(draw):
    p = draw(primes)
    r = draw(st.integers(1, 6))
    c = draw(st.integers(1, 6))
    flat = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return np.array(flat, dtype=np.int64).reshape(r, c), p


@needs_numba
@settings(max_examples=60, deadline=None)
@given(rect_mod())
def test_rref_flavours_agree(ap):
    a, p = ap
    r1, piv1 = NP["rref_mod"](a.copy(), p)
    r2, piv2 = NUMBA["rref_mod"](a.copy(), p)
    assert np.array_equal(r1, r2) and list(piv1) == list(piv2)


@settings(max_examples=60, deadline=None)
@given(rect_mod())
def test_rref_matches_sympy_over_gf_p(ap):
    a, p = ap
    dm = DomainMatrix([[GF(p)(int(x)) for x in row] for row in a.tolist()], a.shape, GF(p))
    want, want_piv = dm.rref()
    r, piv = _kernels.rref_mod(a.copy(), p)
    assert list(piv) == list(want_piv)
    want_rows = [[int(x) % p for x in row] for row in want.to_Matrix().tolist()]
    assert r[: len(piv)].tolist() == want_rows[: len(piv)]
    ns = nullspace_mod(a, p)
    assert ns.shape[1] == a.shape[1] - len(piv)
    if ns.size:
        assert not np.any(_kernels.matmul_mod(a, ns, p))


@settings(max_examples=60, deadline=None)
@given(square_mod())
def test_charpoly_matches_sympy(ap):
    a, p = ap
    x = sympy.symbols("x")
    want = sympy.Poly(sympy.Matrix(a.tolist()).charpoly(x).as_expr(), x, modulus=p)
    got = _kernels.charpoly_mod(a.copy(), p)
    # got: coefficients lowest degree first, monic
    want_coeffs = [int(c) % p for c in reversed(want.all_coeffs())]
    want_coeffs += [0] * (len(got) - len(want_coeffs))
    assert [int(c) for c in got] == want_coeffs


@needs_numba
@settings(max_examples=60, deadline=None)
@given(square_mod())
def test_charpoly_flavours_agree(ap):
    a, p = ap
    assert np.array_equal(NP["charpoly_mod"](a.copy(), p), NUMBA["charpoly_mod"](a.copy(), p))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([7, 101, 2003]), st.lists(st.integers(0, 100), min_size=1, max_size=5))
def test_poly_roots_brute_force(p, roots):
    poly = np.array([1], dtype=object)
    for r in roots:
        poly = np.convolve(poly, np.array([-r, 1], dtype=object))
    coeffs = np.array([int(c) % p for c in poly], dtype=np.int64)
    brute = sorted(x for x in range(p) if sum(int(c) * pow(x, i, p) for i, c in enumerate(coeffs)) % p == 0)
    assert sorted(int(x) for x in _kernels.poly_roots_mod(coeffs, p)) == brute
    if NUMBA is not None:
        assert sorted(int(x) for x in NUMBA["poly_roots_mod"](coeffs, p)) == brute


@settings(max_examples=60, deadline=None)
@given(primes, st.integers(1, 5), st.integers(1, 5), st.integers(1, 5), st.randoms(use_true_random=False))
def test_matmul_mod_exact(p, n, k, m, rnd):
    a = np.array([[rnd.randrange(p) for _ in range(k)] for _ in range(n)], dtype=np.int64)
    b = np.array([[rnd.randrange(p) for _ in range(m)] for _ in range(k)], dtype=np.int64)
    exact = [[sum(int(a[i, t]) * int(b[t, j]) for t in range(k)) % p for j in range(m)] for i in range(n)]
    assert NP["matmul_mod"](a, b, p).tolist() == exact
    if NUMBA is not None:
        assert NUMBA["matmul_mod"](a, b, p).tolist() == exact


@needs_numba
def test_table_and_orbit_kernels_agree(fam):
    G = fam("symmetric", 5)
    maps = G.conj_maps.astype(np.int64)
    assert np.array_equal(NP["orbit_labels"](maps), NUMBA["orbit_labels"](maps))
    rng = np.random.default_rng(3)
    cls = rng.integers(0, 7, size=(300, 7)).astype(np.int64)
    assert np.array_equal(NP["count_classes"](cls, 7), NUMBA["count_classes"](cls, 7))


def test_backend_flag_is_validated(monkeypatch):
    monkeypatch.setenv("ACDLAB_BACKEND", "fortran")
    with pytest.raises(ValueError):
        _kernels._select()
    monkeypatch.setenv("ACDLAB_BACKEND", "numpy")
    assert _kernels._select()[0] == "numpy"
