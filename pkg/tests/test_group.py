import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as o
from acdlab.corpus import cyclic, dihedral, symmetric
from acdlab.errors import ConstructionError, InputError, SizeLimitError
from acdlab.group import (FiniteGroup, Permutation, center, central_product, derived_series,
                          derived_subgroup, direct_product, enumerate_from_generators, frattini_of_p_group,
                          has_normal_sylow, is_abelian, is_normal, is_solvable, minimal_normal_subgroups,
                          normal_closure, normalizer, p_part, quotient_group, semidirect_product,
                          squares_subgroup, subgroup_generated, sylow_subgroup, whole)


def as_set(G, H):
    return frozenset(tuple(int(v) for v in G.perms[i]) for i in H.members)


# -- permutations -----------------------------------------------------------


def test_permutation_basics():
    a = Permutation.from_cycles(4, (0, 1, 2))
    b = Permutation.from_cycles(4, (2, 3))
    assert (a * b).images == tuple(b.images[i] for i in a.images)
    assert (a * a.inverse()) == Permutation.identity(4)
    assert a.cycle_type() == (3, 1)
    assert str(b) == "(2 3)"
    with pytest.raises(InputError):
        Permutation((0, 0, 1))
    with pytest.raises(InputError):
        a * Permutation.identity(3)


perm_strategy = st.integers(2, 6).flatmap(
    lambda n: st.lists(st.permutations(list(range(n))), min_size=1, max_size=3))


@settings(max_examples=40, deadline=None)
@given(perm_strategy)
def test_enumeration_matches_brute_closure(gens):
    degree = len(gens[0])
    G = enumerate_from_generators([tuple(g) for g in gens])
    brute = o.closure([tuple(g) for g in gens], degree)
    assert set(o.elements_of(G)) == brute
    assert G.index_of(np.arange(degree)) == 0


@settings(max_examples=25, deadline=None)
@given(perm_strategy, st.data())
def test_multiplication_inverse_and_orders(gens, data):
    G = enumerate_from_generators([tuple(g) for g in gens])
    elems = o.elements_of(G)
    a = data.draw(st.integers(0, G.order - 1))
    b = data.draw(st.integers(0, G.order - 1))
    assert elems[int(G.mul(a, b))] == o.compose(elems[a], elems[b])
    assert elems[int(G.inverse[a])] == o.inverse(elems[a])
    assert int(G.element_orders[a]) == o.order_of(elems[a])
    assert elems[int(G.conj(a, b))] == o.compose(o.compose(o.inverse(elems[b]), elems[a]), elems[b])
    assert G.exponent == math.lcm(*[o.order_of(x) for x in elems])


def test_hashed_lookup_path_agrees_with_table():
    gens = symmetric(5).generator_permutations()
    with_table = enumerate_from_generators(gens)
    without = enumerate_from_generators(gens, table_limit=10)
    assert with_table.has_table and not without.has_table
    idx = np.arange(120)
    rng = np.random.default_rng(1)
    a, b = rng.integers(0, 120, 200), rng.integers(0, 120, 200)
    assert np.array_equal(with_table.mul(a, b), without.mul(a, b))
    assert np.array_equal(with_table.inverse, without.inverse)
    assert np.array_equal(with_table.element_orders, without.element_orders)
    assert np.array_equal(without.index_of(without.perms[idx]), idx)


def test_size_cap():
    with pytest.raises(SizeLimitError):
        enumerate_from_generators(symmetric(5).generator_permutations(), cap=100)


def test_from_table_round_trip():
    G = dihedral(5)
    H = FiniteGroup.from_table(G.table)
    assert H.order == 10 and H.exponent == 10
    assert np.array_equal(H.table, G.table)


# -- subgroups against brute force --------------------------------------------


def small_groups(corpus, limit=24):
    return [(s.name, G) for s, G in corpus if G.order <= limit]


def test_subgroup_functions_match_brute_force(corpus):
    for name, G in small_groups(corpus):
        elems = o.elements_of(G)
        deg = G.degree
        W = whole(G)
        assert as_set(G, derived_subgroup(W)) == o.commutator_subgroup(frozenset(elems), deg), name
        assert as_set(G, center(G)) == o.center(elems), name
        assert as_set(G, squares_subgroup(G)) == o.squares_subgroup(elems, deg), name
        assert is_solvable(G) == o.is_solvable(elems, deg), name
        assert is_abelian(W) == (len(o.center(elems)) == G.order), name
        for p in (2, 3, 5, 7):
            assert has_normal_sylow(G, p) == o.normal_sylow_by_counting(elems, p), (name, p)
            P = sylow_subgroup(G, p)
            assert P.order == p_part(G.order, p)
            assert all(o.order_of(x) % p == 0 or o.order_of(x) == 1 for x in as_set(G, P))


def test_minimal_normal_subgroups_match_brute_force(corpus):
    for name, G in small_groups(corpus, 24):
        if G.order == 1:
            with pytest.raises(InputError):
                minimal_normal_subgroups(G)
            continue
        elems = o.elements_of(G)
        want = set(o.minimal_normal_subgroups(elems, G.degree))
        got = {as_set(G, N) for N in minimal_normal_subgroups(G)}
        assert got == want, name


def test_frattini_matches_maximal_subgroup_intersection(corpus):
    for name, G in small_groups(corpus, 16):
        n = G.order
        p = next((q for q in (2, 3, 5, 7, 11, 13) if n % q == 0), None)
        if p is None or p_part(n, p) != n:
            continue
        elems = o.elements_of(G)
        assert as_set(G, frattini_of_p_group(G, p)) == o.frattini(elems, G.degree), name


def test_solvability_of_witnesses(fam):
    assert not is_solvable(fam("alternating", 5))
    assert is_solvable(fam("symmetric", 4))
    orders = [H.order for H in derived_series(fam("symmetric", 4))]
    assert orders == [24, 12, 4, 1]


def test_sylow_and_normalizer(fam):
    S4 = fam("symmetric", 4)
    P = sylow_subgroup(S4, 2)
    assert P.order == 8 and not is_normal(S4, P)
    assert normalizer(S4, P).same_as(P)
    assert not has_normal_sylow(fam("symmetric", 3), 2)
    assert not has_normal_sylow(fam("alternating", 4), 3)
    assert has_normal_sylow(fam("alternating", 4), 2)
    with pytest.raises(InputError):
        sylow_subgroup(S4, 4)


def test_normal_closure_and_quotient(fam):
    S4 = fam("symmetric", 4)
    V = minimal_normal_subgroups(S4)
    assert len(V) == 1 and V[0].order == 4
    Q = quotient_group(S4, V[0])
    assert Q.order == 6 and not Q.is_abelian
    t = next(i for i in range(S4.order) if S4.permutation(i).cycle_type() == (2, 1, 1))
    assert normal_closure(S4, [t]).order == 24


def test_products():
    C2, C3 = cyclic(2), cyclic(3)
    assert direct_product(C2, C3).order == 6
    assert direct_product(C2, C3).is_abelian
    D8 = dihedral(4)
    z = int(center(D8).members[1])
    E = central_product(D8, D8, z, z)
    assert E.order == 32 and center(E).order == 2
    inv = np.asarray(C3.inverse)
    S3 = semidirect_product(C3, C2, [inv])
    assert S3.order == 6 and not S3.is_abelian
    with pytest.raises(ConstructionError):
        semidirect_product(C3, C2, [[0, 2, 2]])
    C4 = cyclic(4)
    with pytest.raises(ConstructionError):
        # an automorphism of order 2 cannot be the image of a generator of C3
        semidirect_product(C4, C3, [np.asarray(C4.inverse)])


def test_subgroup_generated_and_membership(fam):
    S3 = fam("symmetric", 3)
    H = subgroup_generated(S3, [S3.gens[0]])
    assert H.order in (2, 3)
    assert H.issubset(whole(S3)) and 0 in H
