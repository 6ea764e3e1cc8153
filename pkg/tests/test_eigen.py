from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atcover.cover import lambda_graph
from atcover.eigen import (
    S1_SIZE,
    SupportSet,
    greedy_orbit_basis,
    is_one_eigenvector,
    load_s1_fixture,
    one_eigenspace,
    conjectured_dimension,
    s1_vertices,
    greedy_lower_bound,
    verify_eigen_support,
)
from atcover.gf2 import Gf2Vector, in_span
from atcover.graph import complete_graph, cycle_graph
from atcover.localaction import build_gamma, sigma_chain
from atcover.mk import build_mk, group_b_elements
from atcover.perm import PermGroup


def brute_force_eigen_dim(g):
    """Count 1-eigenvectors by enumerating every subset of V(g)."""
    count = 0
    for bits in range(1 << g.n_vertices):
        if is_one_eigenvector(g, Gf2Vector(bits, g.n_vertices)):
            count += 1
    return count.bit_length() - 1


def test_small_eigenspaces():
    assert one_eigenspace(complete_graph(2)).dim == 1
    assert one_eigenspace(build_mk()).dim == 4
    assert one_eigenspace(lambda_graph(1), 1).dim == 4


@pytest.mark.parametrize("g", [complete_graph(4), cycle_graph(6), cycle_graph(7), build_mk()])
def test_eigenspace_matches_enumeration(g):
    assert one_eigenspace(g).dim == brute_force_eigen_dim(g)


def test_lambda2_eigenspace():
    rep = one_eigenspace(lambda_graph(2), 2)
    assert rep.dim == 40 == conjectured_dimension(2)
    assert rep.to_json_doc()["matches_formula"] is True


def test_conjectured_dimension_values():
    assert [conjectured_dimension(n) for n in (1, 2, 3, 4)] == [4, 40, 164, 520]
    assert greedy_lower_bound(16 * 81) == 18


def test_s1_fixture():
    rows = load_s1_fixture()
    assert len(rows) == S1_SIZE == len(set(rows))
    assert all(all(0 <= c <= 2 for c in coords) for _, coords in rows)
    with pytest.raises(ValueError):
        s1_vertices(2)


@pytest.mark.parametrize("n", [3, 4])
def test_s1_is_eigenvector_support(n):
    lam = lambda_graph(n)
    s1 = s1_vertices(n)
    assert len(s1) == 72
    check = verify_eigen_support(lam, s1)
    assert check.ok and not check.odd_failures and not check.even_failures


def test_verify_support_detects_failures():
    lam = lambda_graph(3)
    assert verify_eigen_support(lam, SupportSet(frozenset())).ok
    s1 = s1_vertices(3)
    dropped = min(s1.vertices)
    broken = verify_eigen_support(lam, SupportSet(s1.vertices - {dropped}))
    assert not broken.ok
    # every neighbour of the removed vertex now sees an odd count, and the vertex itself too
    assert set(broken.odd_failures) | set(broken.even_failures) >= set(lam.adjacency[dropped])


def test_greedy_k2():
    k2 = complete_graph(2)
    res = greedy_orbit_basis(k2, Gf2Vector(0b11, 2), PermGroup([], 2))
    assert res.size == 1
    with pytest.raises(ValueError):
        greedy_orbit_basis(complete_graph(4), Gf2Vector(0b0011, 4), PermGroup([], 4))


def test_greedy_rejects_non_eigenvector():
    with pytest.raises(ValueError):
        greedy_orbit_basis(complete_graph(2), Gf2Vector(0b01, 2), PermGroup([], 2))


def test_greedy_lambda3():
    ctx = build_gamma(3)
    lam = ctx.lam
    aut = PermGroup([b.cover_perm for b in ctx.b_lifts], lam.n_vertices)
    res = greedy_orbit_basis(lam, s1_vertices(3).indicator(lam.n_vertices), aut)
    assert res.size >= greedy_lower_bound(lam.n_vertices)
    assert res.basis.dim == res.size <= ctx.e1_dim
    covered = 0
    for x in res.vectors:
        assert is_one_eigenvector(lam, x) and x.weight() == 72
        covered |= x.bits
    assert covered == (1 << lam.n_vertices) - 1


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_eigenspace_invariant_under_automorphisms(seed):
    ctx = build_gamma(2)
    basis = ctx.e1_basis
    x = basis.vectors[seed % basis.dim] + basis.vectors[(seed // 7) % basis.dim]
    for lift in ctx.b_lifts:
        assert in_span(basis, x.permuted(lift.cover_perm.images))


def _brute_automorphisms(g):
    return [p for p in permutations(range(g.n_vertices)) if g.is_automorphism(p)]


def test_sigma_twists_are_eigenvectors_k4_q3():
    chain = sigma_chain()
    for key in ("k4", "q3"):
        g, sigma = chain[key][:2]
        e1 = one_eigenspace(g).basis
        for p in _brute_automorphisms(g):
            assert in_span(e1, sigma.permuted(p) + sigma)


def test_sigma_twists_are_eigenvectors_mk():
    mk, sigma, _ = sigma_chain()["mk"]
    assert {mk.labels[v].word() for v in sigma.support()} == {"id", "z", "abc", "abcz"}
    e1 = one_eigenspace(mk).basis
    for g in group_b_elements():
        assert in_span(e1, sigma.permuted(g.images) + sigma)
