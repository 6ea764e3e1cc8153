import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atcover.gf2 import Gf2Vector
from atcover.graph import is_connected
from atcover.localaction import (
    CONSTRUCTIONS,
    EXPECTED,
    arc_orbit_size,
    build_gamma,
    build_sigma_tau,
    decompose,
    e1_as_perm,
    flip_perm,
    g1_membership,
    generic_local_action,
    group_generators,
    lift_as_gamma_perm,
    normalises_g1,
    sigma_conditions,
    vertex_stabiliser_local_action,
    vertex_transitive,
)
from atcover.perm import Perm


@pytest.mark.parametrize("n", [1, 2])
def test_gamma_shape(n):
    ctx = build_gamma(n)
    assert ctx.gamma.n_vertices == 32 * n**4
    assert ctx.gamma.is_regular(6) and is_connected(ctx.gamma)
    assert ctx.e1_dim == {1: 4, 2: 40}[n]


def test_flips_and_lifts_are_automorphisms():
    ctx = build_gamma(2)
    for x in ctx.e1_basis.vectors[:5]:
        assert ctx.gamma.is_automorphism(e1_as_perm(x, ctx.e1_basis).images)
    for lift in ctx.b_lifts:
        assert ctx.gamma.is_automorphism(lift_as_gamma_perm(lift).images)
    outside = Gf2Vector.from_support([0], ctx.lam.n_vertices)
    with pytest.raises(ValueError):
        e1_as_perm(outside, ctx.e1_basis)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**256 - 1), st.integers(0, 20))
def test_decompose_roundtrip(bits, k):
    ctx = build_gamma(2)
    size = ctx.lam.n_vertices
    x = Gf2Vector(bits % (1 << size), size)
    lift = ctx.b_lifts[k % len(ctx.b_lifts)]
    p = flip_perm(x) * lift_as_gamma_perm(lift)
    pi, y = decompose(p)
    assert pi == lift.cover_perm and y == x


def test_decompose_rejects_pair_breaking():
    with pytest.raises(ValueError):
        decompose(Perm([1, 2, 0, 3]))


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("construction", CONSTRUCTIONS)
@pytest.mark.parametrize("word", ["a", "id", "bcz"])
def test_local_action_at_several_vertices(n, construction, word):
    ctx = build_gamma(n)
    rep = vertex_stabiliser_local_action(construction, n, ctx.vertex(word))
    assert rep.identified_as == EXPECTED[construction]
    assert rep.kernel_order == 4
    assert rep.local_order == (12 if construction == "G1" else 24)


@pytest.mark.parametrize(
    "construction,order,stab", [("G1", 768, 24), ("G2", 1536, 48), ("G3", 1536, 48)]
)
def test_whole_group_cross_check(construction, order, stab):
    assert generic_local_action(construction, 1) == (order, EXPECTED[construction], stab)
    rep = vertex_stabiliser_local_action(construction, 1)
    assert rep.stabiliser_order == stab


def test_stabiliser_exponent_grows():
    k = {n: vertex_stabiliser_local_action("G1", n).stabiliser_log2_times3 for n in (1, 2)}
    assert k == {1: 3, 2: 39}
    assert vertex_stabiliser_local_action("G2", 2).stabiliser_log2_times3 == 40
    assert not vertex_stabiliser_local_action("G1", 2).bound_applies


@pytest.mark.parametrize("n", [1, 2])
def test_sigma_tau(n):
    ctx = build_gamma(n)
    st_ = build_sigma_tau(n)
    assert all(sigma_conditions(ctx, st_).values())
    ts = st_.tau_sigma()
    assert ctx.gamma.is_automorphism(ts.images)
    assert not g1_membership(ts, n)
    assert g1_membership(ts * ts, n)
    assert normalises_g1(ctx, ts)


def test_g1_membership():
    ctx = build_gamma(2)
    assert g1_membership(Perm.identity(ctx.gamma.n_vertices), 2)
    assert g1_membership(flip_perm(ctx.e1_basis.vectors[3]), 2)
    assert not g1_membership(flip_perm(Gf2Vector.from_support([0], ctx.lam.n_vertices)), 2)
    for g in group_generators(ctx, "G1"):
        assert g1_membership(g, 2)
    b_only = [lift_as_gamma_perm(b) for b in ctx.b_lifts if not g1_membership(lift_as_gamma_perm(b), 2)]
    assert b_only


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("construction", CONSTRUCTIONS)
def test_arc_transitive(n, construction):
    ctx = build_gamma(n)
    assert vertex_transitive(ctx, construction)
    assert arc_orbit_size(group_generators(ctx, construction), ctx.gamma) == 6 * ctx.gamma.n_vertices
