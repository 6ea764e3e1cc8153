from collections import deque

import pytest

from atcover.cover import (
    RIM,
    LiftError,
    VoltageAssignment,
    canonical_lift,
    cover_index,
    cube_graph,
    deck_generators,
    deck_translation,
    derived_cover,
    induced_voltage_aut,
    is_local_isomorphism,
    is_unimodular,
    lambda_graph,
    lift_automorphism,
    lift_mapping,
    mk_voltage,
    quotient_to_k4,
    quotient_to_q3,
    unit,
    vneg,
    zero,
)
from atcover.graph import complete_graph, is_connected
from atcover.mk import aut_b_generators, build_mk, rotate_abc, vertex
from atcover.perm import Perm, PermGroup, group_order


def propagate_lift(cover, n, g, start=0):
    """Build a lift of ``g`` sending cover vertex 0 to ``g(0)``'s fibre entry ``start``.

    Each cover vertex over u has exactly one neighbour over each base neighbour
    of u, so once vertex 0 has an image every other image is forced. Returns the
    image list, or None when the forced map is not a well-defined automorphism.
    """
    size = n**4
    images = {0: g(0) * size + start}
    queue = deque([0])
    while queue:
        p = queue.popleft()
        q = images[p]
        over = {w // size: w for w in cover.adjacency[q]}
        for r in cover.adjacency[p]:
            target = over[g(r // size)]
            if r in images:
                if images[r] != target:
                    return None
            else:
                images[r] = target
                queue.append(r)
    out = [images[i] for i in range(cover.n_vertices)]
    if len(set(out)) != len(out) or not cover.is_automorphism(out):
        return None
    return out


def half_rim_voltage(n):
    """Only the first four rim arcs carry e1..e4."""
    mk = build_mk()
    volts = {}
    for i in range(4):
        u, v = vertex(RIM[i]), vertex(RIM[i + 1])
        volts[(u, v)] = unit(i, n)
        volts[(v, u)] = vneg(unit(i, n), n)
    return VoltageAssignment(mk, n, volts)


def test_voltage_examples():
    z = mk_voltage(5)
    assert z.voltage(vertex("id"), vertex("a")) == zero(5)
    assert z.voltage(vertex("id"), vertex("c")) == (1, 0, 0, 0)
    assert z.voltage(vertex("c"), vertex("id")) == (4, 0, 0, 0)
    assert z.voltage(vertex("bcz"), vertex("b")) == (0, 0, 4, 0)
    with pytest.raises(KeyError):
        z.voltage(vertex("id"), vertex("z"))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_voltage_normalised_and_consistent(n):
    z = mk_voltage(n)
    assert z.is_inverse_consistent() and z.is_normalised()
    assert len(z.cotree_arcs()) == 24 - 15


def test_derived_cover_n1_is_mk():
    cov = lambda_graph(1)
    mk = build_mk()
    assert cov.adjacency == mk.adjacency


@pytest.mark.parametrize("n", [2, 3])
def test_derived_cover_shape(n):
    cov = lambda_graph(n)
    assert cov.n_vertices == 16 * n**4 and cov.is_regular(3) and is_connected(cov)
    assert cov.n_edges == 24 * n**4


def test_identity_induces_identity():
    z = mk_voltage(3)
    assert induced_voltage_aut(z, Perm.identity(16)) == ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_all_b_generators_lift(n):
    z = mk_voltage(n)
    cov = lambda_graph(n)
    for g in aut_b_generators().generators:
        phi = induced_voltage_aut(z, g)
        assert phi is not None and is_unimodular(phi, n)
        lift = canonical_lift(z, g)
        assert cov.is_automorphism(lift.cover_perm.images)
        assert list(lift.cover_perm.images) == propagate_lift(cov, n, g)


@pytest.mark.parametrize("n", [2, 3])
def test_half_rim_voltage_does_not_lift(n):
    z = half_rim_voltage(n)
    cov = derived_cover(z)
    for g in aut_b_generators().generators:
        if g.is_identity():
            continue
        assert induced_voltage_aut(z, g) is None
        with pytest.raises(LiftError):
            canonical_lift(z, g)
        # oracle: no lift exists for any choice of image of the first vertex
        assert all(propagate_lift(cov, n, g, start) is None for start in range(n**4))
    # rotations of the generators do not even stabilise the voltage image lattice
    assert induced_voltage_aut(z, rotate_abc()) is None


def test_deck_translation():
    z = mk_voltage(3)
    d = deck_translation(z, unit(0, 3))
    assert d.cover_perm(cover_index(vertex("a"), (0, 0, 0, 0), 3)) == cover_index(vertex("a"), (1, 0, 0, 0), 3)
    cov = lambda_graph(3)
    deck = PermGroup([g.cover_perm for g in deck_generators(z)], cov.n_vertices)
    assert group_order(deck) == 81
    assert all(cov.is_automorphism(g.cover_perm.images) for g in deck_generators(z))


def test_pinned_rotation_lift():
    z = mk_voltage(3)
    base = cover_index(vertex("id"), (0, 0, 0, 0), 3)
    lift = lift_mapping(z, rotate_abc(), base, base)
    assert lift.cover_perm(base) == base
    assert lift.cover_perm.order() == 3


@pytest.mark.parametrize("n", [2, 3])
def test_lift_composition_projects(n):
    z = mk_voltage(n)
    size = n**4
    gens = aut_b_generators().generators
    for g in gens:
        for h in gens:
            prod = canonical_lift(z, g) * canonical_lift(z, h)
            assert prod.base_perm == g * h
            for p in range(0, 16 * size, 7):
                assert prod.cover_perm(p) // size == (g * h)(p // size)


@pytest.mark.parametrize("n", [1, 2])
def test_lifted_group_order(n):
    z = mk_voltage(n)
    gens = [canonical_lift(z, g).cover_perm for g in aut_b_generators().generators]
    gens += [d.cover_perm for d in deck_generators(z)]
    assert group_order(PermGroup(gens, 16 * n**4)) == 96 * n**4


def test_lift_rejects_wrong_matrix():
    z = mk_voltage(3)
    swap = ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    with pytest.raises(LiftError):
        lift_automorphism(z, Perm.identity(16), swap)


def test_quotient_chain():
    mk = build_mk()
    q3, p1 = quotient_to_q3(mk)
    assert q3.adjacency == cube_graph().adjacency
    assert is_local_isomorphism(mk, q3, p1)
    k4, p2 = quotient_to_k4(q3)
    assert k4.adjacency == complete_graph(4).adjacency
    assert is_local_isomorphism(q3, k4, p2)
    assert k4.labels[p2[0]] == "{000,111}"
