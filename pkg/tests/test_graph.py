import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atcover.cover import CoverVertex, cover_index, lambda_graph
from atcover.graph import (
    Graph,
    adjacency_gf2,
    complete_graph,
    cycle_graph,
    edgeless_graph,
    from_json,
    is_connected,
    lex_blowup,
    to_dot,
    to_json,
)
from atcover.mk import build_mk, vertex


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, edges)


def test_neighbors_k4():
    assert complete_graph(4).neighbors(0) == (1, 2, 3)
    with pytest.raises(IndexError):
        complete_graph(4).neighbors(4)


def test_neighbors_mk_identity():
    g = build_mk()
    assert {g.labels[u].word() for u in g.neighbors(vertex("id"))} == {"a", "b", "c"}


def test_neighbors_lambda2_identity():
    # (id, 0) -> (v, zeta(id, v)): zeta(id,a)=0, zeta(id,b)=e4 (= -e4 mod 2), zeta(id,c)=e1
    lam = lambda_graph(2)
    got = {lam.labels[u] for u in lam.neighbors(cover_index(vertex("id"), (0, 0, 0, 0), 2))}
    want = {
        CoverVertex(build_mk().labels[vertex("a")], (0, 0, 0, 0)),
        CoverVertex(build_mk().labels[vertex("b")], (0, 0, 0, 1)),
        CoverVertex(build_mk().labels[vertex("c")], (1, 0, 0, 0)),
    }
    assert got == want


def test_is_connected():
    assert is_connected(complete_graph(4))
    assert not is_connected(edgeless_graph(2))
    assert is_connected(lambda_graph(3))


def test_adjacency_gf2():
    assert not adjacency_gf2(edgeless_graph(3)).to_dense().any()
    assert np.array_equal(adjacency_gf2(complete_graph(2)).to_dense(), [[0, 1], [1, 0]])
    mk = adjacency_gf2(build_mk()).to_dense()
    assert (mk.sum(axis=1) == 3).all() and (mk == mk.T).all() and not mk.diagonal().any()


def test_lex_blowup_k2_is_4_cycle():
    g = lex_blowup(complete_graph(2))
    assert g.n_vertices == 4 and g.is_regular(2) and g.n_edges == 4
    assert g.adjacency == ((2, 3), (2, 3), (0, 1), (0, 1))


def test_lex_blowup_mk():
    g = lex_blowup(build_mk())
    assert g.n_vertices == 32 and g.is_regular(6) and is_connected(g)
    assert lex_blowup(Graph([])).n_vertices == 0


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_lex_blowup_properties(g):
    b = lex_blowup(g)
    for v in range(g.n_vertices):
        for x in (0, 1):
            assert b.degree(2 * v + x) == 2 * g.degree(v)
    if g.n_vertices and all(g.degree(v) for v in range(g.n_vertices)):
        assert is_connected(g) == is_connected(b)


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_adjacency_symmetric_row_weights(g):
    m = adjacency_gf2(g).to_dense()
    assert (m == m.T).all() and not m.diagonal().any()
    assert list(m.sum(axis=1) % 2) == [g.degree(v) % 2 for v in range(g.n_vertices)]


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_json_roundtrip(g):
    text = to_json(g)
    back = from_json(text)
    assert back.adjacency == g.adjacency
    assert to_json(back) == text


def test_serialization_formats():
    k2 = complete_graph(2)
    assert "  0 -- 1;" in to_dot(k2).splitlines()
    assert to_dot(Graph([])) == "graph G {\n}\n"
    assert to_json(Graph([])) == '{"n":0,"labels":[],"edges":[]}'
    assert to_json(cycle_graph(3)) == '{"n":3,"labels":["0","1","2"],"edges":[[0,1],[0,2],[1,2]]}'


def test_rejects_bad_graphs():
    with pytest.raises(ValueError):
        Graph([[0]])
    with pytest.raises(ValueError):
        Graph([[1], []])


def test_is_automorphism():
    c = cycle_graph(5)
    assert c.is_automorphism([1, 2, 3, 4, 0])
    assert not c.is_automorphism([1, 0, 2, 3, 4])
