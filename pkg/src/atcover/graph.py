"""Finite simple undirected graphs with indexed vertices and opaque labels."""

from __future__ import annotations

import json
from collections import deque
from typing import Any, Hashable, Iterable, Sequence

import numpy as np

from .gf2 import Gf2Matrix


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``labels[i]`` is any hashable object (a group element, a cover pair, ...);
    graph algorithms only ever look at indices.
    """

    __slots__ = ("n_vertices", "adjacency", "labels", "_index")

    def __init__(self, adjacency: Sequence[Iterable[int]], labels: Sequence[Hashable] | None = None):
        adj = tuple(tuple(sorted(nbrs)) for nbrs in adjacency)
        n = len(adj)
        for v, nbrs in enumerate(adj):
            if len(set(nbrs)) != len(nbrs):
                raise ValueError(f"repeated neighbour at vertex {v}")
            for u in nbrs:
                if u == v:
                    raise ValueError(f"self-loop at vertex {v}")
                if not 0 <= u < n:
                    raise ValueError(f"neighbour {u} of {v} out of range")
        for v, nbrs in enumerate(adj):
            for u in nbrs:
                if v not in adj[u]:
                    raise ValueError(f"adjacency not symmetric at {v}-{u}")
        if labels is None:
            labels = list(range(n))
        if len(labels) != n:
            raise ValueError("label table length differs from vertex count")
        self.n_vertices = n
        self.adjacency = adj
        self.labels = tuple(labels)
        self._index = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        return cls(adj, labels)

    def __len__(self) -> int:
        return self.n_vertices

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.adjacency == other.adjacency and self.labels == other.labels

    def __repr__(self) -> str:
        return f"Graph(n={self.n_vertices}, edges={self.n_edges})"

    @property
    def n_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def index_of(self, label: Hashable) -> int:
        if self._index is None:
            self._index = {lab: i for i, lab in enumerate(self.labels)}
        return self._index[label]

    def neighbors(self, v: int) -> tuple[int, ...]:
        if not 0 <= v < self.n_vertices:
            raise IndexError(f"invalid vertex {v}")
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def is_regular(self, k: int | None = None) -> bool:
        degs = {len(a) for a in self.adjacency}
        if not degs:
            return True
        return len(degs) == 1 and (k is None or degs == {k})

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n_vertices) for v in self.adjacency[u] if u < v]

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n_vertices) for v in self.adjacency[u]]

    def is_automorphism(self, images: Sequence[int]) -> bool:
        if sorted(images) != list(range(self.n_vertices)):
            return False
        adj = self.adjacency
        for u in range(self.n_vertices):
            iu = images[u]
            if sorted(images[v] for v in adj[u]) != list(adj[iu]):
                return False
        return True


def neighbors(g: Graph, v: int) -> tuple[int, ...]:
    return g.neighbors(v)


def bfs_order(g: Graph, root: int = 0) -> list[int]:
    seen = [False] * g.n_vertices
    seen[root] = True
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if not seen[v]:
                seen[v] = True
                order.append(v)
                queue.append(v)
    return order


def is_connected(g: Graph) -> bool:
    if g.n_vertices == 0:
        return True
    return len(bfs_order(g)) == g.n_vertices


def adjacency_gf2(g: Graph) -> Gf2Matrix:
    n = g.n_vertices
    dense = np.zeros((n, n), dtype=np.uint8)
    for u, nbrs in enumerate(g.adjacency):
        if nbrs:
            dense[u, list(nbrs)] = 1
    return Gf2Matrix.from_dense(dense)


def lex_blowup(g: Graph) -> Graph:
    """Lexicographic product ``G[K2-bar]``; vertex ``(v, x)`` gets index ``2v + x``."""
    adj = []
    for v in range(g.n_vertices):
        nbrs = [2 * u + y for u in g.adjacency[v] for y in (0, 1)]
        adj.append(nbrs)
        adj.append(nbrs)
    labels = [(lab, x) for lab in g.labels for x in (0, 1)]
    return Graph(adj, labels)


def complete_graph(n: int) -> Graph:
    return Graph([[u for u in range(n) if u != v] for v in range(n)])


def edgeless_graph(n: int) -> Graph:
    return Graph([[] for _ in range(n)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def label_text(label: Any) -> str:
    """Render a label for serialization; tuples nest as ``(x,y)``."""
    if isinstance(label, tuple):
        return "(" + ",".join(label_text(x) for x in label) + ")"
    return str(label)


def to_json(g: Graph) -> str:
    doc = {
        "n": g.n_vertices,
        "labels": [label_text(lab) for lab in g.labels],
        "edges": [list(e) for e in g.edges()],
    }
    return json.dumps(doc, separators=(",", ":"))


def from_json(text: str) -> Graph:
    doc = json.loads(text)
    n = doc["n"]
    g = Graph.from_edges(n, (tuple(e) for e in doc["edges"]), doc["labels"])
    return g


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v, lab in enumerate(g.labels):
        lines.append(f'  {v} [label="{label_text(lab)}"];')
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
