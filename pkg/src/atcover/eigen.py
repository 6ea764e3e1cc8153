"""1-eigenspaces over GF(2), the 72-vertex support S_1, and greedy orbit bases."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .cover import cover_index, mk_vertex
from .gf2 import (
    DependentVector,
    Gf2Basis,
    Gf2Vector,
    add_identity,
    extend_independent,
    kernel_basis,
)
from .graph import Graph, adjacency_gf2
from .perm import Perm, PermGroup

S1_SIZE = 72


@dataclass(frozen=True)
class EigenReport:
    n: int | None
    vertex_count: int
    dim: int
    basis: Gf2Basis = field(repr=False)

    def formula_expected(self) -> int | None:
        return conjectured_dimension(self.n) if self.n else None

    def to_json_doc(self) -> dict:
        expected = self.formula_expected()
        return {
            "n": self.n,
            "vertices": self.vertex_count,
            "dim": self.dim,
            "formula_expected": expected,
            "matches_formula": expected == self.dim if expected is not None else None,
        }


def conjectured_dimension(n: int) -> int:
    """Conjectured dimension: |V|/8 + 2 for odd n, |V|/8 + 8 for even n."""
    return 2 * n**4 + (2 if n % 2 else 8)


def greedy_lower_bound(vertex_count: int) -> Fraction:
    """Each greedy translate of a 72-vertex support covers a new vertex, so at least |V|/72 are needed."""
    return Fraction(vertex_count, S1_SIZE)


def one_eigenspace(g: Graph, n: int | None = None) -> EigenReport:
    basis = kernel_basis(add_identity(adjacency_gf2(g)))
    return EigenReport(n, g.n_vertices, basis.dim, basis)


def is_one_eigenvector(g: Graph, x: Gf2Vector) -> bool:
    """Each vertex value equals the parity of its neighbours' values."""
    return not eigen_violations(g, set(x.support()))


def eigen_violations(g: Graph, support: set[int]) -> list[int]:
    bad = []
    for v, nbrs in enumerate(g.adjacency):
        inside = sum(1 for u in nbrs if u in support)
        if (inside & 1) != (v in support):
            bad.append(v)
    return bad


@dataclass(frozen=True)
class SupportSet:
    vertices: frozenset[int]

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: int) -> bool:
        return v in self.vertices

    def indicator(self, length: int) -> Gf2Vector:
        return Gf2Vector.from_support(self.vertices, length)


@dataclass(frozen=True)
class SupportCheck:
    ok: bool
    odd_failures: tuple[int, ...]
    even_failures: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.ok


def load_s1_fixture() -> list[tuple[str, tuple[int, int, int, int]]]:
    text = resources.files("atcover").joinpath("data/s1.txt").read_text()
    rows = []
    for line in text.splitlines():
        if not line.strip():
            continue
        word, *coords = line.split()
        if len(coords) != 4:
            raise ValueError(f"malformed S_1 line: {line!r}")
        rows.append((word, tuple(int(c) for c in coords)))
    if len(rows) != S1_SIZE:
        raise ValueError(f"S_1 fixture has {len(rows)} rows, expected {S1_SIZE}")
    if len(set(rows)) != len(rows):
        raise ValueError("S_1 fixture has duplicate rows")
    return rows


def s1_vertices(n: int) -> SupportSet:
    if n < 3:
        raise ValueError("S_1 uses the residue 2, so n >= 3 is required")
    verts = frozenset(cover_index(mk_vertex(w), c, n) for w, c in load_s1_fixture())
    if len(verts) != S1_SIZE:
        raise ValueError("S_1 vertices collide")
    return SupportSet(verts)


def verify_eigen_support(g: Graph, s: SupportSet) -> SupportCheck:
    bad = eigen_violations(g, set(s.vertices))
    odd = tuple(v for v in bad if v in s)
    even = tuple(v for v in bad if v not in s)
    return SupportCheck(not bad, odd, even)


@dataclass(frozen=True)
class GreedyResult:
    basis: Gf2Basis
    vectors: tuple[Gf2Vector, ...]
    # per step: the uncovered vertex and the generator word moving the seed onto it
    witnesses: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def size(self) -> int:
        return len(self.vectors)


def _schreier_tree(gens: list[Perm], root: int, degree: int) -> list[tuple[int, int] | None]:
    """``tree[v] = (parent, generator index)`` with ``parent^gen = v``; BFS order."""
    tree: list[tuple[int, int] | None] = [None] * degree
    tree[root] = (-1, -1)
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for k, s in enumerate(gens):
            v = s.images[u]
            if tree[v] is None:
                tree[v] = (u, k)
                queue.append(v)
    return tree


def _word_to(tree, v: int) -> list[int]:
    word = []
    while tree[v][0] >= 0:
        parent, k = tree[v]
        word.append(k)
        v = parent
    word.reverse()
    return word


def greedy_orbit_basis(g: Graph, x1: Gf2Vector, aut: PermGroup) -> GreedyResult:
    """Grow independent translates of ``x1`` until their supports cover V(g).

    At each step the least uncovered vertex ``v`` is chosen and ``x1`` is moved
    by an automorphism taking its least support point to ``v``.  A translate
    always contains a vertex outside the earlier supports, hence is independent.
    """
    if not is_one_eigenvector(g, x1):
        raise ValueError("seed vector is not a 1-eigenvector")
    if not x1:
        raise ValueError("seed vector is zero")
    for p in aut.generators:
        if not g.is_automorphism(p.images):
            raise ValueError("generator is not a graph automorphism")
    degree = g.n_vertices
    gens = list(aut.generators)
    seed = x1.support()[0]
    tree = _schreier_tree(gens, seed, degree)
    basis = Gf2Basis.empty(degree)
    vectors = []
    witnesses = []
    covered = 0
    full = (1 << degree) - 1
    support = x1.support()
    while covered != full:
        v = (~covered & full & -(~covered & full)).bit_length() - 1
        if tree[v] is None:
            raise ValueError(f"no automorphism moves the seed onto uncovered vertex {v}")
        word = _word_to(tree, v)
        points = support
        for k in word:
            img = gens[k].images
            points = [img[p] for p in points]
        x = Gf2Vector.from_support(points, degree)
        try:
            basis = extend_independent(basis, x)
        except DependentVector:
            raise RuntimeError(f"translate covering vertex {v} is dependent") from None
        vectors.append(x)
        witnesses.append((v, tuple(word)))
        covered |= x.bits
    return GreedyResult(basis, tuple(vectors), tuple(witnesses))
