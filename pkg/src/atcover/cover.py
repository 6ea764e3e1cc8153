"""Voltage assignments in Z_n^4, derived covers, automorphism lifting, quotients.

Voltages are written additively.  A cover vertex ``(u, x)`` with ``x`` in
Z_n^4 has index ``u * n**4 + x1*n**3 + x2*n**2 + x3*n + x4``, which is also
lexicographic order on ``(u, x)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Sequence

from .graph import Graph
from .mk import ELEMENTS, RElement, build_mk
from .perm import Perm

RANK = 4

ZnVec = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


class LiftError(ValueError):
    """The lifting equation failed on some arc."""


def zero(n: int) -> ZnVec:
    return (0,) * RANK


def unit(i: int, n: int) -> ZnVec:
    return tuple(1 % n if k == i else 0 for k in range(RANK))


def vadd(x: ZnVec, y: ZnVec, n: int) -> ZnVec:
    return tuple((a + b) % n for a, b in zip(x, y))


def vsub(x: ZnVec, y: ZnVec, n: int) -> ZnVec:
    return tuple((a - b) % n for a, b in zip(x, y))


def vneg(x: ZnVec, n: int) -> ZnVec:
    return tuple((-a) % n for a in x)


def matvec(m: Matrix, x: ZnVec, n: int) -> ZnVec:
    return tuple(sum(r * c for r, c in zip(row, x)) % n for row in m)


def matmul(m: Matrix, k: Matrix, n: int) -> Matrix:
    cols = list(zip(*k))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) % n for col in cols) for row in m)


def identity_matrix(n: int) -> Matrix:
    return tuple(unit(i, n) for i in range(RANK))


def det(m: Sequence[Sequence[int]]) -> int:
    if len(m) == 1:
        return m[0][0]
    return sum(
        (-1) ** j * m[0][j] * det([row[:j] + row[j + 1 :] for row in m[1:]]) for j in range(len(m))
    )


def is_unimodular(m: Matrix, n: int) -> bool:
    return gcd(det([list(r) for r in m]) % n if n > 1 else 0, n) == 1


@dataclass(frozen=True)
class CoverVertex:
    base: object
    coords: ZnVec

    def __str__(self) -> str:
        return "(" + ",".join([str(self.base), *map(str, self.coords)]) + ")"


@dataclass
class VoltageAssignment:
    base: Graph
    n: int
    arc_voltages: dict[tuple[int, int], ZnVec]

    def voltage(self, u: int, v: int) -> ZnVec:
        if not self.base.has_edge(u, v):
            raise KeyError(f"({u}, {v}) is not an arc")
        return self.arc_voltages.get((u, v), zero(self.n))

    def is_inverse_consistent(self) -> bool:
        return all(
            self.voltage(v, u) == vneg(self.voltage(u, v), self.n) for u, v in self.base.arcs()
        )

    def spanning_tree(self, root: int = 0) -> dict[int, int]:
        """BFS tree over zero-voltage arcs as a parent map; raises if it does not span."""
        parent = {root: -1}
        queue = deque([root])
        z = zero(self.n)
        while queue:
            u = queue.popleft()
            for v in self.base.adjacency[u]:
                if v not in parent and self.voltage(u, v) == z:
                    parent[v] = u
                    queue.append(v)
        if len(parent) != self.base.n_vertices:
            raise ValueError("voltage assignment is not normalised: zero arcs do not span")
        return parent

    def is_normalised(self) -> bool:
        try:
            self.spanning_tree()
        except ValueError:
            return False
        return True

    def cotree_arcs(self, root: int = 0) -> list[tuple[int, int]]:
        parent = self.spanning_tree(root)
        tree = {frozenset((v, p)) for v, p in parent.items() if p >= 0}
        return [(u, v) for u, v in self.base.edges() if frozenset((u, v)) not in tree]

    def to_json_doc(self) -> dict:
        arcs = [
            {
                "from": str(self.base.labels[u]),
                "to": str(self.base.labels[v]),
                "voltage": list(self.voltage(u, v)),
            }
            for u, v in self.base.arcs()
            if any(self.voltage(u, v))
        ]
        return {"n": self.n, "arcs": arcs}


RIM = ("id", "c", "bc", "bz", "z", "cz", "bcz", "b")


def mk_voltage(n: int) -> VoltageAssignment:
    """Voltages on MK: the rim arcs carry e1, e2, e3, e4, -e1, -e2, -e3, -e4; the rest are zero."""
    if n < 1:
        raise ValueError("modulus must be positive")
    mk = build_mk()
    idx = [mk.index_of(RElement.parse(w)) for w in RIM]
    volts: dict[tuple[int, int], ZnVec] = {}
    for k in range(8):
        u, v = idx[k], idx[(k + 1) % 8]
        e = unit(k % 4, n)
        x = e if k < 4 else vneg(e, n)
        volts[(u, v)] = x
        volts[(v, u)] = vneg(x, n)
    volts = {arc: x for arc, x in volts.items() if any(x)}
    return VoltageAssignment(mk, n, volts)


def coords_of(k: int, n: int) -> ZnVec:
    out = []
    for _ in range(RANK):
        out.append(k % n)
        k //= n
    return tuple(reversed(out))


def encode(x: ZnVec, n: int) -> int:
    k = 0
    for c in x:
        k = k * n + c % n
    return k


def cover_index(u: int, x: ZnVec, n: int) -> int:
    return u * n**RANK + encode(x, n)


def cover_vertex(i: int, n: int) -> tuple[int, ZnVec]:
    size = n**RANK
    return i // size, coords_of(i % size, n)


def derived_cover(zeta: VoltageAssignment) -> Graph:
    """Graph on V(base) x Z_n^4 with (u, x) ~ (v, x + zeta(u, v))."""
    if not zeta.is_inverse_consistent():
        raise ValueError("voltage assignment is not inverse-consistent")
    n, base = zeta.n, zeta.base
    size = n**RANK
    fibre = [coords_of(k, n) for k in range(size)]
    adj = []
    labels = []
    for u in range(base.n_vertices):
        shifts = [(v, zeta.voltage(u, v)) for v in base.adjacency[u]]
        for x in fibre:
            adj.append([v * size + encode(vadd(x, y, n), n) for v, y in shifts])
            labels.append(CoverVertex(base.labels[u], x))
    return Graph(adj, labels)


@lru_cache(maxsize=8)
def lambda_graph(n: int) -> Graph:
    """The cubic cover of MK for ``mk_voltage(n)``."""
    return derived_cover(mk_voltage(n))


@lru_cache(maxsize=8)
def cached_voltage(n: int) -> VoltageAssignment:
    return mk_voltage(n)


# ---------------------------------------------------------------- lifting


def _tree_paths(zeta: VoltageAssignment, root: int) -> tuple[dict[int, int], list[int]]:
    parent = zeta.spanning_tree(root)
    order = [root]
    children: dict[int, list[int]] = {}
    for v, p in parent.items():
        if p >= 0:
            children.setdefault(p, []).append(v)
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in sorted(children.get(u, ())):
            order.append(v)
            queue.append(v)
    return parent, order


def _check_automorphism(base: Graph, g: Perm) -> None:
    if g.degree != base.n_vertices or not base.is_automorphism(g.images):
        raise ValueError("not an automorphism of the base graph")


def induced_voltage_aut(zeta: VoltageAssignment, g: Perm, root: int = 0) -> Matrix | None:
    """Matrix of the voltage-group automorphism induced by ``g``, or None if ``g`` does not lift.

    Column i is the voltage of the image of the fundamental cycle whose
    voltage is e_i; every other fundamental cycle then has to agree.
    """
    base, n = zeta.base, zeta.n
    _check_automorphism(base, g)
    parent, order = _tree_paths(zeta, root)
    # image-walk voltage of the tree path root -> v
    rho = {root: zero(n)}
    for v in order[1:]:
        p = parent[v]
        rho[v] = vadd(rho[p], zeta.voltage(g(p), g(v)), n)
    cycles = []
    for u, v in zeta.cotree_arcs(root):
        before = zeta.voltage(u, v)
        after = vsub(vadd(rho[u], zeta.voltage(g(u), g(v)), n), rho[v], n)
        cycles.append((before, after))
    columns = []
    for i in range(RANK):
        e = unit(i, n)
        hit = next((after for before, after in cycles if before == e), None)
        if hit is None:
            hit = next((vneg(after, n) for before, after in cycles if before == vneg(e, n)), None)
        if hit is None:
            if n == 1:
                hit = zero(n)
            else:
                raise ValueError(f"no cotree arc carries e{i + 1}")
        columns.append(hit)
    phi = tuple(tuple(col[r] for col in columns) for r in range(RANK))
    for before, after in cycles:
        if matvec(phi, before, n) != after:
            return None
    if not is_unimodular(phi, n):
        return None
    return phi


@dataclass(frozen=True)
class LiftedAut:
    cover_perm: Perm
    base_perm: Perm
    voltage_aut: Matrix
    n: int

    def __mul__(self, other: "LiftedAut") -> "LiftedAut":
        # first self, then other: x -> B(Ax + s) + t, so the linear part is B*A
        return LiftedAut(
            self.cover_perm * other.cover_perm,
            self.base_perm * other.base_perm,
            matmul(other.voltage_aut, self.voltage_aut, self.n),
            self.n,
        )


def _shift_function(zeta: VoltageAssignment, g: Perm, phi: Matrix, t: ZnVec, root: int) -> list[ZnVec]:
    n = zeta.n
    parent, order = _tree_paths(zeta, root)
    psi: list[ZnVec | None] = [None] * zeta.base.n_vertices
    psi[root] = tuple(c % n for c in t)
    for v in order[1:]:
        u = parent[v]
        step = vsub(zeta.voltage(g(u), g(v)), matvec(phi, zeta.voltage(u, v), n), n)
        psi[v] = vadd(psi[u], step, n)
    for u, v in zeta.base.arcs():
        lhs = vadd(vsub(psi[v], psi[u], n), matvec(phi, zeta.voltage(u, v), n), n)
        if lhs != zeta.voltage(g(u), g(v)):
            raise LiftError(f"lifting equation fails on arc ({u}, {v})")
    return psi


def lift_automorphism(
    zeta: VoltageAssignment, g: Perm, phi: Matrix, t: ZnVec | None = None, root: int = 0
) -> LiftedAut:
    """The lift (u, x) -> (g(u), phi x + psi(u)) with psi(root) = t."""
    n = zeta.n
    t = zero(n) if t is None else t
    psi = _shift_function(zeta, g, phi, t, root)
    size = n**RANK
    fibre = [coords_of(k, n) for k in range(size)]
    images_x = [encode(matvec(phi, x, n), n) for x in fibre]
    images = []
    for u in range(zeta.base.n_vertices):
        off = g(u) * size
        shift = psi[u]
        if any(shift):
            images.extend(off + encode(vadd(coords_of(ix, n), shift, n), n) for ix in images_x)
        else:
            images.extend(off + ix for ix in images_x)
    return LiftedAut(Perm(images), g, phi, n)


def lift_mapping(zeta: VoltageAssignment, g: Perm, src: int, dst: int, root: int = 0) -> LiftedAut:
    """The unique lift of ``g`` sending cover vertex ``src`` to ``dst``."""
    n = zeta.n
    phi = induced_voltage_aut(zeta, g, root)
    if phi is None:
        raise LiftError("automorphism does not lift")
    u, x = cover_vertex(src, n)
    gu, y = cover_vertex(dst, n)
    if g(u) != gu:
        raise ValueError("target is not in the image fibre")
    psi0 = _shift_function(zeta, g, phi, zero(n), root)
    t = vsub(vsub(y, matvec(phi, x, n), n), psi0[u], n)
    return lift_automorphism(zeta, g, phi, t, root)


def canonical_lift(zeta: VoltageAssignment, g: Perm, root: int = 0) -> LiftedAut:
    phi = induced_voltage_aut(zeta, g, root)
    if phi is None:
        raise LiftError("automorphism does not lift")
    return lift_automorphism(zeta, g, phi, zero(zeta.n), root)


def deck_translation(zeta: VoltageAssignment, t: ZnVec) -> LiftedAut:
    ident = Perm.identity(zeta.base.n_vertices)
    return lift_automorphism(zeta, ident, identity_matrix(zeta.n), t)


def deck_generators(zeta: VoltageAssignment) -> list[LiftedAut]:
    return [deck_translation(zeta, unit(i, zeta.n)) for i in range(RANK)]


# ---------------------------------------------------------------- quotient chain


def quotient(g: Graph, classes: Sequence[Sequence[int]], labels=None) -> tuple[Graph, list[int]]:
    proj = [-1] * g.n_vertices
    for k, cls in enumerate(classes):
        for v in cls:
            proj[v] = k
    if -1 in proj:
        raise ValueError("classes do not cover the vertex set")
    adj = [set() for _ in classes]
    for u, v in g.edges():
        if proj[u] == proj[v]:
            raise ValueError("edge inside a class")
        adj[proj[u]].add(proj[v])
        adj[proj[v]].add(proj[u])
    return Graph(adj, labels), proj


def is_local_isomorphism(g: Graph, h: Graph, proj: Sequence[int]) -> bool:
    for v in range(g.n_vertices):
        images = sorted(proj[u] for u in g.adjacency[v])
        if images != list(h.adjacency[proj[v]]):
            return False
    return True


def quotient_to_q3(mk: Graph) -> tuple[Graph, list[int]]:
    """Quotient of MK by the centre <z>; vertices of the cube are labelled by (ea, eb, ec)."""
    keys = sorted({lab.bits[:3] for lab in mk.labels})
    classes = [[v for v, lab in enumerate(mk.labels) if lab.bits[:3] == k] for k in keys]
    labels = ["".join(map(str, k)) for k in keys]
    return quotient(mk, classes, labels)


def quotient_to_k4(q3: Graph) -> tuple[Graph, list[int]]:
    """Quotient of the cube by the antipodal map x -> x + 111."""
    classes: list[list[int]] = []
    seen = set()
    for v, lab in enumerate(q3.labels):
        if v in seen:
            continue
        anti = "".join("1" if ch == "0" else "0" for ch in lab)
        w = q3.labels.index(anti)
        classes.append([v, w])
        seen.update((v, w))
    labels = ["{" + ",".join(q3.labels[v] for v in cls) + "}" for cls in classes]
    return quotient(q3, classes, labels)


def cube_graph() -> Graph:
    keys = list(product((0, 1), repeat=3))
    labels = ["".join(map(str, k)) for k in keys]
    adj = []
    for k in keys:
        nbrs = []
        for i in range(3):
            flipped = list(k)
            flipped[i] ^= 1
            nbrs.append(keys.index(tuple(flipped)))
        adj.append(nbrs)
    return Graph(adj, labels)


def mk_vertex(word: str) -> int:
    return ELEMENTS.index(RElement.parse(word))
