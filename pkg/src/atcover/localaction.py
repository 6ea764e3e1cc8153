"""The 6-valent graphs Gamma_n = Lambda_n[K2-bar] and the groups G1, G2, G3 acting on them.

Vertex ``(u, eps)`` of Gamma has index ``2u + eps``.  A vector x in GF(2)^V(Lambda)
acts by flipping the second coordinate on supp(x); an automorphism of Lambda
acts on the first coordinate.

Stabilisers of ``(v, 0)`` are assembled from their semidirect decomposition:

* G1: a basis of (E1)_v, plus an order-3 lift fixing v;
* G2: additionally an involution of the lifted B fixing v;
* G3: G1 plus tau*sigma.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .cover import (
    LiftedAut,
    RANK,
    VoltageAssignment,
    canonical_lift,
    cover_index,
    deck_generators,
    lambda_graph,
    lift_mapping,
    mk_voltage,
    quotient_to_k4,
    quotient_to_q3,
    zero,
)
from .eigen import one_eigenspace
from .gf2 import Gf2Basis, Gf2Vector, in_span
from .graph import Graph, is_connected, lex_blowup
from .mk import RElement, aut_a_generators, aut_b_generators, build_mk, group_a_elements, group_b_elements
from .perm import Perm, PermGroup, group_order, identify_degree6, orbit, point_stabiliser

CONSTRUCTIONS = ("G1", "G2", "G3")
EXPECTED = {"G1": "A4_6", "G2": "S4_6d", "G3": "S4_6c"}
SPECIAL_ARC_WORDS = ("a", "id")


class ConstructionError(RuntimeError):
    pass


@dataclass
class GammaAction:
    n: int
    voltage: VoltageAssignment
    lam: Graph
    gamma: Graph
    e1_basis: Gf2Basis
    a_lifts: list[LiftedAut]
    b_lifts: list[LiftedAut]
    extra_gens: list[Perm] = field(default_factory=list)

    @property
    def fibre_size(self) -> int:
        return self.n**RANK

    @property
    def e1_dim(self) -> int:
        return self.e1_basis.dim

    def vertex(self, word: str, coords=None) -> int:
        """Index in Lambda of the cover vertex over ``word`` with the given fibre coordinates."""
        return cover_index(build_mk().index_of(RElement.parse(word)), coords or zero(self.n), self.n)

    def gamma_vertex(self, v: int, eps: int = 0) -> int:
        return 2 * v + eps


@lru_cache(maxsize=4)
def build_gamma(n: int) -> GammaAction:
    if n < 1:
        raise ValueError("n must be positive")
    zeta = mk_voltage(n)
    lam = lambda_graph(n)
    gamma = lex_blowup(lam)
    e1 = one_eigenspace(lam, n).basis
    deck = deck_generators(zeta)
    a_lifts = [canonical_lift(zeta, g) for g in aut_a_generators().generators] + deck
    b_lifts = [canonical_lift(zeta, g) for g in aut_b_generators().generators] + deck
    return GammaAction(n, zeta, lam, gamma, e1, a_lifts, b_lifts)


def flip_perm(x: Gf2Vector) -> Perm:
    """(v, a) -> (v, a + x(v)) for any x, in or out of E1."""
    bits = x.bits
    return Perm(i ^ ((bits >> (i >> 1)) & 1) for i in range(2 * x.length))


def e1_as_perm(x: Gf2Vector, e1: Gf2Basis | None = None) -> Perm:
    if e1 is not None and not in_span(e1, x):
        raise ValueError("vector is not in the 1-eigenspace")
    return flip_perm(x)


def lift_as_gamma_perm(lift: LiftedAut | Perm) -> Perm:
    p = lift.cover_perm if isinstance(lift, LiftedAut) else lift
    im = p.images
    return Perm(2 * im[i >> 1] + (i & 1) for i in range(2 * len(im)))


def vanishing_subspace(e1: Gf2Basis, v: int) -> list[Gf2Vector]:
    """Basis of {x in E1 : x(v) = 0}."""
    pivot = next((x for x in e1 if x[v]), None)
    if pivot is None:
        return list(e1)
    return [x + pivot if x[v] else x for x in e1 if x is not pivot]


# ---------------------------------------------------------------- sigma / tau


def sigma_chain() -> dict:
    """sigma on K4, Q3 and MK, each pulled back from the K4 class of the identity."""
    mk = build_mk()
    q3, to_q3 = quotient_to_q3(mk)
    k4, to_k4 = quotient_to_k4(q3)
    root = mk.index_of(RElement.parse("id"))
    seed = to_k4[to_q3[root]]
    sigma_k4 = Gf2Vector.from_support([seed], 4)
    sigma_q3 = Gf2Vector.from_support([v for v in range(8) if to_k4[v] == seed], 8)
    sigma_mk = Gf2Vector.from_support([v for v in range(16) if sigma_q3[to_q3[v]]], 16)
    return {
        "k4": (k4, sigma_k4),
        "q3": (q3, sigma_q3, to_k4),
        "mk": (mk, sigma_mk, to_q3),
    }


@dataclass(frozen=True)
class SigmaTau:
    sigma: Gf2Vector
    tau: LiftedAut
    special_arc: tuple[int, int]

    def tau_sigma(self) -> Perm:
        return lift_as_gamma_perm(self.tau) * flip_perm(self.sigma)


def base_stabiliser(u: int) -> list[Perm]:
    return [g for g in group_b_elements() if g(u) == u]


def pinned_lift(ctx: GammaAction, g: Perm, v: int) -> LiftedAut:
    """The lift of ``g`` fixing cover vertex ``v``; ``g`` must fix the base of ``v``."""
    return lift_mapping(ctx.voltage, g, v, v)


def lifted_stabiliser(ctx: GammaAction, v: int) -> list[LiftedAut]:
    """All lifts of B fixing v, one per element of the base stabiliser."""
    u = v // ctx.fibre_size
    return [pinned_lift(ctx, g, v) for g in base_stabiliser(u)]


@lru_cache(maxsize=4)
def build_sigma_tau(n: int) -> SigmaTau:
    ctx = build_gamma(n)
    _, sigma_mk, _ = sigma_chain()["mk"]
    size = ctx.fibre_size
    sigma = Gf2Vector.from_support(
        [i for i in range(ctx.lam.n_vertices) if sigma_mk[i // size]], ctx.lam.n_vertices
    )
    v = ctx.vertex(SPECIAL_ARC_WORDS[0])
    w = ctx.vertex(SPECIAL_ARC_WORDS[1])
    a_group = group_a_elements()
    for lift in lifted_stabiliser(ctx, v):
        if lift.base_perm not in a_group and lift.cover_perm(w) != w:
            return SigmaTau(sigma, lift, (v, w))
    raise ConstructionError("no element of the lifted stabiliser outside A~ moves w")


def sigma_conditions(ctx: GammaAction, st: SigmaTau) -> dict[str, bool]:
    v, w = st.special_arc
    s = st.sigma
    others = [u for u in ctx.lam.adjacency[v] if u != w]
    tau = st.tau.cover_perm
    twisted = [s.permuted(b.cover_perm.images) + s for b in ctx.b_lifts]
    return {
        "arc": ctx.lam.has_edge(v, w),
        "sigma_v_zero": s[v] == 0,
        "sigma_w_one": s[w] == 1,
        "other_neighbours_zero": all(s[u] == 0 for u in others),
        "twists_in_e1": all(in_span(ctx.e1_basis, x) for x in twisted),
        "tau_outside_a": st.tau.base_perm not in group_a_elements(),
        "tau_fixes_v": tau(v) == v,
        "tau_moves_w": tau(w) != w,
        "tau_sigma_fixes_v0": st.tau_sigma()(2 * v) == 2 * v,
    }


# ---------------------------------------------------------------- G1 membership


def decompose(p: Perm) -> tuple[Perm, Gf2Vector]:
    """Split a pair-preserving permutation of Gamma into (action on Lambda, flip vector).

    The result satisfies ``p == flip_perm(x) * lift_as_gamma_perm(pi)``.
    """
    im = p.images
    half = len(im) // 2
    base = []
    bits = 0
    for u in range(half):
        x0, x1 = im[2 * u], im[2 * u + 1]
        if x0 ^ 1 != x1:
            raise ValueError("permutation does not preserve the pairs {(u,0),(u,1)}")
        base.append(x0 >> 1)
        if x0 & 1:
            bits |= 1 << u
    return Perm.checked(base), Gf2Vector(bits, half)


def in_lifted_a(ctx: GammaAction, pi: Perm) -> bool:
    size = ctx.fibre_size
    n_base = ctx.voltage.base.n_vertices
    g = []
    for u in range(n_base):
        targets = {pi(u * size + k) // size for k in range(size)}
        if len(targets) != 1:
            return False
        g.append(targets.pop())
    g = Perm(g)
    if g not in group_a_elements():
        return False
    candidate = lift_mapping(ctx.voltage, g, 0, pi(0))
    return candidate.cover_perm == pi


def g1_membership(p: Perm, n: int) -> bool:
    ctx = build_gamma(n)
    pi, x = decompose(p)
    return in_span(ctx.e1_basis, x) and in_lifted_a(ctx, pi)


# ---------------------------------------------------------------- groups and local actions


def group_generators(ctx: GammaAction, construction: str) -> list[Perm]:
    flips = [flip_perm(x) for x in ctx.e1_basis]
    if construction == "G1":
        return flips + [lift_as_gamma_perm(a) for a in ctx.a_lifts]
    if construction == "G2":
        return flips + [lift_as_gamma_perm(b) for b in ctx.b_lifts]
    if construction == "G3":
        st = build_sigma_tau(ctx.n)
        return group_generators(ctx, "G1") + [st.tau_sigma()]
    raise ValueError(f"unknown construction {construction!r}")


@dataclass
class LocalActionReport:
    construction: str
    n: int
    vertex: int
    vertex_label: str
    local_group: PermGroup
    identified_as: str
    local_order: int
    kernel_order: int
    top_order: int
    e1_dim: int
    stabiliser_log2_times3: int
    bound_log2: Fraction
    witnesses: list[Perm]

    @property
    def stabiliser_order(self) -> int:
        return 3 * 2**self.stabiliser_log2_times3

    @property
    def bound_applies(self) -> bool:
        return self.n >= 3

    @property
    def bound_holds(self) -> bool:
        return self.stabiliser_log2_times3 >= self.bound_log2

    def to_json_doc(self) -> dict:
        return {
            "construction": self.construction,
            "n": self.n,
            "vertex": self.vertex_label,
            "identified_as": self.identified_as,
            "local_order": self.local_order,
            "kernel_order": self.kernel_order,
            "e1_dim": self.e1_dim,
            "stabiliser_order_log2_times3": self.stabiliser_log2_times3,
            "bound_log2": str(self.bound_log2),
            "bound_applies": self.bound_applies,
            "bound_holds": self.bound_holds,
            "witnesses": [p.cycle_string() for p in self.witnesses],
        }


def _a_translate(ctx: GammaAction, src: int, dst: int) -> LiftedAut:
    size = ctx.fibre_size
    u, w = src // size, dst // size
    for g in aut_a_elements_sorted():
        if g(u) == w:
            return lift_mapping(ctx.voltage, g, src, dst)
    raise ConstructionError("A is not transitive on the base")


@lru_cache(maxsize=None)
def aut_a_elements_sorted() -> tuple[Perm, ...]:
    return tuple(sorted(group_a_elements(), key=lambda p: p.images))


def stabiliser_parts(ctx: GammaAction, construction: str, v: int) -> tuple[list[Gf2Vector], list[Perm]]:
    """(basis of (E1)_v, top generators as Gamma permutations fixing (v, 0))."""
    if construction not in CONSTRUCTIONS:
        raise ValueError(f"unknown construction {construction!r}")
    if ctx.e1_dim < 2:
        raise ConstructionError("E1 has dimension < 2")
    kernel = vanishing_subspace(ctx.e1_basis, v)
    stab = lifted_stabiliser(ctx, v)
    a_group = group_a_elements()
    rotation = next(s for s in stab if s.base_perm in a_group and s.cover_perm.order() == 3)
    top = [lift_as_gamma_perm(rotation)]
    if construction == "G2":
        nbrs = ctx.lam.adjacency[v]
        inv = next(s for s in stab if s.cover_perm.order() == 2 and s.cover_perm(nbrs[0]) != nbrs[0])
        top.append(lift_as_gamma_perm(inv))
    elif construction == "G3":
        st = build_sigma_tau(ctx.n)
        ts = st.tau_sigma()
        v0 = st.special_arc[0]
        if v != v0:
            h = lift_as_gamma_perm(_a_translate(ctx, v0, v))
            ts = ts.conjugate(h)
        top.append(ts)
    for p in top:
        if p(2 * v) != 2 * v:
            raise ConstructionError("stabiliser generator moves (v, 0)")
    return kernel, top


def vertex_stabiliser_local_action(construction: str, n: int, v: int | None = None) -> LocalActionReport:
    ctx = build_gamma(n)
    if v is None:
        v = ctx.vertex(SPECIAL_ARC_WORDS[0])
    kernel, top = stabiliser_parts(ctx, construction, v)
    nbhd = list(ctx.gamma.adjacency[2 * v])
    kernel_local = {flip_perm(x).restrict(nbhd) for x in kernel}
    top_local = [p.restrict(nbhd) for p in top]
    kernel_gens = sorted((p for p in kernel_local if not p.is_identity()), key=lambda p: p.images)
    local = PermGroup(kernel_gens + top_local, 6)
    kernel_order = group_order(PermGroup(kernel_gens, 6))
    lam_nbhd = list(ctx.lam.adjacency[v])
    top_on_lambda = [decompose(p)[0].restrict(lam_nbhd) for p in top]
    top_order = group_order(PermGroup(top_on_lambda, 3))
    d = ctx.e1_dim
    # |stabiliser| = 2^(d-1) * top_order, written as 3 * 2^k
    k = (d - 1) + (top_order // 3).bit_length() - 1
    m = ctx.gamma.n_vertices
    bound = Fraction(m, 144) - (1 if construction == "G1" else 0)
    return LocalActionReport(
        construction=construction,
        n=n,
        vertex=v,
        vertex_label=str(ctx.lam.labels[v]),
        local_group=local,
        identified_as=identify_degree6(local),
        local_order=group_order(local),
        kernel_order=kernel_order,
        top_order=top_order,
        e1_dim=d,
        stabiliser_log2_times3=k,
        bound_log2=bound,
        witnesses=kernel_gens + top_local,
    )


def generic_local_action(construction: str, n: int = 1, v: int | None = None) -> tuple[int, str, int]:
    """Cross-check by Schreier-Sims on the whole group: (|G|, local action name, |G_(v,0)|)."""
    ctx = build_gamma(n)
    if v is None:
        v = ctx.vertex(SPECIAL_ARC_WORDS[0])
    group = PermGroup(group_generators(ctx, construction), ctx.gamma.n_vertices)
    stab = point_stabiliser(group, 2 * v)
    nbhd = list(ctx.gamma.adjacency[2 * v])
    local = PermGroup([p.restrict(nbhd) for p in stab.generators], 6)
    return group_order(group), identify_degree6(local), group_order(stab)


def arc_orbit_size(gens: list[Perm], graph: Graph) -> int:
    start = (0, graph.adjacency[0][0])
    seen = {start}
    stack = [start]
    images = [p.images for p in gens]
    while stack:
        u, w = stack.pop()
        for im in images:
            arc = (im[u], im[w])
            if arc not in seen:
                seen.add(arc)
                stack.append(arc)
    return len(seen)


def normalises_g1(ctx: GammaAction, p: Perm) -> bool:
    """Every G1 generator conjugated by ``p`` lies back in G1."""
    return all(g1_membership(g.conjugate(p), ctx.n) for g in group_generators(ctx, "G1"))


def gamma_facts(n: int) -> dict:
    ctx = build_gamma(n)
    g = ctx.gamma
    return {
        "vertices": g.n_vertices,
        "expected_vertices": 32 * n**4,
        "regular6": g.is_regular(6),
        "connected": is_connected(g),
    }


def vertex_transitive(ctx: GammaAction, construction: str) -> bool:
    group = PermGroup(group_generators(ctx, construction), ctx.gamma.n_vertices)
    return len(orbit(group, 0)) == ctx.gamma.n_vertices
