"""Permutations, permutation groups, and degree-6 identification.

Permutations act on the right: ``(p * q)(i) == q(p(i))``, so products read
left to right as "first p, then q".
"""

from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass, field
from operator import itemgetter
from typing import Iterable, Sequence

DEFAULT_MAX_DEGREE = 4096


class ResourceLimitError(RuntimeError):
    pass


class NotTransitiveError(ValueError):
    pass


class Perm:
    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        self.images = tuple(images)
        self._hash = None

    @classmethod
    def checked(cls, images: Iterable[int]) -> "Perm":
        p = cls(images)
        if sorted(p.images) != list(range(len(p.images))):
            raise ValueError("not a permutation")
        return p

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Perm":
        images = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a] = b
        return cls.checked(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Perm") -> "Perm":
        if len(self.images) <= 1:
            return Perm(other.images)
        return Perm(itemgetter(*self.images)(other.images))

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __repr__(self) -> str:
        return f"Perm({self.cycle_string()})"

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def moved_points(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i != j]

    def fixed_points(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i == j]

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles(include_fixed=True)))

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles(include_fixed=True))) if self.degree else 1

    def conjugate(self, g: "Perm") -> "Perm":
        """``g^-1 * self * g``: the same cycle shape with points relabelled by g."""
        return g.inverse() * self * g

    def restrict(self, points: Sequence[int]) -> "Perm":
        """Action on an invariant point list, renumbered 0..len(points)-1."""
        pos = {p: k for k, p in enumerate(points)}
        try:
            return Perm.checked(pos[self.images[p]] for p in points)
        except KeyError:
            raise ValueError("point set is not invariant") from None


@dataclass
class PermGroup:
    generators: list[Perm]
    degree: int
    _chain: "StabChain | None" = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        for g in self.generators:
            if g.degree != self.degree:
                raise ValueError("generator degree mismatch")

    @classmethod
    def of(cls, gens: Iterable[Perm], degree: int | None = None) -> "PermGroup":
        gens = list(gens)
        if degree is None:
            if not gens:
                raise ValueError("degree required for the trivial group")
            degree = gens[0].degree
        return cls(gens, degree)

    def order(self) -> int:
        return group_order(self)

    def elements(self, limit: int = 100_000) -> set[Perm]:
        """Enumerate all elements by closure; for small groups and oracles."""
        ident = Perm.identity(self.degree)
        seen = {ident}
        queue = deque([ident])
        while queue:
            x = queue.popleft()
            for g in self.generators:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    if len(seen) > limit:
                        raise ResourceLimitError("element enumeration limit exceeded")
                    queue.append(y)
        return seen

    def is_transitive(self) -> bool:
        return self.degree == 0 or len(orbit(self, 0)) == self.degree

    def contains(self, p: Perm) -> bool:
        return stab_chain(self).contains(p)


def orbit(g: PermGroup, point: int) -> set[int]:
    if not 0 <= point < g.degree:
        raise IndexError(point)
    seen = {point}
    queue = deque([point])
    gens = [s.images for s in g.generators]
    while queue:
        x = queue.popleft()
        for s in gens:
            y = s[x]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def orbit_transversal(gens: Sequence[Perm], point: int) -> dict[int, Perm]:
    """Map each orbit point ``q`` to an element sending ``point`` to ``q``."""
    degree = gens[0].degree if gens else point + 1
    trans = {point: Perm.identity(degree)}
    queue = deque([point])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = s.images[x]
            if y not in trans:
                trans[y] = trans[x] * s
                queue.append(y)
    return trans


def max_degree() -> int:
    return int(os.environ.get("ATCOVER_MAX_DEGREE", DEFAULT_MAX_DEGREE))


class StabChain:
    """Base and strong generating set built by incremental Schreier-Sims.

    Base points are taken in increasing order of first moved point, after an
    optional caller-supplied prefix.
    """

    def __init__(self, degree: int, base_prefix: Sequence[int] = ()):
        self.degree = degree
        self.base: list[int] = []
        self.gens: list[list[Perm]] = []
        self.trans: list[dict[int, Perm]] = []
        self._prefix = list(base_prefix)
        self._id = Perm.identity(degree)

    def _new_level(self, g: Perm) -> None:
        k = len(self.base)
        if k < len(self._prefix):
            point = self._prefix[k]
        else:
            point = next(i for i, j in enumerate(g.images) if i != j and i not in self.base)
        self.base.append(point)
        self.gens.append([])
        self.trans.append({point: self._id})

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for k in range(start, len(self.base)):
            b = g.images[self.base[k]]
            u = self.trans[k].get(b)
            if u is None:
                return g, k
            g = g * u.inverse()
        return g, len(self.base)

    def contains(self, g: Perm) -> bool:
        h, _ = self.sift(g)
        return h.is_identity()

    def _add(self, level: int, g: Perm) -> None:
        while level >= len(self.base):
            self._new_level(g)
        self.gens[level].append(g)
        trans = self.trans[level]
        gens = self.gens[level]
        # new generator applied to existing orbit points, then all gens on new points
        pending = deque((beta, g) for beta in list(trans))
        fresh = deque()
        while pending or fresh:
            if pending:
                beta, s = pending.popleft()
                self._consider(level, beta, s, fresh)
            else:
                beta = fresh.popleft()
                for s in list(gens):
                    pending.append((beta, s))

    def _consider(self, level: int, beta: int, s: Perm, fresh: deque) -> None:
        trans = self.trans[level]
        t = trans[beta] * s
        gamma = s.images[beta]
        u = trans.get(gamma)
        if u is None:
            trans[gamma] = t
            fresh.append(gamma)
            return
        h = t * u.inverse()
        if h.is_identity():
            return
        self._ensure(level + 1, h)

    def _ensure(self, level: int, h: Perm) -> None:
        residue, j = self.sift(h, level)
        if residue.is_identity():
            return
        # residue fixes base[:j], so it is a strong generator for levels level..j
        for k in range(j, level - 1, -1):
            self._add(k, residue)

    def order(self) -> int:
        out = 1
        for t in self.trans:
            out *= len(t)
        return out

    def stabiliser_generators(self, level: int = 1) -> list[Perm]:
        """Strong generators of the pointwise stabiliser of ``base[:level]``."""
        if level >= len(self.base):
            return []
        return list(self.gens[level])


def _build_chain(g: PermGroup, base_prefix: Sequence[int]) -> StabChain:
    if g.degree > max_degree():
        raise ResourceLimitError(f"degree {g.degree} exceeds ceiling {max_degree()}")
    chain = StabChain(g.degree, base_prefix)
    for _ in base_prefix:
        chain._new_level(chain._id)
    for s in g.generators:
        if not s.is_identity():
            chain._ensure(0, s)
    return chain


def stab_chain(g: PermGroup) -> StabChain:
    if g._chain is None:
        g._chain = _build_chain(g, ())
    return g._chain


def group_order(g: PermGroup) -> int:
    """Exact order via Schreier-Sims; refuses degrees above ``ATCOVER_MAX_DEGREE``."""
    return stab_chain(g).order()


def point_stabiliser(g: PermGroup, point: int) -> PermGroup:
    chain = _build_chain(g, [point])
    return PermGroup(chain.stabiliser_generators(1), g.degree)


# ---------------------------------------------------------------- s-arcs


def s_arcs(graph, s: int) -> list[tuple[int, ...]]:
    if s not in (1, 2):
        raise ValueError("s must be 1 or 2")
    arcs = graph.arcs()
    if s == 1:
        return arcs
    return [(u, v, w) for u, v in arcs for w in graph.adjacency[v] if w != u]


def s_arc_count_regularity(g: PermGroup, graph, s: int) -> str:
    """Classify the action on s-arcs: ``regular``, ``transitive-not-regular`` or ``intransitive``."""
    if g.degree != graph.n_vertices:
        raise ValueError("group degree differs from vertex count")
    for p in g.generators:
        if not graph.is_automorphism(p.images):
            raise ValueError("generator is not a graph automorphism")
    walks = s_arcs(graph, s)
    if not walks:
        return "regular" if group_order(g) == 1 else "transitive-not-regular"
    start = walks[0]
    seen = {start}
    queue = deque([start])
    gens = [p.images for p in g.generators]
    while queue:
        w = queue.popleft()
        for im in gens:
            x = tuple(im[i] for i in w)
            if x not in seen:
                seen.add(x)
                queue.append(x)
    if len(seen) != len(walks):
        return "intransitive"
    return "regular" if group_order(g) == len(walks) else "transitive-not-regular"


# ---------------------------------------------------------------- blocks


@dataclass(frozen=True)
class BlockSystem:
    blocks: tuple[tuple[int, ...], ...]
    kernel_order: int | None = None

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    def block_action(self, p: Perm) -> Perm:
        where = {x: k for k, b in enumerate(self.blocks) for x in b}
        images = []
        for b in self.blocks:
            targets = {where[p.images[x]] for x in b}
            if len(targets) != 1:
                raise ValueError("permutation does not preserve the block system")
            images.append(targets.pop())
        return Perm.checked(images)


def _minimal_block(gens: Sequence[Perm], degree: int, a: int, b: int) -> tuple[tuple[int, ...], ...]:
    # union-find closure of {a, b} under the group (Atkinson)
    parent = list(range(degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        if rx > ry:
            rx, ry = ry, rx
        parent[ry] = rx
        return True

    union(a, b)
    queue = deque([(a, b)])
    while queue:
        x, y = queue.popleft()
        for s in gens:
            sx, sy = s.images[x], s.images[y]
            if find(sx) != find(sy):
                rx, ry = find(sx), find(sy)
                union(rx, ry)
                queue.append((rx, ry))
    classes: dict[int, list[int]] = {}
    for x in range(degree):
        classes.setdefault(find(x), []).append(x)
    return tuple(sorted(tuple(c) for c in classes.values()))


def minimal_blocks(g: PermGroup) -> list[BlockSystem]:
    """All minimal nontrivial block systems of a transitive group, with block kernel orders."""
    if not g.is_transitive():
        raise NotTransitiveError("minimal_blocks needs a transitive group")
    systems = set()
    for b in range(1, g.degree):
        sys_ = _minimal_block(g.generators, g.degree, 0, b)
        if len(sys_) > 1:
            systems.add(sys_)
    block_of_0 = {s: set(next(b for b in s if 0 in b)) for s in systems}
    minimal = [
        s for s in systems if not any(block_of_0[t] < block_of_0[s] for t in systems if t != s)
    ]
    order = group_order(g)
    out = []
    for s in sorted(minimal):
        bs = BlockSystem(s)
        top = PermGroup([bs.block_action(p) for p in g.generators], len(s))
        out.append(BlockSystem(s, order // group_order(top)))
    return out


# ---------------------------------------------------------------- degree 6

DEGREE6_NAMES = ("A4_6", "S4_6d", "S4_6c")


def _coset_action(gens: Sequence[Perm], subgroup_gens: Sequence[Perm]) -> list[Perm]:
    degree = gens[0].degree
    group = sorted(PermGroup(list(gens), degree).elements(), key=lambda p: p.images)
    sub = PermGroup(list(subgroup_gens), degree).elements()
    cosets: list[frozenset] = []
    for g in group:
        c = frozenset(h * g for h in sub)
        if c not in cosets:
            cosets.append(c)
    index = {}
    for k, c in enumerate(cosets):
        for x in c:
            index[x] = k
    return [Perm.checked(index[next(iter(c)) * s] for c in cosets) for s in gens]


def reference_degree6(which: str) -> PermGroup:
    """The three degree-6 targets, built as coset actions of Alt(4) / Sym(4)."""
    p = lambda *cycles: Perm.from_cycles(4, cycles)
    if which == "A4_6":
        gens, sub = [p((0, 1, 2)), p((1, 2, 3))], [p((0, 1), (2, 3))]
    elif which == "S4_6d":
        gens, sub = [p((0, 1, 2, 3)), p((0, 1))], [p((0, 1)), p((2, 3))]
    elif which == "S4_6c":
        gens, sub = [p((0, 1, 2, 3)), p((0, 1))], [p((0, 1, 2, 3))]
    else:
        raise ValueError(f"unknown reference group {which!r}")
    return PermGroup(_coset_action(gens, sub), 6)


_ALL_S6 = None


def _sym6() -> list[Perm]:
    global _ALL_S6
    if _ALL_S6 is None:
        _ALL_S6 = [Perm(p) for p in itertools.permutations(range(6))]
    return _ALL_S6


def _fingerprint(g: PermGroup) -> tuple:
    elems = g.elements()
    stab = sum(1 for e in elems if e.images[0] == 0)
    return len(elems), tuple(sorted(e.cycle_type() for e in elems)), stab


def is_conjugate_in_sym6(g: PermGroup, h: PermGroup) -> bool:
    if g.degree != 6 or h.degree != 6:
        raise ValueError("degree 6 required")
    if _fingerprint(g) != _fingerprint(h):
        return False
    target = h.elements()
    for pi in _sym6():
        if all(s.conjugate(pi) in target for s in g.generators):
            return True
    return False


def identify_degree6(g: PermGroup) -> str:
    """Name of the reference group conjugate to ``g`` in Sym(6), else ``"other"``."""
    if g.degree != 6:
        raise ValueError("degree 6 required")
    if not g.is_transitive():
        raise NotTransitiveError("identify_degree6 needs a transitive group")
    for name in DEGREE6_NAMES:
        if is_conjugate_in_sym6(g, _reference_cache(name)):
            return name
    return "other"


_REFS: dict[str, PermGroup] = {}


def _reference_cache(name: str) -> PermGroup:
    if name not in _REFS:
        _REFS[name] = reference_degree6(name)
    return _REFS[name]


def perm_to_json(p: Perm) -> dict:
    return {"cycles": p.cycle_string(), "images": list(p.images)}
