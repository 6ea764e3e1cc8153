"""The order-16 group R, its Cayley graph MK, and the automorphism groups A <= B.

Elements are stored in the normal form a^ea b^eb c^ec z^ez.  Cayley edges
join ``g`` and ``s*g`` for ``s`` in {a, b, c}; with that convention the rim
cycle id, c, bc, bz, z, cz, bcz, b of the usual drawing consists of edges.
Right translations ``g -> g*h`` and the automorphisms of R induced by
permuting the generators act as graph automorphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .graph import Graph
from .perm import Perm, PermGroup


@dataclass(frozen=True, order=True)
class RElement:
    ea: int = 0
    eb: int = 0
    ec: int = 0
    ez: int = 0

    def __mul__(self, other: "RElement") -> "RElement":
        # moving a', b' leftwards past b, c picks up one z per commutator
        z = self.ez + other.ez + other.ea * self.eb + other.ea * self.ec + other.eb * self.ec
        return RElement(
            (self.ea + other.ea) % 2,
            (self.eb + other.eb) % 2,
            (self.ec + other.ec) % 2,
            z % 2,
        )

    def inverse(self) -> "RElement":
        for y in ELEMENTS:
            if (self * y).is_identity():
                return y
        raise AssertionError("unreachable")

    def is_identity(self) -> bool:
        return self == IDENTITY

    @property
    def bits(self) -> tuple[int, int, int, int]:
        return (self.ea, self.eb, self.ec, self.ez)

    def word(self) -> str:
        w = "".join(ch for ch, e in zip("abcz", self.bits) if e)
        return w or "id"

    def __str__(self) -> str:
        return self.word()

    @classmethod
    def parse(cls, word: str) -> "RElement":
        word = word.strip()
        if word in ("id", "1", ""):
            return IDENTITY
        out = IDENTITY
        for ch in word:
            if ch not in GENERATOR_BY_NAME:
                raise ValueError(f"bad letter {ch!r} in {word!r}")
            out = out * GENERATOR_BY_NAME[ch]
        return out


IDENTITY = RElement()
A_GEN = RElement(1, 0, 0, 0)
B_GEN = RElement(0, 1, 0, 0)
C_GEN = RElement(0, 0, 1, 0)
Z_GEN = RElement(0, 0, 0, 1)
GENERATOR_BY_NAME = {"a": A_GEN, "b": B_GEN, "c": C_GEN, "z": Z_GEN}
CAYLEY_GENERATORS = (A_GEN, B_GEN, C_GEN)
ELEMENTS: tuple[RElement, ...] = tuple(sorted(RElement(*bits) for bits in product((0, 1), repeat=4)))


def r_multiply(x: RElement, y: RElement) -> RElement:
    return x * y


def commutator(x: RElement, y: RElement) -> RElement:
    return x.inverse() * y.inverse() * x * y


@lru_cache(maxsize=None)
def build_mk() -> Graph:
    index = {g: i for i, g in enumerate(ELEMENTS)}
    adj = [[index[s * g] for s in CAYLEY_GENERATORS] for g in ELEMENTS]
    return Graph(adj, ELEMENTS)


def vertex(word: str) -> int:
    return ELEMENTS.index(RElement.parse(word))


def _perm_of(f) -> Perm:
    index = {g: i for i, g in enumerate(ELEMENTS)}
    return Perm.checked(index[f(g)] for g in ELEMENTS)


def right_translation(h: RElement) -> Perm:
    return _perm_of(lambda g: g * h)


def generator_automorphism(images: tuple[RElement, RElement, RElement]) -> Perm:
    """Automorphism of R sending (a, b, c) to ``images``, as a vertex permutation."""
    ia, ib, ic = images

    def f(g: RElement) -> RElement:
        out = IDENTITY
        for e, im in zip(g.bits[:3], (ia, ib, ic)):
            if e:
                out = out * im
        if g.ez:
            out = out * Z_GEN
        return out

    return _perm_of(f)


def swap_ab() -> Perm:
    return generator_automorphism((B_GEN, A_GEN, C_GEN))


def rotate_abc() -> Perm:
    """Induced by a -> b -> c -> a; fixes id and 3-cycles its neighbours."""
    return generator_automorphism((B_GEN, C_GEN, A_GEN))


def aut_b_generators() -> PermGroup:
    gens = [right_translation(s) for s in CAYLEY_GENERATORS] + [swap_ab(), rotate_abc()]
    return PermGroup(gens, 16)


def aut_a_generators() -> PermGroup:
    gens = [right_translation(s) for s in CAYLEY_GENERATORS] + [rotate_abc()]
    return PermGroup(gens, 16)


@lru_cache(maxsize=None)
def group_b_elements() -> tuple[Perm, ...]:
    return tuple(sorted(aut_b_generators().elements(), key=lambda p: p.images))


@lru_cache(maxsize=None)
def group_a_elements() -> frozenset[Perm]:
    return frozenset(aut_a_generators().elements())
