"""Dense linear algebra over GF(2).

Vectors are Python ints used as bitsets (bit ``i`` is coordinate ``i``).
Matrices keep their rows packed into little-endian ``uint64`` words so that
elimination runs as word-parallel XOR over whole row blocks in numpy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

WORD = 64


class DimensionError(ValueError):
    pass


class DependentVector(Exception):
    """Raised by :func:`extend_independent` when the vector is already in the span."""


@dataclass(frozen=True)
class Gf2Vector:
    bits: int
    length: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits outside the ambient dimension")

    @classmethod
    def zero(cls, length: int) -> "Gf2Vector":
        return cls(0, length)

    @classmethod
    def from_support(cls, support: Iterable[int], length: int) -> "Gf2Vector":
        bits = 0
        for i in support:
            bits ^= 1 << i
        return cls(bits, length)

    @classmethod
    def from_array(cls, values: Sequence[int]) -> "Gf2Vector":
        return cls.from_support((i for i, x in enumerate(values) if x & 1), len(values))

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __add__(self, other: "Gf2Vector") -> "Gf2Vector":
        if other.length != self.length:
            raise DimensionError("vector lengths differ")
        return Gf2Vector(self.bits ^ other.bits, self.length)

    __xor__ = __add__
    __sub__ = __add__

    def __bool__(self) -> bool:
        return self.bits != 0

    def __len__(self) -> int:
        return self.length

    def support(self) -> list[int]:
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return out

    def weight(self) -> int:
        return self.bits.bit_count()

    def to_array(self) -> np.ndarray:
        arr = np.zeros(self.length, dtype=np.uint8)
        arr[self.support()] = 1
        return arr

    def permuted(self, images: Sequence[int]) -> "Gf2Vector":
        """Push the vector forward along a point map: the result has support ``{images[i]}``."""
        return Gf2Vector.from_support((images[i] for i in self.support()), self.length)


def _pack_rows(dense: np.ndarray) -> np.ndarray:
    rows, cols = dense.shape
    n_words = max(1, -(-cols // WORD))
    padded = np.zeros((rows, n_words * WORD), dtype=np.uint8)
    padded[:, :cols] = dense & 1
    packed = np.packbits(padded, axis=1, bitorder="little")
    return packed.view("<u8").reshape(rows, n_words).copy()


def _row_to_int(row: np.ndarray) -> int:
    return int.from_bytes(row.astype("<u8").tobytes(), "little")


class Gf2Matrix:
    """A ``rows x cols`` matrix over GF(2) with bit-packed rows.

    Treat instances as immutable; operations return fresh matrices.
    """

    __slots__ = ("rows", "cols", "words")

    def __init__(self, rows: int, cols: int, words: np.ndarray):
        n_words = max(1, -(-cols // WORD))
        if words.shape != (rows, n_words):
            raise DimensionError(f"packed shape {words.shape} does not fit {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.words = words
        self.words.flags.writeable = False

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Gf2Matrix":
        return cls(rows, cols, np.zeros((rows, max(1, -(-cols // WORD))), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_dense(cls, dense) -> "Gf2Matrix":
        arr = np.asarray(dense, dtype=np.uint8) & 1
        if arr.ndim != 2:
            raise DimensionError("expected a 2-d array")
        return cls(arr.shape[0], arr.shape[1], _pack_rows(arr))

    @classmethod
    def from_row_sets(cls, rows: int, cols: int, row_sets: Iterable[Iterable[int]]) -> "Gf2Matrix":
        dense = np.zeros((rows, cols), dtype=np.uint8)
        for r, entries in enumerate(row_sets):
            for c in entries:
                dense[r, c] ^= 1
        return cls.from_dense(dense)

    def to_dense(self) -> np.ndarray:
        as_bytes = self.words.astype("<u8").view(np.uint8).reshape(self.rows, 8 * self.words.shape[1])
        bits = np.unpackbits(as_bytes, axis=1, bitorder="little")
        return bits[:, : self.cols].copy()

    def row(self, i: int) -> Gf2Vector:
        return Gf2Vector(_row_to_int(self.words[i]), self.cols)

    def __add__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("matrix shapes differ")
        return Gf2Matrix(self.rows, self.cols, self.words ^ other.words)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and bool(
            np.array_equal(self.words, other.words)
        )

    def __repr__(self) -> str:
        return f"Gf2Matrix({self.rows}x{self.cols})"

    def is_symmetric(self) -> bool:
        dense = self.to_dense()
        return bool(np.array_equal(dense, dense.T))

    def matvec(self, v: Gf2Vector) -> Gf2Vector:
        if v.length != self.cols:
            raise DimensionError("vector length does not match column count")
        out = 0
        for r in range(self.rows):
            if (_row_to_int(self.words[r]) & v.bits).bit_count() & 1:
                out |= 1 << r
        return Gf2Vector(out, self.rows)


def add_identity(m: Gf2Matrix) -> Gf2Matrix:
    if m.rows != m.cols:
        raise DimensionError("square matrix required")
    return m + Gf2Matrix.identity(m.rows)


def _rref(m: Gf2Matrix) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form of the packed rows plus the pivot columns."""
    work = m.words.copy()
    pivots: list[int] = []
    r = 0
    for col in range(m.cols):
        if r == m.rows:
            break
        w, mask = col // WORD, np.uint64(1 << (col % WORD))
        hits = np.flatnonzero(work[r:, w] & mask)
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            work[[r, p]] = work[[p, r]]
        others = np.flatnonzero(work[:, w] & mask)
        others = others[others != r]
        if others.size:
            work[others] ^= work[r]
        pivots.append(col)
        r += 1
    return work[:r], pivots


def rank(m: Gf2Matrix) -> int:
    return len(_rref(m)[1])


@dataclass(frozen=True)
class Gf2Basis:
    """Basis of a subspace of GF(2)^ambient_dim in reduced row-echelon form.

    ``vectors[k]`` has its lowest set bit at ``pivots[k]``; pivots strictly
    increase, and no other vector has a one in a pivot column.
    """

    vectors: tuple[Gf2Vector, ...]
    ambient_dim: int

    def __post_init__(self):
        piv = self.pivots
        if any(a >= b for a, b in zip(piv, piv[1:])):
            raise ValueError("basis is not in echelon form")
        for v in self.vectors:
            if v.length != self.ambient_dim:
                raise DimensionError("basis vector has wrong length")
            if not v:
                raise ValueError("zero vector in basis")

    @classmethod
    def empty(cls, ambient_dim: int) -> "Gf2Basis":
        return cls((), ambient_dim)

    @classmethod
    def spanned_by(cls, vectors: Iterable[Gf2Vector], ambient_dim: int) -> "Gf2Basis":
        basis = cls.empty(ambient_dim)
        for v in vectors:
            try:
                basis = extend_independent(basis, v)
            except DependentVector:
                pass
        return basis

    @property
    def pivots(self) -> list[int]:
        return [(v.bits & -v.bits).bit_length() - 1 for v in self.vectors]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def reduce(self, v: Gf2Vector) -> Gf2Vector:
        if v.length != self.ambient_dim:
            raise DimensionError("vector length does not match the basis")
        bits = v.bits
        for vec, p in zip(self.vectors, self.pivots):
            if (bits >> p) & 1:
                bits ^= vec.bits
        return Gf2Vector(bits, self.ambient_dim)


def in_span(basis: Gf2Basis, v: Gf2Vector) -> bool:
    return not basis.reduce(v)


def extend_independent(basis: Gf2Basis, v: Gf2Vector) -> Gf2Basis:
    """Return ``basis`` with ``v`` adjoined, re-reduced.

    Raises :class:`DependentVector` when ``v`` already lies in the span.
    """
    r = basis.reduce(v)
    if not r:
        raise DependentVector("vector lies in the span of the basis")
    p = (r.bits & -r.bits).bit_length() - 1
    vecs = []
    for vec in basis.vectors:
        if (vec.bits >> p) & 1:
            vec = vec + r
        vecs.append(vec)
    vecs.append(r)
    vecs.sort(key=lambda x: x.bits & -x.bits)
    return Gf2Basis(tuple(vecs), basis.ambient_dim)


def kernel_basis(m: Gf2Matrix) -> Gf2Basis:
    """Basis of the right null space ``{x : m x = 0}``."""
    reduced, pivots = _rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    pivot_bits = [1 << p for p in pivots]
    vectors = []
    for f in free:
        w, s = f // WORD, f % WORD
        column = (reduced[:, w] >> np.uint64(s)) & np.uint64(1)
        bits = 1 << f
        for i in np.flatnonzero(column):
            bits |= pivot_bits[i]
        vectors.append(Gf2Vector(bits, m.cols))
    return Gf2Basis.spanned_by(vectors, m.cols)
