"""Finite binary relations on ordinals, with closures and exhaustive enumeration.

Relations live on a universe {0, ..., size-1} and are stored as uint64
bitmask rows (see `kernels`).  Everything here is immutable and pure, so
values can be shared freely and swept in parallel.
"""

from __future__ import annotations

import random
from typing import Iterable, Iterator

import numpy as np

from . import kernels
from .errors import BoundExceededError, SizeMismatchError

# Bitmask rows cap the universe at 63 nodes, which also keeps every shift in
# the kernels strictly below the word width.
MAX_UNIVERSE = 63

# Exhaustive preorder enumeration is 2^(n(n-1)) candidates; refuse beyond 4.
ENUMERATION_LIMIT = 4


def _diagonal_rows(size: int) -> np.ndarray:
    return np.uint64(1) << np.arange(size, dtype=np.uint64)


class FiniteRelation:
    """An immutable binary relation on the universe {0, ..., size-1}."""

    __slots__ = ("size", "rows", "_hash")

    def __init__(self, size: int, pairs: Iterable[tuple[int, int]] = ()):
        if size < 0:
            raise ValueError("universe size must be nonnegative")
        if size > MAX_UNIVERSE:
            raise BoundExceededError(
                f"universe size {size} exceeds bitmask capacity {MAX_UNIVERSE}")
        rows = np.zeros(size, dtype=np.uint64)
        for i, j in pairs:
            if not (0 <= i < size and 0 <= j < size):
                raise ValueError(f"pair ({i}, {j}) out of range for universe of size {size}")
            rows[i] |= np.uint64(1) << np.uint64(j)
        rows.setflags(write=False)
        self.size = size
        self.rows = rows
        self._hash = None

    @classmethod
    def from_rows(cls, size: int, rows: np.ndarray) -> "FiniteRelation":
        """Wrap precomputed bitmask rows (copied, then frozen)."""
        rel = cls.__new__(cls)
        if size > MAX_UNIVERSE:
            raise BoundExceededError(
                f"universe size {size} exceeds bitmask capacity {MAX_UNIVERSE}")
        rows = np.ascontiguousarray(rows, dtype=np.uint64).copy()
        if rows.shape != (size,):
            raise ValueError(f"expected {size} rows, got shape {rows.shape}")
        if size < 64 and np.any(rows >> np.uint64(size)):
            raise ValueError("row mask has bits outside the universe")
        rows.setflags(write=False)
        rel.size = size
        rel.rows = rows
        rel._hash = None
        return rel

    @classmethod
    def diagonal(cls, size: int) -> "FiniteRelation":
        return cls.from_rows(size, _diagonal_rows(size))

    @property
    def pairs(self) -> frozenset[tuple[int, int]]:
        out = []
        for i in range(self.size):
            row = int(self.rows[i])
            while row:
                j = (row & -row).bit_length() - 1
                out.append((i, j))
                row &= row - 1
        return frozenset(out)

    def __contains__(self, pair: tuple[int, int]) -> bool:
        i, j = pair
        if not (0 <= i < self.size and 0 <= j < self.size):
            return False
        return bool((self.rows[i] >> np.uint64(j)) & np.uint64(1))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteRelation):
            return NotImplemented
        return self.size == other.size and bool(np.array_equal(self.rows, other.rows))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.size, self.rows.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        return f"FiniteRelation({self.size}, {sorted(self.pairs)})"

    def union(self, other: "FiniteRelation") -> "FiniteRelation":
        if self.size != other.size:
            raise SizeMismatchError("cannot union relations on different universes")
        return FiniteRelation.from_rows(self.size, self.rows | other.rows)


def transitive_closure(r: FiniteRelation) -> FiniteRelation:
    """Least transitive relation containing r."""
    return FiniteRelation.from_rows(r.size, kernels.closure_rows(r.rows))


def reflexive_closure(r: FiniteRelation) -> FiniteRelation:
    """r plus the full diagonal."""
    return FiniteRelation.from_rows(r.size, r.rows | _diagonal_rows(r.size))


def _transpose_rows(rows: np.ndarray, size: int) -> np.ndarray:
    if size == 0:
        return rows.copy()
    cols = np.arange(size, dtype=np.uint64)
    bits = (rows[:, None] >> cols[None, :]) & np.uint64(1)   # bits[i, j] = (i, j)
    return (bits.T << cols[None, :]).sum(axis=1, dtype=np.uint64)


def symmetric_closure(r: FiniteRelation) -> FiniteRelation:
    """Least symmetric superset of r."""
    return FiniteRelation.from_rows(r.size, r.rows | _transpose_rows(r.rows, r.size))


def strictify(r: FiniteRelation) -> FiniteRelation:
    """r minus all diagonal pairs."""
    return FiniteRelation.from_rows(r.size, r.rows & ~_diagonal_rows(r.size))


def is_reflexive(r: FiniteRelation) -> bool:
    diag = _diagonal_rows(r.size)
    return bool(np.all((r.rows & diag) == diag))


def is_irreflexive(r: FiniteRelation) -> bool:
    return not np.any(r.rows & _diagonal_rows(r.size))


def is_symmetric(r: FiniteRelation) -> bool:
    return bool(np.array_equal(r.rows, _transpose_rows(r.rows, r.size)))


def is_transitive(r: FiniteRelation) -> bool:
    return bool(kernels.is_transitive_rows(r.rows))


def is_preorder(r: FiniteRelation) -> bool:
    return is_reflexive(r) and is_transitive(r)


def is_equivalence(r: FiniteRelation) -> bool:
    return is_preorder(r) and is_symmetric(r)


def is_strictly_transitive(r: FiniteRelation) -> bool:
    """Irreflexive, and (i, j), (j, k) with i != k forces (i, k).

    The i != k escape is what lets strictified preorders keep their 2-cycles.
    """
    if not is_irreflexive(r):
        return False
    for i in range(r.size):
        row = int(r.rows[i])
        bit_i = 1 << i
        seen = row
        while seen:
            j = (seen & -seen).bit_length() - 1
            seen &= seen - 1
            required = int(r.rows[j]) & ~bit_i
            if required & ~row:
                return False
    return True


def enumerate_preorders(size: int) -> Iterator[FiniteRelation]:
    """Yield every preorder on {0, ..., size-1} exactly once.

    Deterministic order: ascending over the strict-part bitmask, whose bit b
    stands for the b-th non-diagonal pair in row-major order.
    """
    if size > ENUMERATION_LIMIT:
        raise BoundExceededError(
            f"preorder enumeration is capped at universe size {ENUMERATION_LIMIT}, got {size}")
    nondiag = [(i, j) for i in range(size) for j in range(size) if i != j]
    diag = _diagonal_rows(size)
    for mask in range(1 << len(nondiag)):
        rows = diag.copy()
        rest = mask
        while rest:
            b = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            i, j = nondiag[b]
            rows[i] |= np.uint64(1) << np.uint64(j)
        if kernels.is_transitive_rows(rows):
            yield FiniteRelation.from_rows(size, rows)


def random_relation(size: int, rng: random.Random, density: float = 0.3) -> FiniteRelation:
    """Seeded random relation; pass the same Random for reproducible sweeps."""
    pairs = [(i, j) for i in range(size) for j in range(size) if rng.random() < density]
    return FiniteRelation(size, pairs)


class RelArrow:
    """A binary relation between two finite ordinals, as an arrow dom -> cod."""

    __slots__ = ("dom", "cod", "matrix", "_hash")

    def __init__(self, dom: int, cod: int, pairs: Iterable[tuple[int, int]] = ()):
        matrix = np.zeros((dom, cod), dtype=np.bool_)
        for i, j in pairs:
            if not (0 <= i < dom and 0 <= j < cod):
                raise ValueError(f"pair ({i}, {j}) out of range for arrow {dom} -> {cod}")
            matrix[i, j] = True
        matrix.setflags(write=False)
        self.dom = dom
        self.cod = cod
        self.matrix = matrix
        self._hash = None

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "RelArrow":
        arrow = cls.__new__(cls)
        matrix = np.ascontiguousarray(matrix, dtype=np.bool_).copy()
        matrix.setflags(write=False)
        arrow.dom, arrow.cod = matrix.shape
        arrow.matrix = matrix
        arrow._hash = None
        return arrow

    @classmethod
    def identity(cls, n: int) -> "RelArrow":
        return cls.from_matrix(np.eye(n, dtype=np.bool_))

    @property
    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset(zip(*np.nonzero(self.matrix)))

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(self.matrix))]

    def __contains__(self, pair: tuple[int, int]) -> bool:
        i, j = pair
        return 0 <= i < self.dom and 0 <= j < self.cod and bool(self.matrix[i, j])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RelArrow):
            return NotImplemented
        return (self.dom, self.cod) == (other.dom, other.cod) and \
            bool(np.array_equal(self.matrix, other.matrix))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dom, self.cod, self.matrix.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        return f"RelArrow({self.dom}, {self.cod}, {sorted(self.pairs)})"


def compose_plain(r1: RelArrow, r2: RelArrow) -> RelArrow:
    """Relational composition of r1: a -> b with r2: b -> c, as an arrow a -> c.

    (x, y) is present iff some z has (x, z) in r1 and (z, y) in r2.
    """
    if r1.cod != r2.dom:
        raise SizeMismatchError(
            f"inner sizes differ: {r1.dom}->{r1.cod} then {r2.dom}->{r2.cod}")
    product = r1.matrix.astype(np.uint8) @ r2.matrix.astype(np.uint8)
    return RelArrow.from_matrix(product > 0)
