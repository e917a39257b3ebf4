"""Split preorders as arrows between finite ordinals.

An arrow m -> n is a preorder on the tagged universe of m source nodes and
n target nodes.  Internally the universe is flattened source-first: node
(SOURCE, i) is index i and (TARGET, j) is index m + j, so the relation is an
ordinary `FiniteRelation` on m + n points and the bitset kernels apply
unchanged.

Composition glues the target zone of one arrow to the source zone of the
next: both relations are re-tagged into a three-zone working universe
[sources | shared middle | targets], the union is closed transitively, and
the result is the restriction to the outer zones.  The stored relation is
always the full reflexive-transitive closure, so equality is plain set
comparison.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

import numpy as np

from . import kernels
from .errors import BoundExceededError, SizeMismatchError
from .relations import (
    ENUMERATION_LIMIT,
    FiniteRelation,
    RelArrow,
    _transpose_rows,
    enumerate_preorders,
    is_preorder,
    is_reflexive,
    symmetric_closure,
    transitive_closure,
)


class NodeTag(enum.IntEnum):
    SOURCE = 0
    TARGET = 1

    def __str__(self) -> str:
        return "s" if self is NodeTag.SOURCE else "t"


@dataclass(frozen=True, order=True)
class TaggedNode:
    """A node of the two-part universe: a tag plus an index into its zone."""

    tag: NodeTag
    index: int

    def __str__(self) -> str:
        return f"{self.tag}{self.index}"

    @classmethod
    def parse(cls, token: str) -> "TaggedNode":
        if len(token) >= 2 and token[0] in "st" and token[1:].isdigit():
            tag = NodeTag.SOURCE if token[0] == "s" else NodeTag.TARGET
            return cls(tag, int(token[1:]))
        raise ValueError(f"not a node token: {token!r} (expected like 's0' or 't3')")


NodeLike = Union[TaggedNode, str, tuple]


def _as_node(value: NodeLike) -> TaggedNode:
    if isinstance(value, TaggedNode):
        return value
    if isinstance(value, str):
        return TaggedNode.parse(value)
    tag, index = value
    if isinstance(tag, str):
        tag = NodeTag.SOURCE if tag == "s" else NodeTag.TARGET
    return TaggedNode(NodeTag(tag), int(index))


PairLike = tuple[NodeLike, NodeLike]


class SplitPreorder:
    """A preorder on m tagged source nodes and n tagged target nodes.

    The stored relation is always reflexive and transitive; construction
    rejects anything else.  Use `close` to build one from generator pairs.
    """

    __slots__ = ("src", "tgt", "rows", "_hash")

    def __init__(self, src: int, tgt: int, pairs: Iterable[PairLike] = ()):
        rows = np.zeros(src + tgt, dtype=np.uint64)
        for u, v in pairs:
            i = self._flat(_as_node(u), src, tgt)
            j = self._flat(_as_node(v), src, tgt)
            rows[i] |= np.uint64(1) << np.uint64(j)
        built = SplitPreorder._from_rows(src, tgt, rows)
        self.src = built.src
        self.tgt = built.tgt
        self.rows = built.rows
        self._hash = None

    @staticmethod
    def _flat(node: TaggedNode, src: int, tgt: int) -> int:
        bound = src if node.tag is NodeTag.SOURCE else tgt
        if not 0 <= node.index < bound:
            raise ValueError(f"node {node} out of range for arrow {src} -> {tgt}")
        return node.index if node.tag is NodeTag.SOURCE else src + node.index

    @classmethod
    def _from_rows(cls, src: int, tgt: int, rows: np.ndarray) -> "SplitPreorder":
        if src < 0 or tgt < 0:
            raise ValueError("ordinals must be nonnegative")
        rel = FiniteRelation.from_rows(src + tgt, rows)
        if not is_reflexive(rel):
            raise ValueError("split preorder must be reflexive on its whole universe")
        if not kernels.is_transitive_rows(rel.rows):
            raise ValueError("split preorder must be transitive")
        arrow = cls.__new__(cls)
        arrow.src = src
        arrow.tgt = tgt
        arrow.rows = rel.rows
        arrow._hash = None
        return arrow

    @classmethod
    def close(cls, src: int, tgt: int, pairs: Iterable[PairLike] = ()) -> "SplitPreorder":
        """Reflexive-transitive closure of the given generator pairs."""
        rows = np.zeros(src + tgt, dtype=np.uint64)
        for u, v in pairs:
            i = cls._flat(_as_node(u), src, tgt)
            j = cls._flat(_as_node(v), src, tgt)
            rows[i] |= np.uint64(1) << np.uint64(j)
        rows |= np.uint64(1) << np.arange(src + tgt, dtype=np.uint64)
        return cls._from_rows(src, tgt, kernels.closure_rows(rows))

    def node(self, flat: int) -> TaggedNode:
        if flat < self.src:
            return TaggedNode(NodeTag.SOURCE, flat)
        return TaggedNode(NodeTag.TARGET, flat - self.src)

    def relation(self) -> FiniteRelation:
        """The underlying relation on the flattened m + n universe."""
        return FiniteRelation.from_rows(self.src + self.tgt, self.rows)

    @property
    def pairs(self) -> frozenset[tuple[TaggedNode, TaggedNode]]:
        rel = FiniteRelation.from_rows(self.src + self.tgt, self.rows)
        return frozenset((self.node(i), self.node(j)) for i, j in rel.pairs)

    @property
    def strict_pairs(self) -> frozenset[tuple[TaggedNode, TaggedNode]]:
        return frozenset((u, v) for u, v in self.pairs if u != v)

    def has(self, u: NodeLike, v: NodeLike) -> bool:
        i = self._flat(_as_node(u), self.src, self.tgt)
        j = self._flat(_as_node(v), self.src, self.tgt)
        return bool((self.rows[i] >> np.uint64(j)) & np.uint64(1))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SplitPreorder):
            return NotImplemented
        return (self.src, self.tgt) == (other.src, other.tgt) and \
            bool(np.array_equal(self.rows, other.rows))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.src, self.tgt, self.rows.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        strict = sorted(self.strict_pairs)
        shown = ", ".join(f"{u} {v}" for u, v in strict)
        return f"SplitPreorder({self.src} -> {self.tgt}, strict=[{shown}])"


@dataclass(frozen=True)
class SplitRelation:
    """An arbitrary relation on a tagged universe; the pre-closure stage."""

    src: int
    tgt: int
    pairs: frozenset

    def close(self) -> SplitPreorder:
        return SplitPreorder.close(self.src, self.tgt, self.pairs)


def equals(a: SplitPreorder, b: SplitPreorder) -> bool:
    """Arrow equality: same endpoints and identical pair sets."""
    return a == b


def identity(n: int) -> SplitPreorder:
    """The identity arrow n -> n: nodes related iff their indices agree."""
    rows = np.zeros(2 * n, dtype=np.uint64)
    for i in range(n):
        mask = (np.uint64(1) << np.uint64(i)) | (np.uint64(1) << np.uint64(n + i))
        rows[i] = mask
        rows[n + i] = mask
    return SplitPreorder._from_rows(n, n, rows)


def untarget(r: SplitPreorder, target_zone: int) -> FiniteRelation:
    """Re-tag r's target nodes into the middle of a three-zone universe.

    The working universe has r.src source nodes, r.tgt middle nodes, then
    `target_zone` final nodes; r's flattened layout already matches the first
    two zones, so its rows are padded with empty final-zone rows.
    """
    rows = np.zeros(r.src + r.tgt + target_zone, dtype=np.uint64)
    rows[:r.src + r.tgt] = r.rows
    return FiniteRelation.from_rows(rows.shape[0], rows)


def unsource(p: SplitPreorder, source_zone: int) -> FiniteRelation:
    """Re-tag p's source nodes into the middle of a three-zone universe.

    Mirror of `untarget`: p occupies the middle and final zones, so both its
    node indices and its row masks shift up by `source_zone`.
    """
    rows = np.zeros(source_zone + p.src + p.tgt, dtype=np.uint64)
    rows[source_zone:] = p.rows << np.uint64(source_zone)
    return FiniteRelation.from_rows(rows.shape[0], rows)


def compose(p: SplitPreorder, r: SplitPreorder) -> SplitPreorder:
    """The composite p after r: close untarget(r) | unsource(p), keep the outer zones.

    r: m -> n and p: n -> k give an arrow m -> k.  The restriction of the
    closed working relation stays reflexive and transitive, so the result
    needs no further closing.
    """
    if r.tgt != p.src:
        raise SizeMismatchError(
            f"cannot compose {p.src} -> {p.tgt} after {r.src} -> {r.tgt}: "
            f"middle ordinals {r.tgt} and {p.src} differ")
    rows = kernels.compose_rows(r.rows, r.src, r.tgt, p.rows, p.tgt)
    return SplitPreorder._from_rows(r.src, p.tgt, rows)


def from_relation(rel: RelArrow) -> SplitPreorder:
    """View a plain relation m -> n as a split preorder.

    Its pairs become source-to-target edges over the diagonal; the result is
    the strictification's closure and composes exactly like the plain
    relation does.
    """
    cross = [((NodeTag.SOURCE, i), (NodeTag.TARGET, j)) for i, j in rel.sorted_pairs()]
    return SplitPreorder.close(rel.dom, rel.cod, cross)


def to_relation(r: SplitPreorder) -> RelArrow:
    """Inverse of `from_relation` on its image: the source-to-target strict edges."""
    pairs = [(u.index, v.index) for u, v in r.strict_pairs
             if u.tag is NodeTag.SOURCE and v.tag is NodeTag.TARGET]
    return RelArrow(r.src, r.tgt, pairs)


def to_split_equivalence(r: SplitPreorder) -> SplitPreorder:
    """Transitive closure of the symmetric closure; an equivalence relation."""
    sym = symmetric_closure(r.relation())
    closed = transitive_closure(sym)
    return SplitPreorder._from_rows(r.src, r.tgt, closed.rows)


def converse(r: SplitPreorder) -> SplitPreorder:
    """Reverse every pair; the endpoints do not move."""
    return SplitPreorder._from_rows(r.src, r.tgt, _transpose_rows(r.rows, r.src + r.tgt))


def enumerate_split_preorders(m: int, n: int) -> Iterator[SplitPreorder]:
    """All arrows m -> n, i.e. all preorders on the m + n tagged nodes."""
    if m + n > ENUMERATION_LIMIT:
        raise BoundExceededError(
            f"arrow enumeration is capped at m + n <= {ENUMERATION_LIMIT}, got {m + n}")
    for rel in enumerate_preorders(m + n):
        yield SplitPreorder._from_rows(m, n, rel.rows)


def random_split_preorder(m: int, n: int, rng: random.Random,
                          density: float = 0.25) -> SplitPreorder:
    """Closure of a seeded random pair set; reproducible given the Random."""
    total = m + n
    pairs = []
    for i in range(total):
        for j in range(total):
            if rng.random() < density:
                pairs.append((i, j))
    rows = np.zeros(total, dtype=np.uint64)
    for i, j in pairs:
        rows[i] |= np.uint64(1) << np.uint64(j)
    rows |= np.uint64(1) << np.arange(total, dtype=np.uint64)
    return SplitPreorder._from_rows(m, n, kernels.closure_rows(rows))


def is_split_preorder(value: object) -> bool:
    """True iff value is a SplitPreorder whose stored relation satisfies the invariants."""
    if not isinstance(value, SplitPreorder):
        return False
    rel = value.relation()
    return is_preorder(rel)
