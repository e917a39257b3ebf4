"""Naive, set-based oracles kept independent of the library's bitset paths."""

from __future__ import annotations

import itertools

from splitpre.arrows import NodeTag, SplitPreorder, TaggedNode


def naive_transitive_closure(pairs: set[tuple[int, int]]) -> set[tuple[int, int]]:
    """Fixed point: keep adding (x, z) while some (x, y), (y, z) are present."""
    closed = set(pairs)
    changed = True
    while changed:
        changed = False
        for (x, y) in list(closed):
            for (y2, z) in list(closed):
                if y2 == y and (x, z) not in closed:
                    closed.add((x, z))
                    changed = True
    return closed


def naive_compose_split(p: SplitPreorder, r: SplitPreorder) -> SplitPreorder:
    """Compose p after r by explicit three-zone gluing over plain pair sets."""
    assert r.tgt == p.src
    m, n, k = r.src, r.tgt, p.tgt

    def flat_r(node: TaggedNode) -> int:
        return node.index if node.tag is NodeTag.SOURCE else m + node.index

    def flat_p(node: TaggedNode) -> int:
        return m + node.index if node.tag is NodeTag.SOURCE else m + n + node.index

    working = {(flat_r(u), flat_r(v)) for u, v in r.pairs}
    working |= {(flat_p(u), flat_p(v)) for u, v in p.pairs}
    closed = naive_transitive_closure(working)
    kept = []
    outer = {i: TaggedNode(NodeTag.SOURCE, i) for i in range(m)}
    outer.update({m + n + z: TaggedNode(NodeTag.TARGET, z) for z in range(k)})
    for (x, y) in closed:
        if x in outer and y in outer:
            kept.append((outer[x], outer[y]))
    return SplitPreorder(m, k, kept)


def brute_monotone_tables(pairs: set[tuple[int, int]], size: int,
                          p: int) -> set[tuple[int, ...]]:
    """All monotone value tuples, by filtering the full function space."""
    out = set()
    for values in itertools.product(range(p), repeat=size):
        if all(values[i] <= values[j] for i, j in pairs):
            out.add(values)
    return out
