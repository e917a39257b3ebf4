import itertools
import random

import pytest

from splitpre.arrows import (
    NodeTag,
    SplitPreorder,
    SplitRelation,
    TaggedNode,
    compose,
    converse,
    enumerate_split_preorders,
    equals,
    from_relation,
    identity,
    is_split_preorder,
    random_split_preorder,
    to_relation,
    to_split_equivalence,
    unsource,
    untarget,
)
from splitpre.errors import BoundExceededError, SizeMismatchError
from splitpre.relations import FiniteRelation, RelArrow, compose_plain, is_equivalence

from oracles import naive_compose_split


def sp(m, n, *pairs):
    return SplitPreorder.close(m, n, [pair.split() for pair in pairs])


def strict(r):
    return {(str(u), str(v)) for u, v in r.strict_pairs}


class TestIdentity:
    def test_zero(self):
        arrow = identity(0)
        assert (arrow.src, arrow.tgt) == (0, 0)
        assert arrow.pairs == frozenset()

    def test_one_has_all_four_pairs(self):
        assert len(identity(1).pairs) == 4
        assert strict(identity(1)) == {("s0", "t0"), ("t0", "s0")}

    def test_two_splits_into_blocks(self):
        arrow = identity(2)
        assert len(arrow.pairs) == 8
        assert strict(arrow) == {("s0", "t0"), ("t0", "s0"), ("s1", "t1"), ("t1", "s1")}


class TestRetagging:
    def test_untarget_identity(self):
        work = untarget(identity(1), 0)
        assert work.size == 2
        assert work.pairs == frozenset({(0, 0), (1, 1), (0, 1), (1, 0)})

    def test_unsource_identity_mirrors(self):
        work = unsource(identity(1), 0)
        assert work.size == 2
        assert work.pairs == frozenset({(0, 0), (1, 1), (0, 1), (1, 0)})

    def test_untarget_with_empty_source(self):
        arrow = sp(0, 1)
        work = untarget(arrow, 2)
        assert work.size == 3
        assert work.pairs == frozenset({(0, 0)})

    def test_unsource_shifts_masks(self):
        arrow = sp(1, 1, "s0 t0")
        work = unsource(arrow, 2)
        assert work.size == 4
        assert work.pairs == frozenset({(2, 2), (3, 3), (2, 3)})


class TestCompose:
    def test_identity_law_instance(self):
        assert compose(identity(2), identity(2)) == identity(2)

    def test_glued_middle_node(self):
        r = sp(1, 2, "s0 t0")
        p = sp(2, 1, "s0 t0")
        assert strict(compose(p, r)) == {("s0", "t0")}

    def test_disconnected_middle(self):
        r = sp(1, 2, "s0 t0")
        p = sp(2, 1, "s1 t0")
        assert strict(compose(p, r)) == set()

    def test_chain_through_internal_target_edge(self):
        r = sp(1, 2, "s0 t0", "t0 t1", "s0 t1")
        p = sp(2, 1, "s1 t0")
        assert strict(compose(p, r)) == {("s0", "t0")}

    def test_mismatch(self):
        with pytest.raises(SizeMismatchError):
            compose(sp(1, 1), sp(1, 2))

    def test_exhaustive_vs_naive_small(self):
        for m, n, k in itertools.product(range(2), repeat=3):
            for r in enumerate_split_preorders(m, n):
                for p in enumerate_split_preorders(n, k):
                    assert compose(p, r) == naive_compose_split(p, r)

    def test_random_vs_naive(self):
        for seed in range(300):
            rng = random.Random(seed)
            m, n, k = (rng.randint(0, 3) for _ in range(3))
            r = random_split_preorder(m, n, rng)
            p = random_split_preorder(n, k, rng)
            assert compose(p, r) == naive_compose_split(p, r), f"seed={seed}"

    def test_result_always_satisfies_invariants(self):
        for seed in range(200):
            rng = random.Random(seed)
            m, n, k = (rng.randint(0, 3) for _ in range(3))
            composed = compose(random_split_preorder(n, k, rng),
                               random_split_preorder(m, n, rng))
            assert is_split_preorder(composed), f"seed={seed}"


class TestPlainEmbedding:
    def test_empty_relation_lifts_to_diagonal(self):
        lifted = from_relation(RelArrow(1, 1))
        assert strict(lifted) == set()

    def test_single_pair(self):
        lifted = from_relation(RelArrow(1, 1, [(0, 0)]))
        assert strict(lifted) == {("s0", "t0")}

    def test_round_trip(self):
        arrow = RelArrow(2, 3, [(0, 1), (1, 2)])
        assert to_relation(from_relation(arrow)) == arrow

    def test_preserves_identities(self):
        for n in range(3):
            assert from_relation(RelArrow.identity(n)) == identity(n)

    def test_preserves_composition_exhaustively(self):
        for m, n, k in itertools.product(range(3), repeat=3):
            for mask1 in range(1 << (m * n)):
                r1 = RelArrow(m, n, [(i, j) for i in range(m) for j in range(n)
                                     if (mask1 >> (i * n + j)) & 1])
                for mask2 in range(1 << (n * k)):
                    r2 = RelArrow(n, k, [(i, j) for i in range(n) for j in range(k)
                                         if (mask2 >> (i * k + j)) & 1])
                    assert compose(from_relation(r2), from_relation(r1)) == \
                        from_relation(compose_plain(r1, r2))


class TestEquivalenceClosure:
    def test_identity_is_fixed(self):
        for n in range(3):
            assert to_split_equivalence(identity(n)) == identity(n)

    def test_adds_reverse_edge(self):
        arrow = sp(1, 1, "s0 t0")
        assert strict(to_split_equivalence(arrow)) == {("s0", "t0"), ("t0", "s0")}

    def test_always_an_equivalence(self):
        for seed in range(100):
            rng = random.Random(seed)
            arrow = random_split_preorder(rng.randint(0, 3), rng.randint(0, 3), rng)
            closed = to_split_equivalence(arrow)
            assert is_equivalence(closed.relation()), f"seed={seed}"


class TestConverse:
    def test_identity_fixed(self):
        for n in range(3):
            assert converse(identity(n)) == identity(n)

    def test_involution(self):
        for seed in range(100):
            rng = random.Random(seed)
            arrow = random_split_preorder(rng.randint(0, 3), rng.randint(0, 3), rng)
            assert converse(converse(arrow)) == arrow, f"seed={seed}"

    def test_single_edge(self):
        assert strict(converse(from_relation(RelArrow(1, 1, [(0, 0)])))) == {("t0", "s0")}

    def test_distributes_over_compose(self):
        # Same argument order on both sides; checked on random instances.
        for seed in range(200):
            rng = random.Random(seed)
            m, n, k = (rng.randint(0, 3) for _ in range(3))
            r = random_split_preorder(m, n, rng)
            p = random_split_preorder(n, k, rng)
            assert converse(compose(p, r)) == compose(converse(p), converse(r)), \
                f"seed={seed}"


class TestCategoryLawsSmall:
    def test_identity_laws_size_one(self):
        for m, n in itertools.product(range(2), repeat=2):
            for r in enumerate_split_preorders(m, n):
                assert compose(identity(n), r) == r
                assert compose(r, identity(m)) == r

    def test_associativity_exhaustive_size_one(self):
        homs = {(a, b): list(enumerate_split_preorders(a, b))
                for a in range(2) for b in range(2)}
        for m, n, k, l in itertools.product(range(2), repeat=4):
            for r in homs[(m, n)]:
                for p in homs[(n, k)]:
                    for t in homs[(k, l)]:
                        assert compose(t, compose(p, r)) == compose(compose(t, p), r)


class TestEnumerationAndEquality:
    def test_counts(self):
        assert sum(1 for _ in enumerate_split_preorders(0, 0)) == 1
        assert sum(1 for _ in enumerate_split_preorders(1, 1)) == 4
        assert sum(1 for _ in enumerate_split_preorders(2, 2)) == 355

    def test_bound(self):
        with pytest.raises(BoundExceededError):
            list(enumerate_split_preorders(3, 2))

    def test_equals(self):
        assert equals(identity(2), identity(2))
        assert not equals(identity(1), from_relation(RelArrow(1, 1, [(0, 0)])))
        assert not equals(identity(1), identity(2))


class TestConstructionAndViews:
    def test_rejects_non_closed_pairs(self):
        with pytest.raises(ValueError):
            SplitPreorder(1, 1, [("s0", "t0")])  # missing the diagonal

    def test_close_accepts_generators(self):
        arrow = SplitPreorder.close(1, 2, [("s0", "t0"), ("t0", "t1")])
        assert arrow.has("s0", "t1")

    def test_out_of_range_node(self):
        with pytest.raises(ValueError):
            SplitPreorder.close(1, 1, [("s1", "t0")])

    def test_split_relation_closes(self):
        raw = SplitRelation(1, 1, frozenset({(TaggedNode(NodeTag.SOURCE, 0),
                                              TaggedNode(NodeTag.TARGET, 0))}))
        assert raw.close() == sp(1, 1, "s0 t0")

    def test_node_views(self):
        arrow = sp(2, 1, "s0 t0")
        assert arrow.node(0) == TaggedNode(NodeTag.SOURCE, 0)
        assert arrow.node(2) == TaggedNode(NodeTag.TARGET, 0)
        assert arrow.relation().size == 3
