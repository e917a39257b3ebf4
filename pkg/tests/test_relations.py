import random

import pytest
from hypothesis import given, strategies as st

from splitpre.errors import BoundExceededError, SizeMismatchError
from splitpre.relations import (
    FiniteRelation,
    RelArrow,
    compose_plain,
    enumerate_preorders,
    is_equivalence,
    is_preorder,
    is_reflexive,
    is_strictly_transitive,
    is_symmetric,
    is_transitive,
    random_relation,
    reflexive_closure,
    strictify,
    symmetric_closure,
    transitive_closure,
)

from oracles import naive_transitive_closure


def rel(size, *pairs):
    return FiniteRelation(size, pairs)


@st.composite
def relations(draw, max_size=8):
    size = draw(st.integers(min_value=0, max_value=max_size))
    pairs = draw(st.lists(
        st.tuples(st.integers(0, max(size - 1, 0)), st.integers(0, max(size - 1, 0))),
        max_size=size * size)) if size else []
    return FiniteRelation(size, pairs)


def all_relations(size):
    cells = [(i, j) for i in range(size) for j in range(size)]
    for mask in range(1 << len(cells)):
        yield FiniteRelation(size, [cells[b] for b in range(len(cells)) if (mask >> b) & 1])


class TestTransitiveClosure:
    def test_empty_is_fixed(self):
        assert transitive_closure(rel(2)) == rel(2)

    def test_chain_adds_shortcut(self):
        assert transitive_closure(rel(3, (0, 1), (1, 2))) == rel(3, (0, 1), (1, 2), (0, 2))

    def test_cycle_fills_square(self):
        # Fixed-point oracle on the 4-cycle yields every one of the 16 pairs.
        full = FiniteRelation(4, [(i, j) for i in range(4) for j in range(4)])
        assert transitive_closure(rel(4, (0, 1), (1, 2), (2, 3), (3, 0))) == full

    def test_exhaustive_vs_naive_up_to_size_4(self):
        for size in range(5):
            for r in all_relations(size):
                expected = naive_transitive_closure(set(r.pairs))
                assert transitive_closure(r).pairs == frozenset(expected), r

    def test_random_vs_naive_size_12(self):
        for seed in range(1000):
            rng = random.Random(seed)
            r = random_relation(rng.randint(0, 12), rng, density=0.25)
            expected = naive_transitive_closure(set(r.pairs))
            assert transitive_closure(r).pairs == frozenset(expected), f"seed={seed}"


class TestOtherClosures:
    def test_reflexive_closure(self):
        assert reflexive_closure(rel(2)) == rel(2, (0, 0), (1, 1))
        assert reflexive_closure(rel(2, (0, 1))) == rel(2, (0, 0), (1, 1), (0, 1))
        assert reflexive_closure(rel(0)) == rel(0)

    def test_symmetric_closure(self):
        assert symmetric_closure(rel(2, (0, 1))) == rel(2, (0, 1), (1, 0))
        assert symmetric_closure(rel(2, (0, 0))) == rel(2, (0, 0))
        assert symmetric_closure(rel(3, (0, 1), (1, 2))) == \
            rel(3, (0, 1), (1, 0), (1, 2), (2, 1))

    def test_strictify(self):
        assert strictify(rel(2, (0, 0), (1, 1), (0, 1))) == rel(2, (0, 1))
        assert strictify(rel(1, (0, 0))) == rel(1)

    def test_strictification_keeps_two_cycles(self):
        preorder = reflexive_closure(transitive_closure(rel(2, (0, 1), (1, 0))))
        assert strictify(preorder) == rel(2, (0, 1), (1, 0))

    @given(relations())
    def test_closures_idempotent(self, r):
        for op in (transitive_closure, reflexive_closure, symmetric_closure, strictify):
            assert op(op(r)) == op(r)

    def test_preorders_split_into_strict_part_and_diagonal(self):
        # Round trip one way for preorders, the other way for irreflexive
        # strictly transitive relations.
        for size in range(4):
            for r in all_relations(size):
                if is_preorder(r):
                    assert reflexive_closure(strictify(r)) == r
                if is_strictly_transitive(r):
                    assert is_preorder(reflexive_closure(r))
                    assert strictify(reflexive_closure(r)) == r


class TestPredicates:
    def test_diagonal_is_preorder(self):
        assert is_preorder(FiniteRelation.diagonal(3))

    def test_missing_diagonal_is_not(self):
        assert not is_preorder(rel(2, (0, 1)))

    def test_two_cycle_strictly_transitive(self):
        # The x != z guard exempts the would-be loops (0,0) and (1,1).
        assert is_strictly_transitive(rel(2, (0, 1), (1, 0)))

    def test_strict_transitivity_rejects_open_chain(self):
        assert not is_strictly_transitive(rel(3, (0, 1), (1, 2)))
        assert not is_strictly_transitive(rel(1, (0, 0)))

    def test_equivalence(self):
        assert is_equivalence(FiniteRelation.diagonal(2))
        assert not is_equivalence(reflexive_closure(rel(2, (0, 1))))
        assert is_equivalence(reflexive_closure(rel(2, (0, 1), (1, 0))))

    @given(relations())
    def test_predicates_match_definitions(self, r):
        pairs = r.pairs
        assert is_reflexive(r) == all((i, i) in pairs for i in range(r.size))
        assert is_symmetric(r) == all((j, i) in pairs for i, j in pairs)
        assert is_transitive(r) == all(
            (i, l) in pairs for i, j in pairs for k, l in pairs if j == k)


class TestEnumeration:
    def test_counts(self):
        assert [sum(1 for _ in enumerate_preorders(n)) for n in range(5)] == \
            [1, 1, 4, 29, 355]

    def test_all_yielded_are_preorders_and_distinct(self):
        for size in range(5):
            seen = list(enumerate_preorders(size))
            assert all(is_preorder(r) for r in seen)
            assert len(set(seen)) == len(seen)

    def test_order_is_deterministic(self):
        assert list(enumerate_preorders(3)) == list(enumerate_preorders(3))

    def test_bound(self):
        with pytest.raises(BoundExceededError):
            list(enumerate_preorders(5))


class TestPlainArrows:
    def test_identity_composition(self):
        ident = RelArrow.identity(2)
        assert compose_plain(ident, ident) == ident

    def test_empty_absorbs(self):
        assert compose_plain(RelArrow(1, 1, [(0, 0)]), RelArrow(1, 1)) == RelArrow(1, 1)

    def test_rectangular(self):
        first = RelArrow(1, 2, [(0, 1)])
        second = RelArrow(2, 1, [(1, 0)])
        assert compose_plain(first, second) == RelArrow(1, 1, [(0, 0)])

    def test_mismatch(self):
        with pytest.raises(SizeMismatchError):
            compose_plain(RelArrow(1, 2), RelArrow(1, 2))

    def test_out_of_range_pair(self):
        with pytest.raises(ValueError):
            RelArrow(1, 1, [(0, 1)])


class TestConstruction:
    def test_pairs_round_trip(self):
        r = rel(3, (0, 1), (2, 0))
        assert r.pairs == frozenset({(0, 1), (2, 0)})
        assert (0, 1) in r and (1, 0) not in r

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            FiniteRelation(2, [(0, 2)])

    def test_universe_cap(self):
        with pytest.raises(BoundExceededError):
            FiniteRelation(64)

    def test_hash_and_eq(self):
        assert rel(2, (0, 1)) == rel(2, (0, 1))
        assert hash(rel(2, (0, 1))) == hash(rel(2, (0, 1)))
        assert rel(2, (0, 1)) != rel(3, (0, 1))
