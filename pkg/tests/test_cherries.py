import random

import pytest

from conftest import orchard_corpus
from orchardnets import fixtures
from orchardnets.cherries import (CherryMove, MoveKind, available_moves,
                                  apply_move, cut_reticulated_cherry,
                                  find_cherries, find_reticulated_cherries,
                                  grow_cherry, grow_reticulated_cherry,
                                  grow_reticulation_arc,
                                  is_detectable_reticulated_cherry, is_orchard,
                                  maximal_reduction, random_maximal_reduction,
                                  reduce_cherry, tree_grandparents)
from orchardnets.errors import (FreshLabelClashError, NotACherryError,
                                NotAReticulatedCherryError,
                                NotAReticulationParentError)
from orchardnets.generators import GenParams, random_non_orchard
from orchardnets.isomorphism import is_isomorphic
from orchardnets.network import build_network, is_stack_free, single_vertex_network


class TestDetection:
    def test_clone_triple_moves(self, clone_triple):
        assert find_cherries(clone_triple) == [("x3", "x4")]
        assert ("x6", "x5") in find_reticulated_cherries(clone_triple)

    def test_two_leaf_tree(self, t2):
        assert find_cherries(t2) == [("a", "b")]
        assert find_reticulated_cherries(t2) == []

    def test_single_ret_fixture(self, n3):
        assert find_cherries(n3) == []
        assert find_reticulated_cherries(n3) == [("a", "b"), ("c", "b")]

    def test_single_leaf_has_no_moves(self):
        net = single_vertex_network("a")
        assert find_cherries(net) == []
        assert find_reticulated_cherries(net) == []


class TestReduce:
    def test_root_cherry_leaves_single_vertex(self, t2):
        reduced = reduce_cherry(t2, "a", "b")
        assert reduced.is_single_vertex()
        assert reduced.labels == {"a"}

    def test_suppression(self):
        net = build_network(["r", "p", "a", "b", "c"],
                            [("r", "p"), ("r", "c"), ("p", "a"), ("p", "b")],
                            {"a": "a", "b": "b", "c": "c"})
        reduced = reduce_cherry(net, "a", "b")
        expected = build_network(["r", "a", "c"], [("r", "a"), ("r", "c")],
                                 {"a": "a", "c": "c"})
        assert is_isomorphic(reduced, expected)

    def test_clone_triple_reduction(self, clone_triple):
        reduced = reduce_cherry(clone_triple, "x3", "x4")
        assert reduced.labels == {"x1", "x2", "x3", "x5", "x6"}

    def test_not_a_cherry(self, n3):
        with pytest.raises(NotACherryError):
            reduce_cherry(n3, "a", "b")


class TestCut:
    def test_suppressing_cut(self, n3):
        result, suppressed = cut_reticulated_cherry(n3, "a", "b")
        assert suppressed
        expected = build_network(["rho", "t2", "a", "b", "c"],
                                 [("rho", "a"), ("rho", "t2"), ("t2", "b"), ("t2", "c")],
                                 {"a": "a", "b": "b", "c": "c"})
        assert is_isomorphic(result, expected)

    def test_retaining_cut(self, n4):
        result, suppressed = cut_reticulated_cherry(n4, "a", "b")
        assert not suppressed
        assert result.in_degree("h") == 2

    def test_binary_networks_always_suppress(self):
        for net in orchard_corpus(10, stacks=False, seed=31, max_rets=3):
            if not net.is_binary():
                continue
            for a, b in find_reticulated_cherries(net):
                _, suppressed = cut_reticulated_cherry(net, a, b)
                assert suppressed

    def test_not_a_reticulated_cherry(self, t2):
        with pytest.raises(NotAReticulatedCherryError):
            cut_reticulated_cherry(t2, "a", "b")


class TestGrow:
    def test_grow_cherry_from_single_vertex(self, t2):
        grown = grow_cherry(single_vertex_network("a"), "a", "b")
        assert is_isomorphic(grown, t2)

    def test_grow_cherry_label_clash(self, t2):
        with pytest.raises(FreshLabelClashError):
            grow_cherry(t2, "a", "b")

    def test_grow_reticulated_cherry_rebuilds_cut(self, n3):
        cut, _ = cut_reticulated_cherry(n3, "a", "b")
        regrown = grow_reticulated_cherry(cut, "a", "b")
        assert is_isomorphic(regrown, n3)

    def test_grow_reticulation_arc_raises_in_degree(self, n3):
        grown = grow_cherry(n3, "c", "d")
        widened = grow_reticulation_arc(grown, "d", "b")
        hub = widened.parents(widened.leaf_of("b"))[0]
        assert widened.in_degree(hub) == 3
        back, suppressed = cut_reticulated_cherry(widened, "d", "b")
        assert not suppressed
        assert is_isomorphic(back, grown)

    def test_grow_reticulation_arc_needs_reticulation_parent(self, t2):
        with pytest.raises(NotAReticulationParentError):
            grow_reticulation_arc(t2, "a", "b")

    def test_round_trips_on_corpus(self, stack_free_corpus):
        rng = random.Random(17)
        for net in stack_free_corpus[:12]:
            leaves = sorted(net.labels)
            a = rng.choice(leaves)
            grown = grow_cherry(net, a, "fresh")
            assert is_isomorphic(reduce_cherry(grown, a, "fresh"), net)
            if len(leaves) >= 2:
                b = rng.choice([x for x in leaves if x != a])
                grown = grow_reticulated_cherry(net, a, b)
                cut, suppressed = cut_reticulated_cherry(grown, a, b)
                assert suppressed and is_isomorphic(cut, net)


class TestOrchardDecision:
    def test_fixture_networks_are_orchard(self, clone_triple, twin_a, twin_b):
        for net in (clone_triple, twin_a, twin_b):
            complete, seq = is_orchard(net)
            assert complete
            assert seq.apply_to(net).is_single_vertex()

    def test_ladders_are_orchard_and_stack_free(self):
        for height in range(1, 8):
            net = fixtures.ladder(height)
            assert is_orchard(net)[0]
            assert is_stack_free(net)

    def test_crossover_block_is_stuck(self):
        net = random_non_orchard(GenParams(leaf_count=2, reticulation_count=2,
                                           allow_stacks=True, force_stack_free=False,
                                           seed=0))
        complete, seq = is_orchard(net)
        assert not complete
        assert len(seq) == 0

    def test_single_vertex_is_complete(self):
        complete, seq = is_orchard(single_vertex_network("a"))
        assert complete and len(seq) == 0

    def test_confluence_on_corpus(self, stacked_corpus):
        for i, net in enumerate(stacked_corpus[:12]):
            for attempt in range(2):
                rng = random.Random(1000 * i + attempt)
                final, _ = random_maximal_reduction(net, rng)
                assert final.is_single_vertex()

    def test_non_orchard_never_completes(self):
        for seed in range(5):
            net = random_non_orchard(GenParams(leaf_count=3, reticulation_count=2,
                                               allow_stacks=True,
                                               force_stack_free=False, seed=seed))
            for attempt in range(10):
                final, _ = random_maximal_reduction(net, random.Random(attempt))
                assert not final.is_single_vertex()

    def test_recorded_moves_replay(self, stack_free_corpus):
        for net in stack_free_corpus[:10]:
            final, seq = maximal_reduction(net)
            assert final.is_single_vertex()
            assert seq.apply_to(net).is_single_vertex()


class TestClosureProperties:
    def test_moves_preserve_validity(self, stacked_corpus):
        for net in stacked_corpus[:15]:
            for kind, a, b in available_moves(net):
                result, move = apply_move(net, kind, a, b)
                assert result.vertices  # construction validated

    def test_stack_free_closure(self, stack_free_corpus):
        for net in stack_free_corpus[:15]:
            for kind, a, b in available_moves(net):
                result, _ = apply_move(net, kind, a, b)
                assert is_stack_free(result)
                assert is_orchard(result)[0]

    def test_grandparents_are_tree_vertices_when_stack_free(self, stack_free_corpus):
        for net in stack_free_corpus:
            for a, b in find_reticulated_cherries(net):
                assert tree_grandparents(net, b)
                assert is_detectable_reticulated_cherry(net, a, b)

    def test_stacked_reticulated_cherry_is_not_detectable(self, twin_a):
        assert ("x3", "x4") in find_reticulated_cherries(twin_a)
        assert not is_detectable_reticulated_cherry(twin_a, "x3", "x4")


class TestMoveRecord:
    def test_move_invariants(self):
        with pytest.raises(ValueError):
            CherryMove(MoveKind.REDUCE, "a", "a")
        with pytest.raises(ValueError):
            CherryMove(MoveKind.CUT_SUPPRESSED, "a", "b")
        with pytest.raises(ValueError):
            CherryMove(MoveKind.REDUCE, "a", "b", parent_a="p", parent_b="q")

    def test_recorded_parents(self, n3):
        _, move = apply_move(n3, MoveKind.CUT_SUPPRESSED, "a", "b")
        assert move.parent_a == "t1"
        assert move.parent_b == "h"
