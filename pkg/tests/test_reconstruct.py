import pytest

from orchardnets import fixtures
from orchardnets.errors import (NotOrchardError, SearchExhaustedError,
                                UnknownLabelError)
from orchardnets.generators import GenParams, random_non_orchard
from orchardnets.isomorphism import is_isomorphic
from orchardnets.network import single_vertex_network
from orchardnets.profiles import ProfileTable, ancestral_profile, profiles_equal
from orchardnets.reconstruct import (check_id_agreement, reconstruct,
                                     reconstruct_all, replay_moves)


class TestRoundTrips:
    def test_two_leaf_tree(self, t2):
        result = reconstruct(ancestral_profile(t2))
        assert result.verified
        assert is_isomorphic(result.network, t2)

    def test_single_vertex(self):
        net = single_vertex_network("a")
        result = reconstruct(ancestral_profile(net))
        assert result.verified and result.network.is_single_vertex()

    def test_single_ret_fixture(self, n3):
        result = reconstruct(ancestral_profile(n3))
        assert result.verified
        assert is_isomorphic(result.network, n3)

    def test_high_in_degree_fixture(self, n4):
        result = reconstruct(ancestral_profile(n4))
        assert result.verified
        assert is_isomorphic(result.network, n4)

    def test_clone_triple(self, clone_triple):
        result = reconstruct(ancestral_profile(clone_triple))
        assert is_isomorphic(result.network, clone_triple)

    def test_ladders(self):
        for height in (1, 3, 5):
            net = fixtures.ladder(height)
            assert is_isomorphic(reconstruct(ancestral_profile(net)).network, net)

    def test_corpus_round_trip(self, stack_free_corpus):
        for net in stack_free_corpus:
            result = reconstruct(ancestral_profile(net))
            assert result.verified
            assert is_isomorphic(result.network, net)

    def test_sequence_replays_on_tuple_side(self, n3):
        from orchardnets.profile_moves import apply_profile_move
        table = ancestral_profile(n3)
        result = reconstruct(table)
        current = table
        for move in result.sequence:
            current = apply_profile_move(current, move)
        assert len(current.labels) == 1 and current.all_blank()
        assert is_isomorphic(replay_moves(result.sequence, current.labels[0]),
                             result.network)

    def test_labels_argument_checked(self, t2):
        table = ancestral_profile(t2)
        assert reconstruct(table, labels=["b", "a"]).verified
        with pytest.raises(UnknownLabelError):
            reconstruct(table, labels=["a", "zz"])


class TestUniqueness:
    def test_all_terminals_agree_in_regime(self, stack_free_corpus):
        for net in stack_free_corpus[:8]:
            if len(net.vertices) > 12:
                continue
            results = reconstruct_all(ancestral_profile(net))
            assert results
            for result in results:
                assert is_isomorphic(result.network, net)

    def test_stacked_profile_has_several_realisations(self, twin_a, twin_b):
        results = reconstruct_all(ancestral_profile(twin_a, fixtures.TWIN_ORDER))
        classes = []
        for result in results:
            assert result.verified
            if not any(is_isomorphic(result.network, c) for c in classes):
                classes.append(result.network)
        assert len(classes) >= 2
        assert any(is_isomorphic(c, twin_a) for c in classes)
        assert any(is_isomorphic(c, twin_b) for c in classes)


class TestFailures:
    def test_unrealisable_profile(self):
        table = ProfileTable(("a", "b"), ("u",), ((0, 0),))
        with pytest.raises(SearchExhaustedError):
            reconstruct(table)

    def test_crossover_profile_is_unrealisable(self):
        # The stuck two-reticulation block: its profile admits no cherry
        # sequence at all, so the search must report that rather than guess.
        from orchardnets.network import build_network
        block = build_network(
            ["r", "t1", "t2", "m1", "m2", "a", "b"],
            [("r", "t1"), ("r", "t2"), ("t1", "m1"), ("t1", "m2"),
             ("t2", "m1"), ("t2", "m2"), ("m1", "a"), ("m2", "b")],
            {"a": "a", "b": "b"})
        with pytest.raises(SearchExhaustedError):
            reconstruct(ancestral_profile(block))

    def test_budget_is_enforced(self, n3):
        with pytest.raises(SearchExhaustedError):
            reconstruct(ancestral_profile(n3), max_nodes=1)


class TestOutOfRegime:
    def test_stacked_profiles_reconstruct_to_the_same_identification(self):
        # A stacked profile may have several realisations; whichever one the
        # search verifies must collapse to the source's identification.
        from orchardnets.generators import random_orchard
        from orchardnets.network import is_stack_free, stack_identification
        for seed in range(12):
            net = random_orchard(GenParams(leaf_count=4, reticulation_count=3,
                                           allow_stacks=True, force_stack_free=False,
                                           seed=seed))
            if is_stack_free(net):
                continue
            result = reconstruct(ancestral_profile(net))
            assert result.verified
            assert is_isomorphic(stack_identification(result.network).to_network(),
                                 stack_identification(net).to_network())


class TestIdAgreement:
    def test_twins(self, twin_a, twin_b):
        outcome = check_id_agreement(twin_a, twin_b)
        assert outcome.holds and not outcome.vacuous

    def test_same_network(self, twin_a):
        assert check_id_agreement(twin_a, twin_a).holds

    def test_vacuous_when_profiles_differ(self, n3, clone_triple):
        outcome = check_id_agreement(n3, clone_triple)
        assert outcome.holds and outcome.vacuous

    def test_requires_orchard(self, twin_a):
        bad = random_non_orchard(GenParams(leaf_count=3, reticulation_count=2,
                                           allow_stacks=True, force_stack_free=False,
                                           seed=1))
        with pytest.raises(NotOrchardError):
            check_id_agreement(twin_a, bad)

    def test_reconstructed_networks_realise_the_profile(self, stack_free_corpus):
        for net in stack_free_corpus[:10]:
            table = ancestral_profile(net)
            result = reconstruct(table)
            assert profiles_equal(ancestral_profile(result.network), table)
