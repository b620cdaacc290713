import random

import pytest

from conftest import orchard_corpus, rename_vertices
from orchardnets import fixtures
from orchardnets.cherries import grow_reticulated_cherry, is_orchard
from orchardnets.errors import (InvalidNetworkError, NotAStackArcError,
                                ParallelArcsError, UnknownVertexError)
from orchardnets.isomorphism import is_isomorphic
from orchardnets.network import (Network, VertexClass, ViolationKind,
                                 build_network, contract_stack_arc,
                                 is_stack_free, is_time_consistent,
                                 is_tree_child, is_tree_sibling,
                                 sinks, stack_arcs,
                                 stack_identification, time_assignment,
                                 validate, vertex_class)


def violation_kinds(report):
    return {v.kind for v in report.violations}


class TestValidation:
    def test_single_vertex_is_valid(self):
        net = build_network(["a"], [], {"a": "a"})
        assert net.is_single_vertex()
        assert net.labels == {"a"}

    def test_two_leaf_tree_is_valid(self, t2):
        assert t2.root == "r"
        assert set(t2.leaves()) == {"a", "b"}

    def test_root_out_degree_three_rejected(self):
        report = validate(["r", "a", "b", "c"],
                          [("r", "a"), ("r", "b"), ("r", "c")],
                          {"a": "a", "b": "b", "c": "c"})
        assert not report.ok
        assert ViolationKind.DEGREE in violation_kinds(report)

    def test_parallel_arcs_rejected(self):
        report = validate(["r", "a", "b"], [("r", "a"), ("r", "a"), ("r", "b")],
                          {"a": "a", "b": "b"})
        assert ViolationKind.PARALLEL_ARCS in violation_kinds(report)

    def test_cycle_rejected(self):
        report = validate(["r", "u", "v", "a", "b"],
                          [("r", "a"), ("r", "u"), ("u", "v"), ("v", "u"), ("u", "b")],
                          {"a": "a", "b": "b"})
        assert ViolationKind.CYCLE in violation_kinds(report)

    def test_two_roots_rejected(self):
        report = validate(["r", "s", "a", "b", "c", "d"],
                          [("r", "a"), ("r", "b"), ("s", "c"), ("s", "d")],
                          {"a": "a", "b": "b", "c": "c", "d": "d"})
        assert ViolationKind.ROOT_COUNT in violation_kinds(report)

    def test_label_problems_rejected(self):
        report = validate(["r", "a", "b"], [("r", "a"), ("r", "b")],
                          {"a": "x", "b": "x"})
        assert ViolationKind.LABEL in violation_kinds(report)
        report = validate(["r", "a", "b"], [("r", "a"), ("r", "b")], {"a": "a"})
        assert ViolationKind.LABEL in violation_kinds(report)
        report = validate(["r", "a", "b"], [("r", "a"), ("r", "b")],
                          {"a": "a", "b": "b", "r": "r"})
        assert ViolationKind.LABEL in violation_kinds(report)

    def test_empty_rejected(self):
        report = validate([], [], {})
        assert ViolationKind.EMPTY in violation_kinds(report)

    def test_build_raises_with_report(self):
        with pytest.raises(InvalidNetworkError) as err:
            build_network(["r", "a", "b", "c"],
                          [("r", "a"), ("r", "b"), ("r", "c")],
                          {"a": "a", "b": "b", "c": "c"})
        assert not err.value.report.ok

    def test_random_arc_soup_never_builds_invalid(self):
        rng = random.Random(5)
        names = ["p", "q", "s", "t", "u"]
        for _ in range(300):
            arcs = set()
            for _ in range(rng.randint(0, 8)):
                arcs.add((rng.choice(names), rng.choice(names)))
            labels = {v: v for v in names
                      if v not in {u for u, _ in arcs} and any(v in a for a in arcs)}
            report = validate(names, arcs, labels)
            if report.ok:
                net = build_network(names, arcs, labels)
                assert net.root
            else:
                with pytest.raises(InvalidNetworkError):
                    build_network(names, arcs, labels)


class TestVertexClass:
    def test_two_leaf_tree_root(self, t2):
        assert vertex_class(t2, "r") is VertexClass.ROOT
        assert vertex_class(t2, "a") is VertexClass.LEAF

    def test_clone_triple_classes(self, clone_triple):
        assert vertex_class(clone_triple, "u") is VertexClass.RETICULATION
        assert vertex_class(clone_triple, "v") is VertexClass.RETICULATION
        assert vertex_class(clone_triple, "w") is VertexClass.TREE

    def test_single_ret_fixture(self, n3):
        assert vertex_class(n3, "h") is VertexClass.RETICULATION
        assert vertex_class(n3, "t1") is VertexClass.TREE

    def test_unknown_vertex(self, t2):
        with pytest.raises(UnknownVertexError):
            vertex_class(t2, "nope")

    def test_classes_partition(self, stacked_corpus):
        for net in stacked_corpus:
            seen = [vertex_class(net, v) for v in net.vertices]
            assert len(seen) == len(net.vertices)


class TestStacksAndSinks:
    def test_tree_has_no_stack(self, t2):
        assert stack_arcs(t2) == ()
        assert is_stack_free(t2)

    def test_twin_stack_arc(self, twin_a):
        assert stack_arcs(twin_a) == (("v6", "v7"),)
        assert not is_stack_free(twin_a)

    def test_single_ret_fixture_stack_free(self, n3):
        assert is_stack_free(n3)

    def test_clone_triple_sink(self, clone_triple):
        partition = sinks(clone_triple)
        assert partition.same_class("u", "v")
        assert partition.class_of("h") == frozenset({"h"})

    def test_stack_free_sinks_are_singletons(self, stack_free_corpus):
        for net in stack_free_corpus:
            assert all(len(cls) == 1 for cls in sinks(net).classes)

    def test_three_stacked_reticulations_share_a_sink(self):
        net = fixtures.two_leaf_tree()
        for _ in range(3):
            net = grow_reticulated_cherry(net, "a", "b")
        rets = [v for v in net.vertices if net.in_degree(v) >= 2]
        assert len(rets) == 3
        assert len(stack_arcs(net)) == 2
        partition = sinks(net)
        assert len(partition.classes) == 1
        assert partition.classes[0] == frozenset(rets)

    def test_sinks_match_union_find(self, stacked_corpus):
        for net in stacked_corpus:
            parent = {v: v for v in net.vertices}

            def find(v):
                while parent[v] != v:
                    parent[v] = parent[parent[v]]
                    v = parent[v]
                return v

            for u, v in stack_arcs(net):
                parent[find(u)] = find(v)
            rets = [v for v in net.vertices if net.in_degree(v) >= 2]
            expected = {}
            for v in rets:
                expected.setdefault(find(v), set()).add(v)
            got = {frozenset(cls) for cls in sinks(net).classes}
            assert got == {frozenset(s) for s in expected.values()}


class TestStackIdentification:
    def test_stack_free_is_fixed_point(self, n3):
        identified = stack_identification(n3)
        assert identified.proper
        assert identified.to_network() == n3

    def test_twins_identify_to_same_network(self, twin_a, twin_b):
        id_a, id_b = stack_identification(twin_a), stack_identification(twin_b)
        assert id_a.proper and id_b.proper
        assert is_isomorphic(id_a.to_network(), id_b.to_network())
        assert is_isomorphic(id_a.to_network(), fixtures.identified_twin())
        assert is_orchard(id_a.to_network())[0]

    def test_identified_orchard_stays_orchard(self, stacked_corpus):
        for net in stacked_corpus:
            identified = stack_identification(net)
            assert identified.proper
            assert is_orchard(identified.to_network())[0]

    def test_no_reticulation_to_reticulation_arcs_in_output(self, stacked_corpus):
        for net in stacked_corpus:
            identified = stack_identification(net)
            indeg = {}
            for _, v in identified.arcs:
                indeg[v] = indeg.get(v, 0) + 1
            for u, v in identified.arcs:
                assert not (indeg.get(u, 0) >= 2 and indeg.get(v, 0) >= 2)

    def test_contract_reaches_identification(self, twin_a):
        contracted = contract_stack_arc(twin_a, ("v6", "v7"))
        assert is_isomorphic(contracted, fixtures.identified_twin())

    def test_contract_requires_stack_arc(self, n3):
        with pytest.raises(NotAStackArcError):
            contract_stack_arc(n3, ("t1", "h"))

    def test_contract_parallel_arcs_detected(self):
        net = build_network(
            ["r", "p", "q", "u", "v", "x1", "x2"],
            [("r", "p"), ("r", "q"), ("p", "u"), ("p", "v"), ("q", "u"),
             ("q", "x1"), ("u", "v"), ("v", "x2")],
            {"x1": "x1", "x2": "x2"})
        with pytest.raises(ParallelArcsError):
            contract_stack_arc(net, ("u", "v"))

    def test_repeated_contraction_agrees_with_identification(self, stacked_corpus):
        for net in stacked_corpus[:15]:
            current = net
            while stack_arcs(current):
                current = contract_stack_arc(current, stack_arcs(current)[0])
            assert is_isomorphic(current, stack_identification(net).to_network())


class TestClassPredicates:
    def test_trees_satisfy_everything(self, t2):
        assert is_tree_child(t2) and is_tree_sibling(t2) and is_time_consistent(t2)

    def test_single_ret_fixture_is_tree_child(self, n3):
        assert is_tree_child(n3)

    def test_stack_arc_breaks_tree_child(self, twin_a):
        assert not is_tree_child(twin_a)

    def test_tree_child_implies_stack_free(self):
        for net in orchard_corpus(30, stacks=True, seed=23):
            if is_tree_child(net):
                assert is_stack_free(net)

    def test_crossover_block_is_not_tree_sibling(self):
        net = build_network(
            ["r", "t1", "t2", "m1", "m2", "a", "b"],
            [("r", "t1"), ("r", "t2"), ("t1", "m1"), ("t1", "m2"),
             ("t2", "m1"), ("t2", "m2"), ("m1", "a"), ("m2", "b")],
            {"a": "a", "b": "b"})
        assert not is_tree_sibling(net)

    def test_time_consistency_with_certificate(self, twin_a):
        assignment = time_assignment(twin_a)
        assert assignment is not None
        ret_arcs = {(u, v) for u, v in twin_a.arcs if twin_a.in_degree(v) >= 2}
        for u, v in twin_a.arcs:
            if (u, v) in ret_arcs:
                assert assignment[u] == assignment[v]
            else:
                assert assignment[u] < assignment[v]

    def test_time_inconsistency_detected(self):
        net = build_network(
            ["r", "t1", "t3", "h", "x1", "x2", "x3"],
            [("r", "t1"), ("r", "x1"), ("t1", "t3"), ("t1", "h"),
             ("t3", "x2"), ("t3", "h"), ("h", "x3")],
            {"x1": "x1", "x2": "x2", "x3": "x3"})
        assert not is_time_consistent(net)

    def test_tree_sibling_time_consistent_stack_free_implies_orchard(self):
        from orchardnets.generators import enumerate_networks
        cells = [(n, r) for n in range(1, 4) for r in range(0, 3)] + [(4, 0), (4, 1)]
        checked = 0
        for n, r in cells:
            for net in enumerate_networks(n, r, max_in=2):
                if (is_tree_sibling(net) and is_time_consistent(net)
                        and is_stack_free(net)):
                    assert is_orchard(net)[0], sorted(net.arcs)
                    checked += 1
        assert checked > 30

    def test_tree_child_inclusion_is_proper(self):
        # A stack-free orchard network that is not tree-child.
        witness = fixtures.ladder(2)
        assert is_stack_free(witness)
        assert is_orchard(witness)[0]
        assert not is_tree_child(witness)


class TestNetworkValue:
    def test_equality_and_hash(self, t2):
        other = build_network(["r", "a", "b"], [("r", "a"), ("r", "b")],
                              {"a": "a", "b": "b"})
        assert t2 == other and hash(t2) == hash(other)
        assert t2 != rename_vertices(t2)

    def test_internal_vertices_sorted(self, twin_a):
        assert twin_a.internal_vertices() == tuple(sorted(twin_a.internal_vertices()))

    def test_topological_order_respects_arcs(self, stacked_corpus):
        for net in stacked_corpus[:10]:
            position = {v: i for i, v in enumerate(net.topological_order())}
            assert all(position[u] < position[v] for u, v in net.arcs)
