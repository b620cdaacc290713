"""Shared helpers: independent oracles and small corpora.

The path-count oracle enumerates directed paths by depth-first search, one
path at a time, so it shares nothing with the dynamic program it checks.
"""

from __future__ import annotations

import random

import pytest

from orchardnets import fixtures
from orchardnets.generators import GenParams, random_orchard
from orchardnets.network import Network


def dfs_path_count(net: Network, start: str, label: str) -> int:
    """Count directed paths from `start` to the leaf labelled `label` by
    explicit enumeration."""
    target = net.leaf_of(label)
    count = 0
    stack = [start]

    def walk(v: str):
        nonlocal count
        if v == target:
            count += 1
            return
        for c in net.children(v):
            walk(c)

    walk(start)
    return count


def dfs_profile_rows(net: Network, order) -> list[tuple[int, ...]]:
    labels = sorted(net.labels)
    return [tuple(dfs_path_count(net, v, x) for x in labels) for v in order]


def rename_vertices(net: Network, suffix: str = "_r") -> Network:
    """Same network with every internal vertex renamed (labels untouched)."""
    mapping = {v: (v if net.is_leaf(v) else v + suffix) for v in net.vertices}
    return Network([mapping[v] for v in net.vertices],
                   [(mapping[u], mapping[v]) for u, v in net.arcs],
                   {mapping[v]: x for v, x in net.leaf_labels.items()})


def orchard_corpus(count: int, *, stacks: bool, seed: int = 7,
                   max_leaves: int = 6, max_rets: int = 4) -> list[Network]:
    out = []
    rng = random.Random(seed)
    for i in range(count):
        params = GenParams(leaf_count=rng.randint(2, max_leaves),
                           reticulation_count=rng.randint(0, max_rets),
                           max_in_degree=rng.choice([2, 3, 4]),
                           allow_stacks=stacks, force_stack_free=not stacks,
                           seed=seed * 10_000 + i)
        out.append(random_orchard(params))
    return out


@pytest.fixture(scope="session")
def stack_free_corpus():
    return orchard_corpus(40, stacks=False)


@pytest.fixture(scope="session")
def stacked_corpus():
    return orchard_corpus(40, stacks=True, seed=11)


@pytest.fixture
def twin_a():
    return fixtures.profile_twin_a()


@pytest.fixture
def twin_b():
    return fixtures.profile_twin_b()


@pytest.fixture
def clone_triple():
    return fixtures.clone_triple_network()


@pytest.fixture
def n3():
    return fixtures.three_leaf_single_ret()


@pytest.fixture
def n4():
    return fixtures.four_leaf_triple_parent_ret()


@pytest.fixture
def t2():
    return fixtures.two_leaf_tree()
