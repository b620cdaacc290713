"""Small named networks used throughout the tests and the verification harness.

The twin pair is the canonical identifiability counterexample: two binary
orchard networks, each with a stacked reticulation pair, that share an
ancestral profile without being isomorphic.  Collapsing the stack in either
twin yields the same (isomorphic) network, which is what the identification
uniqueness result predicts.
"""

from __future__ import annotations

from .cherries import grow_cherry, grow_reticulated_cherry
from .network import Network, build_network, single_vertex_network

TWIN_ORDER = ("v1", "v2", "v3", "v4", "v5", "v6", "v7")


def single_leaf(label: str = "a") -> Network:
    return single_vertex_network(label)


def two_leaf_tree() -> Network:
    return build_network(["r", "a", "b"], [("r", "a"), ("r", "b")], {"a": "a", "b": "b"})


def three_leaf_single_ret() -> Network:
    """Three leaves, one in-degree-2 reticulation over the middle leaf.

    Both (a, b) and (c, b) are reticulated cherries; there is no plain cherry.
    """
    return build_network(
        ["rho", "t1", "t2", "h", "a", "b", "c"],
        [("rho", "t1"), ("rho", "t2"), ("t1", "a"), ("t1", "h"),
         ("t2", "h"), ("t2", "c"), ("h", "b")],
        {"a": "a", "b": "b", "c": "c"},
    )


def four_leaf_triple_parent_ret() -> Network:
    """Four leaves and a single reticulation with three parents.

    Cutting any one of its reticulated cherries leaves the reticulation in
    place with in-degree two.
    """
    return build_network(
        ["rho", "s", "t1", "t2", "t3", "h", "a", "b", "c", "d"],
        [("rho", "t1"), ("rho", "s"), ("s", "t2"), ("s", "t3"),
         ("t1", "a"), ("t1", "h"), ("t2", "c"), ("t2", "h"),
         ("t3", "d"), ("t3", "h"), ("h", "b")],
        {"a": "a", "b": "b", "c": "c", "d": "d"},
    )


def profile_twin_a() -> Network:
    """First twin: the parent of x2 reaches x4 by a unique path of length 3."""
    return build_network(
        list(TWIN_ORDER) + ["x1", "x2", "x3", "x4"],
        [("v1", "v2"), ("v1", "v3"), ("v2", "x1"), ("v2", "v6"),
         ("v3", "v4"), ("v3", "v5"), ("v4", "x2"), ("v4", "v6"),
         ("v5", "x3"), ("v5", "v7"), ("v6", "v7"), ("v7", "x4")],
        {f"x{i}": f"x{i}" for i in range(1, 5)},
    )


def profile_twin_b() -> Network:
    """Second twin: the parent of x2 reaches x4 by a unique path of length 2."""
    return build_network(
        list(TWIN_ORDER) + ["x1", "x2", "x3", "x4"],
        [("v1", "v2"), ("v1", "v3"), ("v2", "x1"), ("v2", "v6"),
         ("v3", "v4"), ("v3", "v5"), ("v4", "x2"), ("v4", "v7"),
         ("v5", "x3"), ("v5", "v6"), ("v6", "v7"), ("v7", "x4")],
        {f"x{i}": f"x{i}" for i in range(1, 5)},
    )


def identified_twin() -> Network:
    """What either twin collapses to: the stack pair merged into one
    in-degree-3 reticulation."""
    return build_network(
        ["v1", "v2", "v3", "v4", "v5", "h", "x1", "x2", "x3", "x4"],
        [("v1", "v2"), ("v1", "v3"), ("v2", "x1"), ("v2", "h"),
         ("v3", "v4"), ("v3", "v5"), ("v4", "x2"), ("v4", "h"),
         ("v5", "x3"), ("v5", "h"), ("h", "x4")],
        {f"x{i}": f"x{i}" for i in range(1, 5)},
    )


def clone_triple_network() -> Network:
    """Six leaves with a stacked pair u -> v over a tree vertex w.

    All of u, v, w carry identical path-count rows: u and v share a sink,
    while w is cloned with them through the arc (v, w).  {x3, x4} is a cherry
    and (x6, x5) a reticulated cherry with x5 the reticulation leaf.
    """
    return build_network(
        ["rho", "g1", "g2", "g3", "g4", "u", "v", "w", "c", "p", "h"]
        + [f"x{i}" for i in range(1, 7)],
        [("rho", "g1"), ("rho", "g2"), ("g1", "u"), ("g1", "g3"),
         ("g2", "u"), ("g2", "g4"), ("g3", "v"), ("g3", "x1"),
         ("g4", "h"), ("g4", "x2"), ("u", "v"), ("v", "w"),
         ("w", "c"), ("w", "p"), ("c", "x3"), ("c", "x4"),
         ("p", "x6"), ("p", "h"), ("h", "x5")],
        {f"x{i}": f"x{i}" for i in range(1, 7)},
    )


def ladder(height: int) -> Network:
    """Binary stack-free orchard network on two leaves with `height`
    reticulations, grown by alternating reticulated cherries.

    The vertex count (3 + 2 * height) grows without bound while the leaf set
    stays fixed, so no function of the leaf count bounds the network size.
    """
    if height < 0:
        raise ValueError("height must be non-negative")
    net = grow_cherry(single_leaf("a"), "a", "b")
    sides = ("a", "b")
    for i in range(height):
        a, b = sides[i % 2], sides[(i + 1) % 2]
        net = grow_reticulated_cherry(net, a, b)
    return net
