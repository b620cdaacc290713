"""Cherry machinery on the graph side.

A cherry is two leaves sharing a parent; a reticulated cherry (a, b) puts b
under a reticulation fed by an arc from a's parent.  Reducing and cutting are
the two shrinking moves; the grow functions are their exact inverses and drive
both reconstruction and random generation.  The orchard decision repeatedly
applies any available move: if one maximal sequence reaches a single vertex,
every maximal sequence does, so greedy choice is safe.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Optional

from .errors import (FreshLabelClashError, NotACherryError,
                     NotAReticulatedCherryError, NotAReticulationParentError,
                     UnknownLabelError)
from .network import Network, is_reticulation


class MoveKind(Enum):
    REDUCE = "reduce"
    CUT_SUPPRESSED = "cut-suppressed"   # reticulation parent of b removed
    CUT_RETAINED = "cut-retained"       # reticulation parent of b kept


@dataclass(frozen=True)
class CherryMove:
    """One recorded reduction step.

    `a` and `b` are leaf labels, with b the removed leaf (reduce) or the
    reticulation leaf (cuts).  The suppressed vertices are recorded so that
    sequences replay and invert name-stably: `parent_a` is the suppressed
    parent of a (the shared parent for a reduce, including the root-cherry
    case), and `parent_b` is the suppressed reticulation, present exactly for
    the suppressing cut.
    """

    kind: MoveKind
    a: str
    b: str
    parent_a: Optional[str] = None
    parent_b: Optional[str] = None

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("a cherry needs two distinct leaves")
        if self.kind is MoveKind.CUT_SUPPRESSED and self.parent_b is None:
            raise ValueError("suppressing cut must record the removed reticulation")
        if self.kind is not MoveKind.CUT_SUPPRESSED and self.parent_b is not None:
            raise ValueError("only the suppressing cut records a removed reticulation")


class CherrySequence:
    """An ordered, replayable list of cherry moves."""

    def __init__(self, moves: Iterable[CherryMove] = ()):
        self.moves: tuple[CherryMove, ...] = tuple(moves)

    def __iter__(self):
        return iter(self.moves)

    def __len__(self):
        return len(self.moves)

    def __getitem__(self, i):
        return self.moves[i]

    def __eq__(self, other):
        return isinstance(other, CherrySequence) and self.moves == other.moves

    def __repr__(self):
        return f"CherrySequence({len(self.moves)} moves)"

    def apply_to(self, net: Network) -> Network:
        for mv in self.moves:
            if mv.kind is MoveKind.REDUCE:
                net = reduce_cherry(net, mv.a, mv.b)
            else:
                net, _ = cut_reticulated_cherry(net, mv.a, mv.b)
        return net


# -- detection ---------------------------------------------------------------


def find_cherries(net: Network) -> list[tuple[str, str]]:
    """Unordered label pairs sharing a parent, each returned sorted."""
    out = []
    by_parent: dict[str, list[str]] = {}
    for v in net.leaves():
        if net.parents(v):
            by_parent.setdefault(net.parents(v)[0], []).append(net.label_of(v))
    for kids in by_parent.values():
        kids.sort()
        for i in range(len(kids)):
            for j in range(i + 1, len(kids)):
                out.append((kids[i], kids[j]))
    return sorted(out)


def find_reticulated_cherries(net: Network) -> list[tuple[str, str]]:
    """Ordered pairs (a, b) with b the reticulation leaf."""
    out = []
    for leaf_b in net.leaves():
        if not net.parents(leaf_b):
            continue
        pb = net.parents(leaf_b)[0]
        if not is_reticulation(net, pb):
            continue
        for g in net.parents(pb):
            for c in net.children(g):
                if c != pb and net.is_leaf(c):
                    out.append((net.label_of(c), net.label_of(leaf_b)))
    return sorted(out)


def tree_grandparents(net: Network, b: str) -> bool:
    """True when no parent of b's parent is a reticulation.

    The root qualifies: the condition rules out stacked reticulations above b,
    and the root can never be one.
    """
    pb = net.parents(net.leaf_of(b))[0]
    return all(not is_reticulation(net, g) for g in net.parents(pb))


def is_detectable_reticulated_cherry(net: Network, a: str, b: str) -> bool:
    """Reticulated cherry (a, b) whose reticulation has no reticulation parent.

    This is the structural side of the profile-level detection conditions; in
    a stack-free network it covers every reticulated cherry.
    """
    if (a, b) not in find_reticulated_cherries(net):
        return False
    return tree_grandparents(net, b)


# -- shrinking moves ---------------------------------------------------------


def _suppress(vertices: set[str], arcs: set[tuple[str, str]], v: str):
    """Remove a vertex of in-degree 1 and out-degree 1, merging its arcs."""
    parent = next(u for u, w in arcs if w == v)
    child = next(w for u, w in arcs if u == v)
    arcs.discard((parent, v))
    arcs.discard((v, child))
    arcs.add((parent, child))
    vertices.discard(v)


def reduce_cherry(net: Network, a: str, b: str) -> Network:
    """Delete leaf b of a cherry {a, b} and suppress the shared parent.

    When the shared parent is the root, the root goes too and only the
    isolated vertex a remains.
    """
    if (min(a, b), max(a, b)) not in find_cherries(net):
        raise NotACherryError((a, b))
    leaf_a, leaf_b = net.leaf_of(a), net.leaf_of(b)
    p = net.parents(leaf_a)[0]
    if p == net.root:
        return Network([leaf_a], [], {leaf_a: a})
    vertices = set(net.vertices) - {leaf_b, p}
    arcs = {arc for arc in net.arcs if p not in arc}
    g = net.parents(p)[0]
    arcs.add((g, leaf_a))
    labels = {v: x for v, x in net.leaf_labels.items() if v != leaf_b}
    return Network(vertices, arcs, labels)


def cut_reticulated_cherry(net: Network, a: str, b: str) -> tuple[Network, bool]:
    """Delete the arc joining the parents of a reticulated cherry (a, b).

    a's parent is always suppressed; b's reticulation parent is suppressed
    exactly when its in-degree was two, and the returned flag reports whether
    that happened.
    """
    if (a, b) not in find_reticulated_cherries(net):
        raise NotAReticulatedCherryError((a, b))
    leaf_a, leaf_b = net.leaf_of(a), net.leaf_of(b)
    pa, pb = net.parents(leaf_a)[0], net.parents(leaf_b)[0]
    vertices = set(net.vertices)
    arcs = set(net.arcs)
    arcs.discard((pa, pb))
    _suppress(vertices, arcs, pa)
    suppressed = net.in_degree(pb) == 2
    if suppressed:
        _suppress(vertices, arcs, pb)
    return Network(vertices, arcs, net.leaf_labels), suppressed


# -- growing moves (exact inverses) ------------------------------------------


def _fresh_names(net: Network, count: int, prefix: str = "g") -> list[str]:
    taken = set(net.vertices) | set(net.leaf_labels.values())
    out = []
    i = 1
    while len(out) < count:
        name = f"{prefix}{i}"
        if name not in taken:
            taken.add(name)
            out.append(name)
        i += 1
    return out


def _leaf_vertex_name(net: Network, label: str) -> str:
    if label not in net.vertices:
        return label
    return _fresh_names(net, 1, prefix="leaf")[0]


def grow_cherry(net: Network, a: str, b_label: str) -> Network:
    """Add a fresh leaf as a's cherry sibling (inverse of reducing it)."""
    if b_label in net.labels:
        raise FreshLabelClashError(b_label)
    leaf_a = net.leaf_of(a)
    leaf_b = _leaf_vertex_name(net, b_label)
    labels = dict(net.leaf_labels)
    labels[leaf_b] = b_label
    if net.is_single_vertex():
        (root,) = _fresh_names(net, 1)
        return Network([leaf_a, leaf_b, root], [(root, leaf_a), (root, leaf_b)], labels)
    (t,) = _fresh_names(net, 1)
    p = net.parents(leaf_a)[0]
    arcs = set(net.arcs) - {(p, leaf_a)}
    arcs |= {(p, t), (t, leaf_a), (t, leaf_b)}
    return Network(set(net.vertices) | {t, leaf_b}, arcs, labels)


def grow_reticulated_cherry(net: Network, a: str, b: str) -> Network:
    """Put existing leaf b under a fresh in-degree-2 reticulation fed from a
    fresh tree vertex above a (inverse of the suppressing cut)."""
    leaf_a, leaf_b = net.leaf_of(a), net.leaf_of(b)
    if leaf_a == leaf_b:
        raise UnknownLabelError("need two distinct leaves")
    t, m = _fresh_names(net, 2)
    pa, pb = net.parents(leaf_a)[0], net.parents(leaf_b)[0]
    arcs = set(net.arcs) - {(pa, leaf_a), (pb, leaf_b)}
    arcs |= {(pa, t), (t, leaf_a), (pb, m), (m, leaf_b), (t, m)}
    return Network(set(net.vertices) | {t, m}, arcs, net.leaf_labels)


def grow_reticulation_arc(net: Network, a: str, b: str) -> Network:
    """Feed b's existing reticulation parent one more arc from a fresh tree
    vertex above a (inverse of the retaining cut).

    The new arc leaves the fresh tree vertex, so the move is well defined even
    when a's current parent already feeds the reticulation.
    """
    leaf_a, leaf_b = net.leaf_of(a), net.leaf_of(b)
    pb = net.parents(leaf_b)[0]
    if not is_reticulation(net, pb):
        raise NotAReticulationParentError(b)
    pa = net.parents(leaf_a)[0]
    (t,) = _fresh_names(net, 1)
    arcs = set(net.arcs) - {(pa, leaf_a)}
    arcs |= {(pa, t), (t, leaf_a), (t, pb)}
    return Network(set(net.vertices) | {t}, arcs, net.leaf_labels)


# -- orchard decision ---------------------------------------------------------


def available_moves(net: Network) -> list[tuple[MoveKind, str, str]]:
    """Every applicable move, cherries first, then lexicographic by (b, a).

    Cherries contribute both orientations; the cut kind is resolved by the
    reticulation's in-degree.
    """
    moves = []
    for x, y in find_cherries(net):
        moves.append((MoveKind.REDUCE, x, y))
        moves.append((MoveKind.REDUCE, y, x))
    for a, b in find_reticulated_cherries(net):
        pb = net.parents(net.leaf_of(b))[0]
        kind = MoveKind.CUT_SUPPRESSED if net.in_degree(pb) == 2 else MoveKind.CUT_RETAINED
        moves.append((kind, a, b))
    return sorted(moves, key=lambda m: (m[0] is not MoveKind.REDUCE, m[2], m[1]))


def apply_move(net: Network, kind: MoveKind, a: str, b: str) -> tuple[Network, CherryMove]:
    if kind is MoveKind.REDUCE:
        p = net.parents(net.leaf_of(a))[0]
        return reduce_cherry(net, a, b), CherryMove(MoveKind.REDUCE, a, b, parent_a=p)
    pa = net.parents(net.leaf_of(a))[0]
    pb = net.parents(net.leaf_of(b))[0]
    result, suppressed = cut_reticulated_cherry(net, a, b)
    if suppressed:
        return result, CherryMove(MoveKind.CUT_SUPPRESSED, a, b, parent_a=pa, parent_b=pb)
    return result, CherryMove(MoveKind.CUT_RETAINED, a, b, parent_a=pa)


Chooser = Callable[[list[tuple[MoveKind, str, str]]], tuple[MoveKind, str, str]]


def maximal_reduction(net: Network, choose: Optional[Chooser] = None) -> tuple[Network, CherrySequence]:
    """Apply moves until none remains; deterministic first-candidate by default."""
    moves: list[CherryMove] = []
    while True:
        candidates = available_moves(net)
        if not candidates:
            return net, CherrySequence(moves)
        pick = candidates[0] if choose is None else choose(candidates)
        net, recorded = apply_move(net, *pick)
        moves.append(recorded)


def random_maximal_reduction(net: Network, rng: random.Random) -> tuple[Network, CherrySequence]:
    return maximal_reduction(net, choose=rng.choice)


def is_orchard(net: Network) -> tuple[bool, CherrySequence]:
    """Greedy reduction; complete exactly when the network is orchard.

    Every maximal sequence of an orchard network is complete, so the greedy
    tie-break (cherries first, lexicographic) never changes the answer, only
    the recorded sequence.
    """
    final, seq = maximal_reduction(net)
    return final.is_single_vertex(), seq
