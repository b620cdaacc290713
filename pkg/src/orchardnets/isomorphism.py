"""Leaf-label-fixing digraph isomorphism for phylogenetic networks.

Leaves are anchored by their labels, so colour refinement starting from the
labels almost always splits every vertex apart; a small backtracking pass
resolves whatever symmetry is left.  Exact and fast at desk scale.
"""

from __future__ import annotations

import hashlib
from itertools import permutations
from typing import Optional

from .network import Network


def _refine(net: Network, colour: dict[str, int]) -> dict[str, int]:
    """Iterate (colour, child colours, parent colours) to a fixpoint."""
    while True:
        signature = {
            v: (colour[v],
                tuple(sorted(colour[c] for c in net.children(v))),
                tuple(sorted(colour[p] for p in net.parents(v))))
            for v in net.vertices
        }
        palette = {sig: i for i, sig in enumerate(sorted(set(signature.values())))}
        new = {v: palette[signature[v]] for v in net.vertices}
        if len(set(new.values())) == len(set(colour.values())):
            return new
        colour = new


def _initial_colour(net: Network) -> dict[str, str]:
    out = {}
    for v in net.vertices:
        if net.is_leaf(v):
            out[v] = "x:" + net.label_of(v)
        else:
            out[v] = f"d:{net.in_degree(v)}/{net.out_degree(v)}"
    return out


def _stable_colours(net: Network) -> dict[str, int]:
    raw = _initial_colour(net)
    palette = {c: i for i, c in enumerate(sorted(set(raw.values())))}
    return _refine(net, {v: palette[raw[v]] for v in net.vertices})


def isomorphism_witness(net1: Network, net2: Network) -> Optional[dict[str, str]]:
    """A bijection fixing leaf labels and preserving arcs, or None."""
    if net1.labels != net2.labels:
        return None
    if len(net1.vertices) != len(net2.vertices) or len(net1.arcs) != len(net2.arcs):
        return None

    raw1, raw2 = _initial_colour(net1), _initial_colour(net2)
    palette = {c: i for i, c in enumerate(sorted(set(raw1.values()) | set(raw2.values())))}
    c1 = _refine(net1, {v: palette[raw1[v]] for v in net1.vertices})
    c2 = _refine(net2, {v: palette[raw2[v]] for v in net2.vertices})

    # Refinement colours must agree class-by-class.  They are only comparable
    # because both refinements start from the shared palette and the refinement
    # rule is deterministic; re-normalise by class signature to be safe.
    def classes(net, colour):
        out: dict[tuple, list[str]] = {}
        for v in net.vertices:
            out.setdefault(_class_key(net, colour, v), []).append(v)
        return {k: sorted(vs) for k, vs in out.items()}

    def _class_key(net, colour, v):
        return (colour[v],
                tuple(sorted(colour[c] for c in net.children(v))),
                tuple(sorted(colour[p] for p in net.parents(v))))

    cls1, cls2 = classes(net1, c1), classes(net2, c2)
    if set(cls1) != set(cls2):
        return None
    if any(len(cls1[k]) != len(cls2[k]) for k in cls1):
        return None

    mapping: dict[str, str] = {}
    used: set[str] = set()
    # Fix leaves by label up front.
    for x in net1.labels:
        mapping[net1.leaf_of(x)] = net2.leaf_of(x)
        used.add(net2.leaf_of(x))

    cells = sorted((vs, cls2[key]) for key, vs in cls1.items()
                   if not net1.is_leaf(vs[0]))

    def consistent(v, w):
        for c in net1.children(v):
            if c in mapping and (w, mapping[c]) not in net2.arcs:
                return False
        for p in net1.parents(v):
            if p in mapping and (mapping[p], w) not in net2.arcs:
                return False
        return True

    def assign(cell_index: int) -> bool:
        if cell_index == len(cells):
            return _check_full(net1, net2, mapping)
        vs, ws = cells[cell_index]
        free = [w for w in ws if w not in used]
        for perm in permutations(free):
            ok = True
            placed = []
            for v, w in zip(vs, perm):
                if not consistent(v, w):
                    ok = False
                    break
                mapping[v] = w
                used.add(w)
                placed.append(v)
            if ok and assign(cell_index + 1):
                return True
            for v in placed:
                used.discard(mapping.pop(v))
        return False

    if assign(0):
        return dict(mapping)
    return None


def _check_full(net1: Network, net2: Network, mapping: dict[str, str]) -> bool:
    return all((mapping[u], mapping[v]) in net2.arcs for u, v in net1.arcs)


def is_isomorphic(net1: Network, net2: Network) -> bool:
    """True iff a leaf-label-fixing isomorphism exists (False on label mismatch)."""
    return isomorphism_witness(net1, net2) is not None


def refinement_signature(net: Network) -> tuple:
    """A cheap isomorphism invariant: the colour-refinement fingerprint.

    Equal for isomorphic networks; unequal values prove non-isomorphism, so
    the signature makes a good dedup bucket key.  Colours are hashed per round
    to stay comparable across different networks.
    """
    colour = {}
    for v in net.vertices:
        raw = "x:" + net.label_of(v) if net.is_leaf(v) else \
            f"d:{net.in_degree(v)}/{net.out_degree(v)}"
        colour[v] = hashlib.blake2b(raw.encode(), digest_size=8).hexdigest()
    distinct = len(set(colour.values()))
    while True:
        new = {}
        for v in net.vertices:
            material = repr((colour[v],
                             sorted(colour[c] for c in net.children(v)),
                             sorted(colour[p] for p in net.parents(v))))
            new[v] = hashlib.blake2b(material.encode(), digest_size=8).hexdigest()
        colour = new
        now = len(set(colour.values()))
        if now == distinct:
            break
        distinct = now
    arcs = sorted((colour[u], colour[v]) for u, v in net.arcs)
    return (tuple(sorted(colour.values())), tuple(arcs))
