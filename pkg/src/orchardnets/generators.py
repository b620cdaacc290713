"""Seeded random generators and the small-case exhaustive enumerator.

Random networks are grown forwards through the inverse cherry moves, so every
output is orchard by construction; stack-free and tree-child variants restrict
where new reticulations may land.  All generation is deterministic per seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Iterator, Optional

from .cherries import grow_cherry, grow_reticulated_cherry, grow_reticulation_arc, is_orchard
from .errors import BoundsTooLargeError, InfeasibleParamsError
from .network import Network, is_reticulation, single_vertex_network
from .isomorphism import is_isomorphic, refinement_signature
from .profiles import ancestral_profile


@dataclass(frozen=True)
class GenParams:
    """Knobs for the random generators; identical params give identical output.

    `allow_stacks` permits new reticulations directly under existing ones;
    `force_stack_free` forbids it and the two flags cannot both be set.
    `arc_moves` is the number of extra in-degree raises applied after the base
    growth (None picks a seed-dependent count, bounded by the reticulations).
    """

    leaf_count: int
    reticulation_count: int = 0
    max_in_degree: int = 2
    allow_stacks: bool = False
    force_stack_free: bool = True
    seed: int = 0
    arc_moves: Optional[int] = None

    def __post_init__(self):
        if self.leaf_count < 1 or self.reticulation_count < 0:
            raise InfeasibleParamsError("need at least one leaf and no negative counts")
        if self.max_in_degree < 2:
            raise InfeasibleParamsError("reticulations need in-degree at least 2")
        if self.force_stack_free and self.allow_stacks:
            raise InfeasibleParamsError("cannot both force stack-freeness and allow stacks")
        if self.leaf_count == 1 and self.reticulation_count > 0:
            raise InfeasibleParamsError("reticulation moves need at least two leaves")


def _labels(n: int) -> list[str]:
    return [f"x{i}" for i in range(1, n + 1)]


def _tree_parented_leaves(net: Network) -> list[str]:
    out = []
    for v in net.leaves():
        parent = net.parents(v)[0]
        if not is_reticulation(net, parent):
            out.append(net.label_of(v))
    return sorted(out)


def _grow_reticulation(net: Network, rng: random.Random, stacks_allowed: bool) -> Network:
    leaves = sorted(net.labels)
    targets = leaves if stacks_allowed else _tree_parented_leaves(net)
    b = rng.choice(targets)
    a = rng.choice([x for x in leaves if x != b])
    return grow_reticulated_cherry(net, a, b)


def _raise_in_degree(net: Network, rng: random.Random, max_in: int) -> Network:
    """One extra arc into a reticulation that parents a leaf, if any is eligible."""
    eligible = []
    for v in net.leaves():
        parent = net.parents(v)[0]
        if not is_reticulation(net, parent) or net.in_degree(parent) >= max_in:
            continue
        b = net.label_of(v)
        for a in sorted(net.labels):
            if a == b:
                continue
            if (net.parents(net.leaf_of(a))[0], parent) in net.arcs:
                continue
            eligible.append((a, b))
    if not eligible:
        return net
    a, b = rng.choice(sorted(eligible))
    return grow_reticulation_arc(net, a, b)


def random_orchard(params: GenParams) -> Network:
    """Orchard network grown by seeded inverse moves.

    Stack-free when requested; reticulation in-degrees stay within the bound.
    """
    rng = random.Random(params.seed)
    labels = _labels(params.leaf_count)
    net = single_vertex_network(labels[0])
    if params.leaf_count == 1:
        return net

    moves = ["leaf"] * (params.leaf_count - 1) + ["ret"] * params.reticulation_count
    rng.shuffle(moves)
    first_leaf = moves.index("leaf")
    moves[0], moves[first_leaf] = moves[first_leaf], moves[0]

    next_label = 1
    for move in moves:
        if move == "leaf":
            a = rng.choice(sorted(net.labels))
            net = grow_cherry(net, a, labels[next_label])
            next_label += 1
        else:
            net = _grow_reticulation(net, rng, params.allow_stacks)

    raises = params.arc_moves
    if raises is None:
        raises = rng.randint(0, params.reticulation_count) if params.max_in_degree > 2 else 0
    for _ in range(raises):
        net = _raise_in_degree(net, rng, params.max_in_degree)
    return net


def random_tree_child(params: GenParams) -> Network:
    """Tree-child network: reticulations only land where the displaced leaf's
    parent keeps a non-reticulation child.

    Such a network carries at most one reticulation fewer than it has leaves.
    """
    if params.allow_stacks:
        raise InfeasibleParamsError("tree-child networks cannot contain stacks")
    if params.reticulation_count > params.leaf_count - 1:
        raise InfeasibleParamsError("tree-child networks have fewer reticulations than leaves")
    if params.leaf_count == 1:
        return single_vertex_network(_labels(1)[0])
    for attempt in range(64):
        net = _try_tree_child(params, attempt)
        if net is not None:
            return net
    raise InfeasibleParamsError("no tree-child placement found for these parameters")


def _tree_child_targets(net: Network) -> list[str]:
    targets = []
    for v in net.leaves():
        parent = net.parents(v)[0]
        if is_reticulation(net, parent):
            continue
        if all(not is_reticulation(net, c) for c in net.children(parent) if c != v):
            targets.append(net.label_of(v))
    return sorted(targets)


def _try_tree_child(params: GenParams, attempt: int) -> Optional[Network]:
    rng = random.Random((params.seed * 1_000_003 + attempt) & 0xFFFFFFFF)
    labels = _labels(params.leaf_count)
    net = single_vertex_network(labels[0])

    queue = ["leaf"] * (params.leaf_count - 1) + ["ret"] * params.reticulation_count
    rng.shuffle(queue)
    first_leaf = queue.index("leaf")
    queue[0], queue[first_leaf] = queue[first_leaf], queue[0]

    next_label = 1
    while queue:
        move = queue.pop(0)
        if move == "ret":
            targets = _tree_child_targets(net)
            if not targets:
                if "leaf" not in queue:
                    return None
                queue.remove("leaf")
                queue.insert(0, move)
                move = "leaf"
            else:
                b = rng.choice(targets)
                a = rng.choice([x for x in sorted(net.labels) if x != b])
                net = grow_reticulated_cherry(net, a, b)
                continue
        a = rng.choice(sorted(net.labels))
        net = grow_cherry(net, a, labels[next_label])
        next_label += 1

    raises = params.arc_moves
    if raises is None:
        raises = rng.randint(0, params.reticulation_count) if params.max_in_degree > 2 else 0
    for _ in range(raises):
        net = _raise_in_degree(net, rng, params.max_in_degree)
    return net


def random_non_orchard(params: GenParams) -> Network:
    """A network on which every maximal reduction gets stuck.

    One leaf of an orchard core is replaced by a four-arc crossover block:
    two tree vertices both feeding two reticulations.  No reduction can ever
    touch the block, so no sequence completes.
    """
    if params.leaf_count < 2 or params.reticulation_count < 2:
        raise InfeasibleParamsError("the crossover block needs 2 leaves and 2 reticulations")
    if params.leaf_count == 2 and params.reticulation_count > 2:
        raise InfeasibleParamsError("a one-leaf core cannot carry extra reticulations")
    core = random_orchard(GenParams(
        leaf_count=params.leaf_count - 1,
        reticulation_count=params.reticulation_count - 2,
        max_in_degree=params.max_in_degree,
        allow_stacks=params.allow_stacks,
        force_stack_free=params.force_stack_free,
        seed=params.seed,
        arc_moves=params.arc_moves,
    ))
    rng = random.Random((params.seed << 1) ^ 0x5EED)
    victim = rng.choice(sorted(core.labels))
    anchor = core.leaf_of(victim)
    fresh = [f"w{i}" for i in range(1, 5)]
    taken = set(core.vertices)
    fresh = [name if name not in taken else name + "q" for name in fresh]
    wt1, wt2, wm1, wm2 = fresh
    la, lb = victim + "a", victim + "b"
    vertices = set(core.vertices) | {wt1, wt2, wm1, wm2, la, lb}
    arcs = set(core.arcs) | {(anchor, wt1), (anchor, wt2), (wt1, wm1), (wt1, wm2),
                             (wt2, wm1), (wt2, wm2), (wm1, la), (wm2, lb)}
    labels = {v: x for v, x in core.leaf_labels.items() if v != anchor}
    labels[la], labels[lb] = la, lb
    return Network(vertices, arcs, labels)


def generate_profile_equal_stacked_pair(params: GenParams) -> tuple[Network, Network]:
    """Two orchard networks with one profile and different stack arrangements.

    A stack-free orchard core is grown with one reticulation of in-degree 3
    over a leaf; that reticulation is then split into a two-vertex stack in
    two different ways.  Splitting never changes path counts, so the profiles
    agree, while the identifications of both outputs collapse back to the
    core.
    """
    if params.reticulation_count < 2:
        raise InfeasibleParamsError("a stacked pair needs at least two reticulations")
    if params.leaf_count < 3:
        raise InfeasibleParamsError(
            "need at least three leaves for two orchard stack arrangements")
    for attempt in range(64):
        pair = _try_stacked_pair(params, attempt)
        if pair is not None:
            return pair
    raise InfeasibleParamsError("could not grow an orchard pair for these parameters")


def _try_stacked_pair(params: GenParams, attempt: int) -> Optional[tuple[Network, Network]]:
    seed = (params.seed * 1_000_003 + attempt) & 0xFFFFFFFF
    rng = random.Random(seed)
    core = random_orchard(GenParams(
        leaf_count=params.leaf_count,
        reticulation_count=params.reticulation_count - 2,
        max_in_degree=max(params.max_in_degree, 3),
        seed=seed,
        arc_moves=0,
    ))
    candidates = _tree_parented_leaves(core)
    if not candidates:
        return None
    b = rng.choice(candidates)
    a = rng.choice([x for x in sorted(core.labels) if x != b])
    core = grow_reticulated_cherry(core, a, b)
    a2 = rng.choice([x for x in sorted(core.labels) if x != b])
    core = grow_reticulation_arc(core, a2, b)

    hub = core.parents(core.leaf_of(b))[0]
    leaf_b = core.leaf_of(b)
    parents = sorted(core.parents(hub))
    s1, s2 = _fresh_pair(core)

    def split(bottom: tuple[str, ...]) -> Network:
        top = [p for p in parents if p not in bottom]
        vertices = (set(core.vertices) - {hub}) | {s1, s2}
        arcs = {arc for arc in core.arcs if hub not in arc}
        arcs |= {(p, s1) for p in top}
        arcs |= {(p, s2) for p in bottom}
        arcs |= {(s1, s2), (s2, leaf_b)}
        return Network(vertices, arcs, core.leaf_labels)

    valid = []
    for size in range(1, len(parents) - 1):
        for bottom in combinations(parents, size):
            candidate = split(bottom)
            if is_orchard(candidate)[0]:
                valid.append(candidate)
    if len(valid) < 2:
        return None
    first, second = rng.sample(valid, 2)
    return first, second


def _fresh_pair(net: Network) -> tuple[str, str]:
    taken = set(net.vertices) | set(net.leaf_labels.values())
    out = []
    i = 1
    while len(out) < 2:
        name = f"s{i}"
        if name not in taken:
            out.append(name)
        i += 1
    return out[0], out[1]


# -- exhaustive enumeration ----------------------------------------------------


def enumerate_networks(n: int, r: int, max_in: int = 2,
                       leaf_cap: int = 5, ret_cap: int = 3) -> Iterator[Network]:
    """All networks with n leaves and r reticulations, once per isomorphism class.

    Works by direct degree-sequence search: every reticulation in-degree
    multiset determines the tree-vertex count, and parent sets are assigned
    backtracking-style with capacity, acyclicity and first-use symmetry
    pruning.  Survivors are deduplicated behind a profile-multiset bucket.
    """
    if n > leaf_cap or r > ret_cap:
        raise BoundsTooLargeError(f"requested ({n}, {r}) exceeds caps ({leaf_cap}, {ret_cap})")
    if n < 1 or r < 0 or max_in < 2:
        raise InfeasibleParamsError("need n >= 1, r >= 0, max_in >= 2")
    if n == 1:
        if r == 0:
            yield single_vertex_network("x1")
        return

    buckets: dict[tuple, list[Network]] = {}
    for degrees in combinations_with_replacement(range(2, max_in + 1), r):
        degs = tuple(sorted(degrees, reverse=True))
        k = n + sum(degs) - r - 2
        if k < 0:
            continue
        for net in _assignments(n, k, degs):
            key = _iso_bucket(net)
            group = buckets.setdefault(key, [])
            if any(is_isomorphic(net, other) for other in group):
                continue
            group.append(net)
            yield net


def _iso_bucket(net: Network) -> tuple:
    table = ancestral_profile(net)
    return (table.labels, tuple(sorted(table.rows)), refinement_signature(net))


def _assignments(n: int, k: int, degs: tuple[int, ...]) -> Iterator[Network]:
    root = "rho"
    trees = [f"t{i}" for i in range(1, k + 1)]
    rets = [f"h{i}" for i in range(1, len(degs) + 1)]
    leaves = [f"x{i}" for i in range(1, n + 1)]
    sources = [root] + trees + rets
    capacity = {root: 2, **{t: 2 for t in trees}, **{h: 1 for h in rets}}
    demands = [(h, degs[i]) for i, h in enumerate(rets)] + \
              [(t, 1) for t in trees] + [(x, 1) for x in leaves]

    arcs: list[tuple[str, str]] = []
    children: dict[str, set[str]] = {s: set() for s in sources}

    def reaches(start: str, goal: str) -> bool:
        stack, seen = [start], set()
        while stack:
            v = stack.pop()
            if v == goal:
                return True
            if v in seen:
                continue
            seen.add(v)
            stack.extend(children.get(v, ()))
        return False

    # First-use discipline: tree vertices (and reticulations of equal target
    # degree) are interchangeable until first mentioned, so only the next
    # fresh name of each symmetric group may be introduced.
    group_of = {t: "t" for t in trees}
    for i, h in enumerate(rets):
        group_of[h] = f"h{degs[i]}"
    group_order: dict[str, list[str]] = {}
    for s in trees + rets:
        group_order.setdefault(group_of[s], []).append(s)

    def allowed(source: str, introduced: dict[str, int]) -> bool:
        g = group_of.get(source)
        if g is None:
            return True
        return group_order[g].index(source) <= introduced[g]

    def introduce(source: str, introduced: dict[str, int]):
        g = group_of.get(source)
        if g is not None:
            idx = group_order[g].index(source)
            if idx == introduced[g]:
                introduced[g] += 1

    def assign(i: int, introduced: dict[str, int]) -> Iterator[Network]:
        if i == len(demands):
            yield Network([root] + trees + rets + leaves, list(arcs), {x: x for x in leaves})
            return
        vertex, need = demands[i]
        local = dict(introduced)
        g = group_of.get(vertex)
        if g is not None:
            local[g] = max(local[g], group_order[g].index(vertex) + 1)
        pool = [s for s in sources if s != vertex and capacity[s] > 0]
        for parents in combinations(pool, need):
            trial = dict(local)
            ok = True
            for p in parents:
                if not allowed(p, trial):
                    ok = False
                    break
                introduce(p, trial)
            if not ok or any(reaches(vertex, p) for p in parents):
                continue
            for p in parents:
                capacity[p] -= 1
                children[p].add(vertex)
                arcs.append((p, vertex))
            yield from assign(i + 1, trial)
            for p in parents:
                capacity[p] += 1
                children[p].discard(vertex)
            del arcs[-len(parents):]

    yield from assign(0, {g: 0 for g in group_order})
