"""One-command verifiers: each registered claim is hammered with seeded random
instances and reports reproducible failures.

Trials derive independent sub-seeds from (seed, index), so a report is the
same whether trials run serially or in parallel, and any failure can be
replayed from the seed it names.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

from .cherries import (MoveKind, apply_move, available_moves, is_orchard,
                       is_detectable_reticulated_cherry, random_maximal_reduction)
from .errors import UnknownClaimError
from .formats import render_edge_list
from .generators import (GenParams, generate_profile_equal_stacked_pair,
                         random_non_orchard, random_orchard, random_tree_child)
from .isomorphism import is_isomorphic
from .network import (contract_stack_arc, is_stack_free, is_tree_child,
                      stack_arcs, stack_identification)
from .profiles import ancestral_profile, check_clone_characterization, profiles_equal
from .profile_moves import (cut_retained, cut_suppressed, identify_row,
                            reduce_leaf, support_conditions)
from .reconstruct import check_id_agreement, reconstruct


@dataclass(frozen=True)
class Failure:
    trial: int
    seed: int
    description: str
    dump: str

    def __str__(self):
        return f"trial {self.trial} (seed {self.seed}): {self.description}\n{self.dump}"


@dataclass(frozen=True)
class VerifierReport:
    claim: str
    trials: int
    failures: tuple[Failure, ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    def __str__(self):
        head = f"{self.claim}: {self.trials} trials, {len(self.failures)} failures"
        if self.passed:
            return head
        return head + "\n" + "\n".join(str(f) for f in self.failures)


def sub_seed(seed: int, index: int) -> int:
    digest = hashlib.blake2b(f"{seed}:{index}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def _random_params(rng: random.Random, *, stacks: bool, seed: int,
                   max_leaves: int = 7, max_rets: int = 4) -> GenParams:
    n = rng.randint(2, max_leaves)
    r = rng.randint(0, max_rets)
    return GenParams(leaf_count=n, reticulation_count=r,
                     max_in_degree=rng.choice([2, 2, 3, 4]),
                     allow_stacks=stacks, force_stack_free=not stacks, seed=seed)


def _mixed_network(rng: random.Random, seed: int):
    kind = rng.randrange(4)
    if kind == 0:
        return random_orchard(_random_params(rng, stacks=False, seed=seed))
    if kind == 1:
        return random_orchard(_random_params(rng, stacks=True, seed=seed))
    if kind == 2:
        n = rng.randint(2, 5)
        r = 2 if n == 2 else rng.randint(2, 4)
        params = GenParams(leaf_count=n, reticulation_count=r,
                           allow_stacks=True, force_stack_free=False, seed=seed)
        return random_non_orchard(params)
    return random_tree_child(GenParams(leaf_count=rng.randint(2, 6),
                                       reticulation_count=rng.randint(0, 1),
                                       max_in_degree=3, seed=seed))


def _check_confluence(trial: int, seed: int):
    rng = random.Random(seed)
    net = random_orchard(_random_params(rng, stacks=bool(rng.getrandbits(1)), seed=seed))
    for attempt in range(2):
        final, _ = random_maximal_reduction(net, random.Random(sub_seed(seed, attempt)))
        if not final.is_single_vertex():
            return f"random maximal sequence {attempt} stuck on an orchard network", net
    bad_n = rng.randint(2, 5)
    bad_r = 2 if bad_n == 2 else rng.randint(2, 4)
    bad = random_non_orchard(GenParams(leaf_count=bad_n, reticulation_count=bad_r,
                                       allow_stacks=True, force_stack_free=False,
                                       seed=seed))
    for attempt in range(5):
        final, _ = random_maximal_reduction(bad, random.Random(sub_seed(seed, 100 + attempt)))
        if final.is_single_vertex():
            return "a maximal sequence completed on a crossover-blocked network", bad
    return None


def _check_reconstruction(trial: int, seed: int):
    rng = random.Random(seed)
    net = random_orchard(_random_params(rng, stacks=False, seed=seed))
    result = reconstruct(ancestral_profile(net))
    if not result.verified:
        return "reconstruction left unverified", net
    if not is_isomorphic(result.network, net):
        return "reconstructed network is not isomorphic to the source", net
    return None


def _check_id_agreement(trial: int, seed: int):
    rng = random.Random(seed)
    params = GenParams(leaf_count=rng.randint(3, 6),
                       reticulation_count=rng.randint(2, 4),
                       max_in_degree=rng.choice([3, 4]), seed=seed)
    first, second = generate_profile_equal_stacked_pair(params)
    outcome = check_id_agreement(first, second)
    if outcome.vacuous:
        return "generated pair does not share a profile", first
    if not outcome.holds:
        return "identifications of a profile-equal pair are not isomorphic", first
    return None


def _check_clone_structure(trial: int, seed: int):
    rng = random.Random(seed)
    net = random_orchard(_random_params(rng, stacks=bool(rng.getrandbits(1)), seed=seed))
    ok, witness = check_clone_characterization(net)
    if not ok:
        return f"clone mismatch at {witness}", net
    return None


def _check_commutation(trial: int, seed: int):
    rng = random.Random(seed)
    net = random_orchard(_random_params(rng, stacks=bool(rng.getrandbits(1)), seed=seed))
    if len(net.labels) < 2:
        return None
    table = ancestral_profile(net)
    for kind, a, b in available_moves(net):
        if kind is MoveKind.REDUCE:
            mirrored = reduce_leaf(table, a, b)
        elif kind is MoveKind.CUT_SUPPRESSED:
            mirrored = cut_suppressed(table, a, b)
        else:
            mirrored = cut_retained(table, a, b)
        graph_side, _ = apply_move(net, kind, a, b)
        if not profiles_equal(mirrored, ancestral_profile(graph_side)):
            return f"{kind.value} on ({a}, {b}) does not mirror the graph move", net
    for u, v in stack_arcs(net):
        j, k = table.order.index(u), table.order.index(v)
        mirrored = identify_row(table, j, stack_partner=k)
        contracted = contract_stack_arc(net, (u, v))
        if not profiles_equal(mirrored, ancestral_profile(contracted)):
            return f"identifying {u} does not mirror contracting ({u}, {v})", net
    return None


def _check_stack_contraction(trial: int, seed: int):
    rng = random.Random(seed)
    params = GenParams(leaf_count=rng.randint(2, 6), reticulation_count=rng.randint(2, 4),
                       allow_stacks=True, force_stack_free=False, seed=seed)
    net = random_orchard(params)
    current = net
    while True:
        arcs = stack_arcs(current)
        if not arcs:
            break
        contracted = contract_stack_arc(current, arcs[0])
        ok, _ = is_orchard(contracted)
        if not ok:
            return f"contracting {arcs[0]} left a non-orchard network", current
        current = contracted
    identified = stack_identification(net)
    if not identified.proper:
        return "identification of an orchard network has parallel arcs", net
    if not is_isomorphic(current, identified.to_network()):
        return "repeated contraction disagrees with sink identification", net
    return None


def _check_cherry_detection(trial: int, seed: int):
    rng = random.Random(seed)
    net = _mixed_network(rng, seed)
    if len(net.labels) < 2:
        return None
    table = ancestral_profile(net)
    for a in sorted(net.labels):
        for b in sorted(net.labels):
            if a == b:
                continue
            structural = is_detectable_reticulated_cherry(net, a, b)
            conditions = support_conditions(table, a, b)
            if structural != conditions:
                return (f"({a}, {b}): structural={structural} support-conditions={conditions}", net)
    return None


def _check_tree_child_subset(trial: int, seed: int):
    rng = random.Random(seed)
    n = rng.randint(2, 7)
    params = GenParams(leaf_count=n, reticulation_count=rng.randint(0, n - 1),
                       max_in_degree=rng.choice([2, 3]), seed=seed)
    net = random_tree_child(params)
    if not is_tree_child(net):
        return "generator produced a non-tree-child network", net
    if not is_stack_free(net):
        return "tree-child network with a stack", net
    if not is_orchard(net)[0]:
        return "tree-child network that is not orchard", net
    return None


CLAIMS = {
    "confluence": _check_confluence,
    "reconstruction": _check_reconstruction,
    "id-agreement": _check_id_agreement,
    "clone-structure": _check_clone_structure,
    "commutation": _check_commutation,
    "stack-contraction": _check_stack_contraction,
    "cherry-detection": _check_cherry_detection,
    "tree-child-subset": _check_tree_child_subset,
}


def verify(claim: str, trials: int = 500, seed: int = 42) -> VerifierReport:
    """Run one claim's property over `trials` seeded instances."""
    try:
        check = CLAIMS[claim]
    except KeyError:
        raise UnknownClaimError(
            f"unknown claim {claim!r}; registered: {', '.join(sorted(CLAIMS))}") from None
    failures = []
    for trial in range(trials):
        trial_seed = sub_seed(seed, trial)
        outcome = check(trial, trial_seed)
        if outcome is not None:
            description, net = outcome
            failures.append(Failure(trial, trial_seed, description, render_edge_list(net)))
    return VerifierReport(claim, trials, tuple(failures))
