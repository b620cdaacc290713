"""Rebuilding a network from its ancestral profile.

The search applies the table-level moves depth-first over detected candidates,
pruning on arithmetic dead ends, until one label remains and every row is
blank.  The recorded move list is then replayed in reverse through the grow
operations, and the rebuilt network's profile is compared with the input;
only a verified terminal counts as a solution.

For a profile coming from a stack-free orchard network the strict candidates
suffice and every verified terminal is the same network up to isomorphism.
Other inputs get best-effort treatment: candidate detection falls back to the
row-only conditions, several non-isomorphic solutions may exist (profiles with
stacked reticulations genuinely admit them), and exhausting the search without
a verified terminal reports the profile as unrealisable in this regime.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .cherries import (MoveKind, grow_cherry, grow_reticulated_cherry,
                       grow_reticulation_arc, is_orchard)
from .errors import (InvalidNetworkError, NegativeEntryError, NotOrchardError,
                     NotAReticulationParentError, SearchExhaustedError,
                     UnknownLabelError, VerificationFailedError)
from .network import Network, single_vertex_network, stack_identification
from .isomorphism import is_isomorphic
from .profiles import ProfileTable, ancestral_profile, profiles_equal
from .profile_moves import ProfileMove, apply_profile_move, detect_moves


@dataclass(frozen=True)
class ReconstructionResult:
    network: Network
    sequence: tuple[ProfileMove, ...]
    verified: bool


def replay_moves(moves: Sequence[ProfileMove], final_label: str) -> Network:
    """Grow the recorded moves back, last move first, from a single vertex."""
    net = single_vertex_network(final_label)
    for mv in reversed(list(moves)):
        if mv.kind is MoveKind.REDUCE:
            net = grow_cherry(net, mv.a, mv.b)
        elif mv.kind is MoveKind.CUT_SUPPRESSED:
            net = grow_reticulated_cherry(net, mv.a, mv.b)
        else:
            net = grow_reticulation_arc(net, mv.a, mv.b)
    return net


def _candidates(table: ProfileTable) -> list[ProfileMove]:
    """Branching choices at one search node.

    With strict candidates present, the table behaves like the profile of a
    reducible stack-free network; there any available pair leads to a complete
    sequence, so it suffices to branch over the cut variants of the first pair
    alone.  Without strict candidates the table is out of regime and every
    row-supported move is tried.
    """
    strict = detect_moves(table, strict=True)
    if strict:
        pair = (strict[0].a, strict[0].b)
        return [m for m in strict if (m.a, m.b) == pair]
    return detect_moves(table, strict=False)


def _search(table: ProfileTable, reference: ProfileTable, moves: list[ProfileMove],
            results: list[ReconstructionResult], *, first_only: bool,
            budget: list[int]) -> bool:
    """DFS; returns True when enough verified solutions were collected.

    No state memoisation: whether a terminal verifies depends on the whole
    move list, not just the table reached, so remembering "failed" tables
    would wrongly prune paths that arrive at them with a different history.
    """
    if budget[0] <= 0:
        raise SearchExhaustedError("search budget exhausted before a verified terminal")
    budget[0] -= 1

    if len(table.labels) == 1 and table.all_blank():
        try:
            net = replay_moves(moves, table.labels[0])
        except (NotAReticulationParentError, InvalidNetworkError):
            return False
        if profiles_equal(ancestral_profile(net), reference):
            results.append(ReconstructionResult(net, tuple(moves), True))
            return first_only
        return False

    for mv in _candidates(table):
        try:
            nxt = apply_profile_move(table, mv)
        except NegativeEntryError:
            continue
        moves.append(mv)
        done = _search(nxt, reference, moves, results,
                       first_only=first_only, budget=budget)
        moves.pop()
        if done:
            return True
    return False


def _prepare(table: ProfileTable, labels: Optional[Sequence[str]]) -> ProfileTable:
    if labels is not None and set(labels) != set(table.labels):
        raise UnknownLabelError(
            f"label set {sorted(labels)} does not match table columns {sorted(table.labels)}")
    return table


def reconstruct(table: ProfileTable, labels: Optional[Sequence[str]] = None,
                max_nodes: int = 500_000) -> ReconstructionResult:
    """First verified network realising the table.

    Raises SearchExhaustedError when no move sequence terminates with a
    matching profile; VerificationFailedError cannot occur on valid inputs and
    signals an internal inconsistency if the replay itself misbehaves.
    """
    table = _prepare(table, labels)
    results: list[ReconstructionResult] = []
    _search(table, table, [], results, first_only=True, budget=[max_nodes])
    if not results:
        raise SearchExhaustedError(
            "no cherry sequence realises this profile as a stack-free orchard network")
    if not results[0].verified:
        raise VerificationFailedError("unverified result escaped the search")
    return results[0]


def reconstruct_all(table: ProfileTable, labels: Optional[Sequence[str]] = None,
                    max_nodes: int = 500_000) -> list[ReconstructionResult]:
    """Every verified terminal of the full search tree (small inputs only).

    Used to confirm uniqueness on in-regime profiles and to exhibit the
    non-uniqueness of stacked ones.
    """
    table = _prepare(table, labels)
    results: list[ReconstructionResult] = []
    _search(table, table, [], results, first_only=False, budget=[max_nodes])
    return results


@dataclass(frozen=True)
class IdAgreement:
    """Outcome of comparing the collapsed forms of two orchard networks."""

    holds: bool
    vacuous: bool = False

    def __bool__(self):
        return self.holds


def check_id_agreement(net1: Network, net2: Network) -> IdAgreement:
    """Equal profiles must force isomorphic stack identifications.

    Both inputs must be orchard.  When the profiles differ the implication is
    vacuous and the check passes with the `vacuous` marker set.
    """
    for net in (net1, net2):
        ok, _ = is_orchard(net)
        if not ok:
            raise NotOrchardError("identification agreement is only claimed for orchard networks")
    if not profiles_equal(ancestral_profile(net1), ancestral_profile(net2)):
        return IdAgreement(holds=True, vacuous=True)
    id1, id2 = stack_identification(net1), stack_identification(net2)
    return IdAgreement(holds=is_isomorphic(id1.to_network(), id2.to_network()))
