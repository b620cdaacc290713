"""Command-line surface.

Exit codes: 0 success, 1 negative decision (not isomorphic, not orchard,
profile not realisable), 2 input error, 3 internal verification failure.
Identical invocations, including seeds, print identical bytes.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .cherries import MoveKind, is_orchard
from .errors import (InfeasibleParamsError, InvalidNetworkError, OrchardNetsError,
                     ParseError, SearchExhaustedError, UnknownClaimError,
                     VerificationFailedError)
from .formats import parse_edge_list, parse_enewick, render_dot, render_edge_list
from .generators import GenParams, random_orchard
from .isomorphism import isomorphism_witness
from .network import (is_stack_free, is_time_consistent, is_tree_child,
                      is_tree_sibling, stack_identification)
from .profiles import (ProfileTable, ancestral_profile, clones,
                       maximal_clone_pairs)
from .reconstruct import reconstruct
from .verify import CLAIMS, verify

OK, NEGATIVE, INPUT_ERROR, INTERNAL_ERROR = 0, 1, 2, 3


def _looks_like_newick(path: str, text: str) -> bool:
    stripped = text.strip()
    return (path.endswith((".nwk", ".newick", ".enewick"))
            or stripped.startswith("(") or stripped.endswith(";"))


def _load_network(path: str, order: Optional[Sequence[str]] = None):
    with open(path, encoding="utf-8") as handle:
        text = handle.read()
    if _looks_like_newick(path, text):
        net = parse_enewick(text.strip())
        file_order = net.internal_vertices()
    else:
        net, file_order = parse_edge_list(text)
        if not file_order:
            file_order = net.internal_vertices()
    return net, tuple(order) if order else file_order


def _cmd_validate(args) -> int:
    try:
        _load_network(args.file)
    except InvalidNetworkError as err:
        print("invalid:", err.report)
        return NEGATIVE
    except ParseError as err:
        print("parse error:", err)
        return INPUT_ERROR
    print("valid")
    return OK


def _cmd_profile(args) -> int:
    net, order = _load_network(args.file, args.order.split() if args.order else None)
    table = ancestral_profile(net, order)
    text = table.to_tsv()
    if args.tsv:
        with open(args.tsv, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return OK


def _cmd_classify(args) -> int:
    net, _ = _load_network(args.file)
    orchard, _ = is_orchard(net)
    for name, value in [("tree-child", is_tree_child(net)),
                        ("tree-sibling", is_tree_sibling(net)),
                        ("time-consistent", is_time_consistent(net)),
                        ("stack-free", is_stack_free(net)),
                        ("orchard", orchard)]:
        print(f"{name}: {'yes' if value else 'no'}")
    return OK


def _cmd_sequence(args) -> int:
    net, _ = _load_network(args.file)
    complete, seq = is_orchard(net)
    for mv in seq:
        if mv.kind is MoveKind.REDUCE:
            print(f"reduce {mv.a} {mv.b}")
        else:
            suffix = "suppressed" if mv.kind is MoveKind.CUT_SUPPRESSED else "retained"
            print(f"cut {mv.a} {mv.b} (reticulation parent {suffix})")
    if complete:
        print("complete")
        return OK
    print(f"stuck after {len(seq)} moves: no cherry or reticulated cherry remains")
    return NEGATIVE


def _cmd_stack_id(args) -> int:
    net, _ = _load_network(args.file)
    identified = stack_identification(net)
    lines = []
    if not identified.proper:
        lines.append("# parallel arcs present; not a phylogenetic network")
    for u, v in identified.arcs:
        lines.append(f"{u} -> {v}")
    if not identified.arcs:
        lines.extend(sorted(identified.vertices))
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return OK


def _cmd_clones(args) -> int:
    net, order = _load_network(args.file)
    table = ancestral_profile(net, order)
    maximal = set(maximal_clone_pairs(table))
    pairs = clones(table)
    for i, j in pairs:
        marker = " (maximal)" if (i, j) in maximal else ""
        print(f"{table.order[i]} {table.order[j]}{marker}")
    if not pairs:
        print("no clones")
    return OK


def _cmd_iso(args) -> int:
    net1, _ = _load_network(args.file1)
    net2, _ = _load_network(args.file2)
    witness = isomorphism_witness(net1, net2)
    if witness is None:
        print("not isomorphic")
        return NEGATIVE
    print("isomorphic")
    for v in sorted(witness):
        print(f"{v} -> {witness[v]}")
    return OK


def _cmd_reconstruct(args) -> int:
    with open(args.profile, encoding="utf-8") as handle:
        table = ProfileTable.from_tsv(handle.read())
    labels = args.labels.split(",") if args.labels else None
    try:
        result = reconstruct(table, labels)
    except SearchExhaustedError as err:
        print(f"not realisable: {err}")
        return NEGATIVE
    except VerificationFailedError as err:
        print(f"internal verification failure: {err}")
        return INTERNAL_ERROR
    sys.stdout.write(render_edge_list(result.network))
    return OK


def _cmd_generate(args) -> int:
    params = GenParams(leaf_count=args.leaves, reticulation_count=args.rets,
                       max_in_degree=args.max_in,
                       allow_stacks=not args.stack_free,
                       force_stack_free=args.stack_free, seed=args.seed)
    sys.stdout.write(render_edge_list(random_orchard(params)))
    return OK


def _cmd_verify(args) -> int:
    report = verify(args.claim, trials=args.trials, seed=args.seed)
    print(report)
    return OK if report.passed else INTERNAL_ERROR


def _cmd_dot(args) -> int:
    net, _ = _load_network(args.file)
    sys.stdout.write(render_dot(net))
    return OK


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orchardnets",
        description="Phylogenetic networks: profiles, cherry reductions, reconstruction.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a network file against the rules")
    p.add_argument("file")
    p.set_defaults(run=_cmd_validate)

    p = sub.add_parser("profile", help="print the ancestral profile as TSV")
    p.add_argument("file")
    p.add_argument("--order", help="space-separated internal vertex ordering")
    p.add_argument("--tsv", help="write to this file instead of stdout")
    p.set_defaults(run=_cmd_profile)

    p = sub.add_parser("classify", help="report the structural class predicates")
    p.add_argument("file")
    p.set_defaults(run=_cmd_classify)

    p = sub.add_parser("sequence", help="print a maximal cherry-reduction sequence")
    p.add_argument("file")
    p.set_defaults(run=_cmd_sequence)

    p = sub.add_parser("stack-id", help="collapse sinks and print the result")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(run=_cmd_stack_id)

    p = sub.add_parser("clones", help="list clone pairs of internal vertices")
    p.add_argument("file")
    p.set_defaults(run=_cmd_clones)

    p = sub.add_parser("iso", help="decide leaf-label-fixing isomorphism")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(run=_cmd_iso)

    p = sub.add_parser("reconstruct", help="rebuild a network from a profile TSV")
    p.add_argument("profile")
    p.add_argument("--labels", help="comma-separated leaf labels (checked against the header)")
    p.set_defaults(run=_cmd_reconstruct)

    p = sub.add_parser("generate", help="emit a seeded random orchard network")
    p.add_argument("--leaves", type=int, required=True)
    p.add_argument("--rets", type=int, default=0)
    p.add_argument("--stack-free", action="store_true")
    p.add_argument("--max-in", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=_cmd_generate)

    p = sub.add_parser("verify", help="run a registered claim verifier")
    p.add_argument("claim", choices=sorted(CLAIMS))
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(run=_cmd_verify)

    p = sub.add_parser("dot", help="emit annotated DOT")
    p.add_argument("file")
    p.set_defaults(run=_cmd_dot)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exit_:
        return INPUT_ERROR if exit_.code not in (0, None) else OK
    try:
        return args.run(args)
    except (ParseError, InvalidNetworkError, InfeasibleParamsError,
            UnknownClaimError, FileNotFoundError) as err:
        print(f"error: {err}", file=sys.stderr)
        return INPUT_ERROR
    except VerificationFailedError as err:
        print(f"internal verification failure: {err}", file=sys.stderr)
        return INTERNAL_ERROR
    except OrchardNetsError as err:
        print(f"error: {err}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
