"""Ancestral profiles: per-leaf path-count tuples over the internal vertices.

The table entry for (internal vertex v, leaf label x) is the number of directed
paths from v to the leaf carrying x.  Rows blanked by the table-level moves in
`profile_moves` hold a placeholder, which is distinct from a zero count.

Counts are exact Python integers, so they cannot overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (NotOrchardError, OrderingMismatchError, ParseError,
                     UnknownLabelError)
from .network import Network, is_reticulation, sinks

PLACEHOLDER = None


@dataclass(frozen=True)
class ProfileTable:
    """Rows indexed by an ordering of the non-leaf vertices, columns by labels.

    A row is either fully numeric or fully placeholder; the moves that blank
    rows always blank whole rows.
    """

    labels: tuple[str, ...]
    order: tuple[str, ...]
    rows: tuple[tuple[Optional[int], ...], ...]

    def __post_init__(self):
        if len(self.rows) != len(self.order):
            raise ValueError("one row per ordered vertex required")
        for name, row in zip(self.order, self.rows):
            if len(row) != len(self.labels):
                raise ValueError(f"row {name} has {len(row)} entries, need {len(self.labels)}")
            blanks = sum(1 for e in row if e is PLACEHOLDER)
            if blanks not in (0, len(row)):
                raise ValueError(f"row {name} mixes counts and placeholders")
            if any(e is not PLACEHOLDER and (not isinstance(e, int) or e < 0) for e in row):
                raise ValueError(f"row {name} has a negative or non-integer entry")

    # -- access ----------------------------------------------------------

    def column_index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabelError(label) from None

    def entry(self, row: int, label: str) -> Optional[int]:
        return self.rows[row][self.column_index(label)]

    def is_blank(self, row: int) -> bool:
        return self.rows[row][0] is PLACEHOLDER if self.labels else True

    def live_rows(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.rows)) if not self.is_blank(i))

    def all_blank(self) -> bool:
        return not self.live_rows()

    def with_rows(self, rows: Iterable[Sequence[Optional[int]]],
                  labels: Optional[tuple[str, ...]] = None) -> "ProfileTable":
        return ProfileTable(labels if labels is not None else self.labels,
                            self.order, tuple(tuple(r) for r in rows))

    def drop_blank_rows(self) -> "ProfileTable":
        live = self.live_rows()
        return ProfileTable(self.labels, tuple(self.order[i] for i in live),
                            tuple(self.rows[i] for i in live))

    # -- serialisation -----------------------------------------------------

    def to_tsv(self) -> str:
        lines = ["\t".join(("vertex",) + self.labels)]
        for name, row in zip(self.order, self.rows):
            lines.append("\t".join([name] + ["-" if e is PLACEHOLDER else str(e) for e in row]))
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_tsv(text: str) -> "ProfileTable":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ParseError("empty profile document", line=1)
        header = lines[0].split("\t")
        if header[:1] != ["vertex"]:
            raise ParseError("header must start with 'vertex'", line=1, expected="vertex\\t<label>...")
        labels = tuple(header[1:])
        if not labels:
            raise ParseError("no label columns", line=1)
        order: list[str] = []
        rows: list[tuple[Optional[int], ...]] = []
        for nr, line in enumerate(lines[1:], start=2):
            parts = line.split("\t")
            if len(parts) != len(labels) + 1:
                raise ParseError(f"{len(parts)} fields, need {len(labels) + 1}", line=nr)
            order.append(parts[0])
            row: list[Optional[int]] = []
            for field in parts[1:]:
                if field == "-":
                    row.append(PLACEHOLDER)
                elif field.isdigit():
                    row.append(int(field))
                else:
                    raise ParseError(f"bad count {field!r}", line=nr, expected="digits or -")
            rows.append(tuple(row))
        return ProfileTable(labels, tuple(order), tuple(rows))


# -- path counting ---------------------------------------------------------


def _counts_to_leaves(net: Network) -> dict[str, dict[str, int]]:
    """counts[v][label] via dynamic programming over reverse topological order."""
    counts: dict[str, dict[str, int]] = {}
    for v in reversed(net.topological_order()):
        if net.is_leaf(v):
            counts[v] = {net.label_of(v): 1}
            continue
        acc: dict[str, int] = {}
        for c in net.children(v):
            for x, k in counts[c].items():
                acc[x] = acc.get(x, 0) + k
        counts[v] = acc
    return counts


def count_paths(net: Network, v: str, label: str) -> int:
    """Number of directed paths from v to the leaf labelled `label`."""
    net._check(v)
    if label not in net.labels:
        raise UnknownLabelError(label)
    return _counts_to_leaves(net)[v].get(label, 0)


def default_ordering(net: Network) -> tuple[str, ...]:
    return net.internal_vertices()


def ancestral_profile(net: Network, order: Optional[Sequence[str]] = None) -> ProfileTable:
    """The profile table of a network under the given internal-vertex ordering.

    The ordering defaults to lexicographic vertex names so repeated runs are
    byte-for-byte reproducible.
    """
    internal = set(net.internal_vertices())
    if order is None:
        order = net.internal_vertices()
    order = tuple(order)
    if set(order) != internal or len(order) != len(internal):
        raise OrderingMismatchError(
            f"ordering must enumerate the {len(internal)} non-leaf vertices exactly")
    labels = tuple(sorted(net.labels))
    counts = _counts_to_leaves(net)
    rows = tuple(tuple(counts[v].get(x, 0) for x in labels) for v in order)
    return ProfileTable(labels, order, rows)


def support(table: ProfileTable, label: str) -> frozenset[int]:
    """Indices of live rows with a positive entry in the label's column."""
    col = table.column_index(label)
    return frozenset(i for i in table.live_rows() if table.rows[i][col] >= 1)


def profiles_equal(table1: ProfileTable, table2: ProfileTable) -> bool:
    """Equality up to reordering of rows: same label set, same multiset of
    live rows read in a common column order."""
    if set(table1.labels) != set(table2.labels):
        return False
    common = tuple(sorted(table1.labels))

    def key_rows(t: ProfileTable):
        perm = [t.column_index(x) for x in common]
        return sorted(tuple(t.rows[i][j] for j in perm) for i in t.live_rows())

    return key_rows(table1) == key_rows(table2)


def clones(table: ProfileTable) -> tuple[tuple[int, int], ...]:
    """Unordered index pairs of identical live rows."""
    live = table.live_rows()
    out = []
    for a in range(len(live)):
        for b in range(a + 1, len(live)):
            i, j = live[a], live[b]
            if table.rows[i] == table.rows[j]:
                out.append((i, j))
    return tuple(out)


def maximal_clone_pairs(table: ProfileTable) -> tuple[tuple[int, int], ...]:
    """Clone pairs with no third row identical to both.

    Row equality is transitive, so these are exactly the pairs coming from
    duplicate-row groups of size two.
    """
    groups: dict[tuple, list[int]] = {}
    for i in table.live_rows():
        groups.setdefault(table.rows[i], []).append(i)
    return tuple((g[0], g[1]) for g in groups.values() if len(g) == 2)


def check_clone_characterization(net: Network) -> tuple[bool, Optional[tuple[str, str]]]:
    """Compare profile-level clone pairs against the structural description.

    Two internal vertices are expected to be clones exactly when they share a
    sink, or when exactly one is a reticulation and some reticulation in its
    sink is a parent of the other.  Requires an orchard input; returns the
    first mismatching pair as a witness on failure.
    """
    from .cherries import is_orchard  # local import to avoid a cycle

    ok, _ = is_orchard(net)
    if not ok:
        raise NotOrchardError("clone characterization requires an orchard network")

    table = ancestral_profile(net)
    clone_set = {(table.order[i], table.order[j]) for i, j in clones(table)}
    partition = sinks(net)

    def structural(u: str, v: str) -> bool:
        u_ret, v_ret = is_reticulation(net, u), is_reticulation(net, v)
        if u_ret and v_ret and partition.same_class(u, v):
            return True
        if u_ret == v_ret:
            return False
        ret, other = (u, v) if u_ret else (v, u)
        return any((w, other) in net.arcs for w in partition.class_of(ret))

    order = table.order
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            u, v = order[a], order[b]
            if ((u, v) in clone_set) != structural(u, v):
                return False, (u, v)
    return True, None
