"""Table-level counterparts of the cherry moves.

Each graph move has a mirror acting directly on a profile table: reducing a
cherry blanks the witness row and drops a column, cutting blanks one or two
rows and subtracts the companion column, and identifying blanks one row of a
clone group.  Applying the mirror move to a network's profile gives, up to
blanked rows, the profile of the network after the graph move; that is what
makes reconstruction from a bare table possible.

Blanked rows stay in the table as placeholders so row indices remain stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cherries import MoveKind
from .errors import (CloneConditionError, NegativeEntryError, NoWitnessRowError,
                     UnknownLabelError)
from .profiles import PLACEHOLDER, ProfileTable, support


@dataclass(frozen=True)
class ProfileMove:
    """A recorded table move: leaves (a, b) plus the consumed row indices.

    `row` is the witness row blanked by every kind; `unit_row` is additionally
    blanked by the suppressing cut and absent otherwise.
    """

    kind: MoveKind
    a: str
    b: str
    row: int
    unit_row: Optional[int] = None

    def __post_init__(self):
        if (self.kind is MoveKind.CUT_SUPPRESSED) != (self.unit_row is not None):
            raise ValueError("unit_row is recorded exactly for the suppressing cut")


def _blank(table: ProfileTable, rows: set[int]) -> list[list]:
    width = len(table.labels)
    return [[PLACEHOLDER] * width if i in rows else list(r)
            for i, r in enumerate(table.rows)]


def shared_unit_row(table: ProfileTable, a: str, b: str) -> Optional[int]:
    """First live row with entry 1 at both a and b and 0 elsewhere."""
    ca, cb = table.column_index(a), table.column_index(b)
    for i in table.live_rows():
        row = table.rows[i]
        if row[ca] == 1 and row[cb] == 1 and all(
                e == 0 for j, e in enumerate(row) if j not in (ca, cb)):
            return i
    return None


def unit_row(table: ProfileTable, b: str) -> Optional[int]:
    """First live row with entry 1 at b and 0 elsewhere."""
    cb = table.column_index(b)
    for i in table.live_rows():
        row = table.rows[i]
        if row[cb] == 1 and all(e == 0 for j, e in enumerate(row) if j != cb):
            return i
    return None


def _validated_row(table: ProfileTable, a: str, b: str, row: Optional[int]) -> int:
    if row is None:
        row = shared_unit_row(table, a, b)
        if row is None:
            raise NoWitnessRowError(f"no row with unit entries at {a},{b} and zeros elsewhere")
        return row
    ca, cb = table.column_index(a), table.column_index(b)
    r = table.rows[row]
    if table.is_blank(row) or r[ca] != 1 or r[cb] != 1 or any(
            e != 0 for j, e in enumerate(r) if j not in (ca, cb)):
        raise NoWitnessRowError(f"row {row} is not a witness for ({a}, {b})")
    return row


def reduce_leaf(table: ProfileTable, a: str, b: str, row: Optional[int] = None) -> ProfileTable:
    """Blank the witness row and drop b's column (mirror of reducing the cherry)."""
    row = _validated_row(table, a, b, row)
    cb = table.column_index(b)
    rows = [[e for j, e in enumerate(r) if j != cb] for r in _blank(table, {row})]
    labels = tuple(x for x in table.labels if x != b)
    if not labels:
        raise UnknownLabelError("cannot drop the last column")
    return table.with_rows(rows, labels)


def _subtract(table: ProfileTable, a: str, b: str, blanked: set[int]) -> list[list]:
    ca, cb = table.column_index(a), table.column_index(b)
    rows = _blank(table, blanked)
    for i, r in enumerate(rows):
        if i in blanked or table.is_blank(i):
            continue
        r[cb] = r[cb] - r[ca]
        if r[cb] < 0:
            raise NegativeEntryError(
                f"entry for ({table.order[i]}, {b}) would go negative")
    return rows


def cut_suppressed(table: ProfileTable, a: str, b: str,
                   row: Optional[int] = None, unit: Optional[int] = None) -> ProfileTable:
    """Blank the witness row and a unit row for b, then subtract a's column
    from b's (mirror of the cut that removes b's reticulation parent)."""
    row = _validated_row(table, a, b, row)
    if unit is None:
        unit = unit_row(table, b)
        if unit is None:
            raise NoWitnessRowError(f"no unit row for {b}")
    else:
        cb = table.column_index(b)
        r = table.rows[unit]
        if table.is_blank(unit) or r[cb] != 1 or any(
                e != 0 for j, e in enumerate(r) if j != cb):
            raise NoWitnessRowError(f"row {unit} is not a unit row for {b}")
    return table.with_rows(_subtract(table, a, b, {row, unit}))


def cut_retained(table: ProfileTable, a: str, b: str, row: Optional[int] = None) -> ProfileTable:
    """Blank only the witness row, then subtract a's column from b's (mirror
    of the cut that keeps b's reticulation parent)."""
    row = _validated_row(table, a, b, row)
    return table.with_rows(_subtract(table, a, b, {row}))


def identify_row(table: ProfileTable, row: int, stack_partner: Optional[int] = None) -> ProfileTable:
    """Blank one row of a clone group (mirror of contracting a stack arc).

    Without an explicit partner the row must have at least two other live
    rows identical to it; with one, the caller asserts the corresponding arc
    and only pairwise equality is checked.
    """
    if table.is_blank(row):
        raise CloneConditionError(f"row {row} is already blank")
    if stack_partner is not None:
        if (stack_partner == row or table.is_blank(stack_partner)
                or table.rows[row] != table.rows[stack_partner]):
            raise CloneConditionError(f"rows {row} and {stack_partner} are not clones")
    else:
        twins = [i for i in table.live_rows() if i != row and table.rows[i] == table.rows[row]]
        if len(twins) < 2:
            raise CloneConditionError(f"row {row} has fewer than two clone rows")
    return table.with_rows(_blank(table, {row}))


def apply_profile_move(table: ProfileTable, move: ProfileMove) -> ProfileTable:
    if move.kind is MoveKind.REDUCE:
        return reduce_leaf(table, move.a, move.b, move.row)
    if move.kind is MoveKind.CUT_SUPPRESSED:
        return cut_suppressed(table, move.a, move.b, move.row, move.unit_row)
    return cut_retained(table, move.a, move.b, move.row)


# -- move detection ------------------------------------------------------------


def _cut_conditions(supports: dict, a: str, b: str) -> bool:
    labels = supports.keys()
    if not supports[a] < supports[b]:
        return False
    if any(supports[a] < supports[x] for x in labels if x != b):
        return False
    others = frozenset().union(*(supports[x] for x in labels if x != b))
    return len(supports[b] - others) == 1


def support_conditions(table: ProfileTable, a: str, b: str) -> bool:
    """The three support conditions marking (a, b) as a cuttable pair.

    (i)   support(a) is properly contained in support(b);
    (ii)  no label other than b has a support properly containing support(a);
    (iii) exactly one row of support(b) lies outside every other support.

    On the profile of a network these hold exactly when (a, b) is a
    reticulated cherry, b is the reticulation leaf, and no parent of b's
    reticulation is itself a reticulation.
    """
    return _cut_conditions({x: support(table, x) for x in table.labels}, a, b)


def detect_moves(table: ProfileTable, strict: bool = True) -> list[ProfileMove]:
    """Candidate moves read off a profile table.

    A cherry candidate (a, b) needs equal supports and a witness row.  A
    reticulated-cherry candidate needs, in strict mode, the support conditions
    that characterise a cut with no stacked reticulation above b:

      (i)   support(a) properly inside support(b),
      (ii)  no third label whose support properly contains support(a),
      (iii) exactly one row of support(b) outside every other support,

    plus witness and unit rows.  Non-strict mode keeps only the row conditions
    and exists for best-effort searches on out-of-regime tables; both cut
    kinds are emitted and a later whole-profile check settles which was real.
    """
    labels = table.labels
    if len(labels) < 2:
        return []
    supports = {x: support(table, x) for x in labels}
    out: list[ProfileMove] = []
    for a in labels:
        for b in labels:
            if a == b:
                continue
            row = shared_unit_row(table, a, b)
            if row is None:
                continue
            if supports[a] == supports[b] and a < b:
                out.append(ProfileMove(MoveKind.REDUCE, a, b, row))
                out.append(ProfileMove(MoveKind.REDUCE, b, a, row))
            unit = unit_row(table, b)
            if unit is None or unit == row:
                continue
            if strict and not _cut_conditions(supports, a, b):
                continue
            out.append(ProfileMove(MoveKind.CUT_SUPPRESSED, a, b, row, unit))
            out.append(ProfileMove(MoveKind.CUT_RETAINED, a, b, row))
    rank = {MoveKind.REDUCE: 0, MoveKind.CUT_SUPPRESSED: 1, MoveKind.CUT_RETAINED: 2}
    return sorted(set(out), key=lambda m: (rank[m.kind], m.a, m.b))
