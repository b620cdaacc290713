"""Exception types raised across the package.

Every error names its witnesses (vertices, arcs, labels or rows) so that a
failing call can be reproduced without re-running it under a debugger.
"""

from __future__ import annotations


class OrchardNetsError(Exception):
    """Base class for all errors raised by this package."""


class InvalidNetworkError(OrchardNetsError):
    """Construction was attempted from data violating the network rules.

    Carries the full validation report; see `network.validate`.
    """

    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


class UnknownVertexError(OrchardNetsError, KeyError):
    pass


class UnknownLabelError(OrchardNetsError, KeyError):
    pass


class OrderingMismatchError(OrchardNetsError):
    """A vertex ordering does not enumerate the non-leaf vertices exactly."""


class NotACherryError(OrchardNetsError):
    pass


class NotAReticulatedCherryError(OrchardNetsError):
    pass


class NotAStackArcError(OrchardNetsError):
    pass


class ParallelArcsError(OrchardNetsError):
    """Contracting a stack arc produced parallel arcs (non-orchard input)."""


class FreshLabelClashError(OrchardNetsError):
    pass


class NotAReticulationParentError(OrchardNetsError):
    pass


class NoWitnessRowError(OrchardNetsError):
    """No profile row satisfies the side condition required by the move."""


class NegativeEntryError(OrchardNetsError):
    """A column subtraction went negative: the move was not really available."""


class CloneConditionError(OrchardNetsError):
    """Row identification attempted without the required clone rows."""


class NotOrchardError(OrchardNetsError):
    pass


class SearchExhaustedError(OrchardNetsError):
    """No move sequence reduced the profile to a terminal state."""


class VerificationFailedError(OrchardNetsError):
    """Internal inconsistency: a rebuilt network failed its profile check."""


class InfeasibleParamsError(OrchardNetsError):
    pass


class BoundsTooLargeError(OrchardNetsError):
    pass


class UnknownClaimError(OrchardNetsError):
    pass


class ParseError(OrchardNetsError):
    """Syntax error in an input document, with position information."""

    def __init__(self, message, line=None, column=None, expected=None):
        self.line = line
        self.column = column
        self.expected = expected
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        hint = f"; expected {expected}" if expected else ""
        super().__init__(f"{message}{where}{hint}")


class InconsistentHybridTagError(ParseError):
    pass


class NonBinaryTreeVertexError(ParseError):
    pass
