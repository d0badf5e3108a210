"""Exception hierarchy shared by the ordinal kernel, the rank engine and the parsers."""

from __future__ import annotations


class TdlcRankError(Exception):
    """Base class for every error raised by this package."""


class OrdinalError(TdlcRankError, ValueError):
    """Invalid input to an ordinal operation (e.g. a negative coefficient)."""


class OrdinalDomainError(OrdinalError):
    """A partial operation was applied outside its domain.

    Raised for the predecessor of ``0`` or of a limit ordinal and for the
    leading exponent of ``0``.
    """


class OrdinalOverflowError(TdlcRankError, OverflowError):
    """The result would exceed the representation bounds of the kernel."""


class IllFormedError(TdlcRankError, ValueError):
    """A group expression violates the structural preconditions of evaluation."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "ill-formed expression")


class HypothesisError(TdlcRankError, ValueError):
    """A rule was requested for an expression that lacks one of its hypotheses."""


class NoWitnessChainError(TdlcRankError):
    """No constructive witnessing chain is available for the expression."""


class ParseError(TdlcRankError, ValueError):
    """Malformed text passed to one of the parsers.

    ``offset`` is a byte offset into the UTF-8 encoded input; ``expected``
    and ``found`` are short human-readable summaries.
    """

    def __init__(self, offset: int, expected: str, found: str, message: str | None = None):
        self.offset = offset
        self.expected = expected
        self.found = found
        text = message or f"expected {expected}, found {found}"
        super().__init__(f"at offset {offset}: {text}")
