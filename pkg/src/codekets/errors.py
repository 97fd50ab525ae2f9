"""Exception hierarchy shared by all codekets modules."""

from __future__ import annotations


class CodeketError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgumentError(CodeketError, ValueError):
    """An argument has the wrong length, alphabet or shape."""


class ResourceLimitError(CodeketError):
    """A requested enumeration or dense state exceeds its configured cap."""


class RankDeficiencyError(CodeketError, ValueError):
    """Generator rows are not linearly independent over GF(2)."""


class PreconditionError(CodeketError, ValueError):
    """An operation was called outside the hypothesis it is derived under."""


class ParseError(CodeketError, ValueError):
    """Text input could not be parsed; the message carries the position."""


class VerificationError(CodeketError, AssertionError):
    """A proven identity failed to hold, which indicates an implementation bug."""
