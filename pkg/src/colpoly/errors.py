"""Exception hierarchy shared by all modules.

Each class carries a stable CLI exit code.
"""


class ColpolyError(Exception):
    exit_code = 1


class ParseError(ColpolyError, ValueError):
    """Malformed input text (braid words, PD codes, descriptors, fixtures)."""

    exit_code = 2

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class HypothesisError(ColpolyError):
    """An operation was called outside the hypotheses it needs
    (non-abelian longitude group, non-colouring group, multi-component closure, ...)."""

    exit_code = 3


class SearchLimitExceeded(ColpolyError):
    exit_code = 4


class VerificationFailure(ColpolyError):
    """A checked mathematical identity failed. This indicates a bug."""

    exit_code = 5
