"""Exception types raised by scoresig.

Every error derives from :class:`ScoreSigError`, which is also a
``ValueError`` so callers that only care about bad input can catch that.
"""


class ScoreSigError(ValueError):
    """Base class for all scoresig errors."""


class EmptySample(ScoreSigError):
    pass


class NonFiniteScore(ScoreSigError):
    pass


class DomainError(ScoreSigError):
    """An argument lies outside the domain of the operation."""


class DuplicateName(ScoreSigError):
    pass


class ZeroVariance(ScoreSigError):
    pass


class DegenerateRanks(ScoreSigError):
    pass


class PairLengthMismatch(ScoreSigError):
    pass


class AllZeroDifferences(ScoreSigError):
    pass


class ConfigError(ScoreSigError):
    pass


class ParseError(ScoreSigError):
    """Malformed score input. ``line`` and ``column`` are 1-based when known."""

    def __init__(self, message, line=None, column=None):
        location = []
        if line is not None:
            location.append(f"line {line}")
        if column is not None:
            location.append(f"column {column}")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)
        self.line = line
        self.column = column


class DuplicateGroup(ParseError):
    pass
