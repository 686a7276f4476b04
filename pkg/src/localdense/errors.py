"""Exception types shared across the package.

ZeroVector is control flow rather than failure: the growth process raises it
when truncation empties the working vector, and callers stop early with the
best candidate seen so far.
"""


class LocalDenseError(Exception):
    """Base class for all errors raised by this package."""


class NegativeWeight(LocalDenseError):
    """An edge weight was negative or not a finite number."""


class EmptyGraph(LocalDenseError):
    """A graph construction produced no edges."""


class SideViolation(LocalDenseError):
    """A vertex set referenced indices outside the claimed side."""


class EmptySide(LocalDenseError):
    """A density computation received an empty vertex set."""


class NegativeEntry(LocalDenseError):
    """A sparse vector entry was negative or not a number."""


class DomainError(LocalDenseError):
    """A numeric argument fell outside its documented domain."""


class ZeroVector(LocalDenseError):
    """Truncation removed every entry; the growth process should stop.

    Carries the level sets and norm of the rounded vector that existed just
    before truncation, so the caller can still evaluate that step's
    candidates.
    """

    def __init__(self, message, post_levels=None, pre_norm=0.0):
        super().__init__(message)
        self.post_levels = post_levels
        self.pre_norm = pre_norm


class NoCandidate(LocalDenseError):
    """No candidate subgraph could be evaluated (for example, an isolated seed)."""


class UnknownVertex(LocalDenseError):
    """A seed or planted vertex id is not present in the graph."""


class TooLarge(LocalDenseError):
    """The exact oracle was asked to enumerate a side above its cap."""


class PreconditionFailed(LocalDenseError):
    """An analysis routine's input precondition did not hold."""


class ParseError(LocalDenseError):
    """An edge-list line could not be parsed.

    Attributes:
        line: 1-based line number of the offending line.
        reason: short description of what was wrong.
    """

    def __init__(self, line, reason):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason
