"""Exception types raised by ire.

Every error caused by bad input derives from IREError (itself a ValueError),
so callers can catch the whole family at once. InternalInvariantViolation is
different: it means a computed identity failed and points at a bug.
"""

from typing import Optional


class IREError(ValueError):
    """Base class for input and validation errors."""


class DuplicateLabel(IREError):
    """An alphabet lists the same label twice."""


class UnknownLabel(IREError):
    """A label or extended label is not part of the alphabet."""


class NotABijection(IREError):
    """A scheme mapping misses an element or repeats an image."""


class ParseError(IREError):
    """Text input does not match the expected grammar."""

    def __init__(self, message: str, position: Optional[int] = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class NotAnIET(IREError):
    """A scheme has a cycle that is not one b-arc followed by one e-arc."""


class MalformedTwoRow(IREError):
    """Two-row notation with an empty row or a label used the wrong number of times."""


class NotInEndpointSpace(IREError):
    """An endpoint vector violates the endpoint relation of its scheme."""

    def __init__(self, message: str, side: str = "primal"):
        super().__init__(f"{message} [{side} side]")
        self.side = side


class NotInLengthSpace(IREError):
    """A length vector does not close up around some cycle."""


class MissingAnchor(IREError):
    """A cycle received no anchor when restoring endpoints."""


class DuplicateAnchor(IREError):
    """A cycle received more than one anchor when restoring endpoints."""


class StepNotApplicable(IREError):
    """The turn condition of an induction step does not hold."""


class NotInImage(IREError):
    """A scheme is outside the image of the step being inverted."""


class TieDetected(IREError):
    """Two competing lengths are equal, so the induction step is undefined."""

    def __init__(self, alpha: str, beta: str, message: Optional[str] = None):
        super().__init__(message or f"tie between {alpha} and {beta}: equal lengths")
        self.alpha = alpha
        self.beta = beta


class DegenerateCycle(IREError):
    """A cycle consists only of beginning or only of ending elements."""


class NotPositive(IREError):
    """Real data has a non-positive length where positivity is required."""

    def __init__(self, message: str, side: str = "primal"):
        super().__init__(f"{message} [{side} side]")
        self.side = side


class ExplicitBranchOutOfRange(IREError):
    """An explicit branch coordinate lies outside its reduction segment."""


class PointOutsideInterval(IREError):
    """A point does not belong to the beginning interval it names."""


class InternalInvariantViolation(RuntimeError):
    """A computed identity that must always hold has failed."""
