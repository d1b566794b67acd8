"""Exception types shared across the package.

Every error raised on bad input derives from BmLabError so callers (and the
command line driver) can distinguish data problems from genuine bugs.
"""


class BmLabError(Exception):
    """Base class for all input and state errors raised by this package."""


class DuplicatePoint(BmLabError):
    """Two sequence points coincide after sorting."""


class NotSeparated(BmLabError):
    """The sequence violates a caller-required minimum gap."""


class EmptyRange(BmLabError):
    """A generator index range contains no indices."""


class SinglePoint(BmLabError):
    """An operation needs at least two points to define a slope."""


class OutOfWindow(BmLabError):
    """A query interval leaves the data window of a sequence."""


class WindowTooSmall(BmLabError):
    """The data window cannot support the requested density decision."""


class BadGap(BmLabError):
    """A gap length outside the supported open interval (0, 2*pi)."""


class SizeGuard(BmLabError):
    """A dense matrix operation was refused because the size cap was exceeded."""


class NumericalBreakdown(BmLabError):
    """A dense eigensolver failed to converge; partial results attached."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class BadDataFile(BmLabError):
    """An input data file exists but cannot be parsed."""


class EmptyWindow(BmLabError):
    """A requested window contains no points of the target set."""


class UnknownGenerator(BmLabError):
    """A sequence spec string does not match the generator grammar."""
