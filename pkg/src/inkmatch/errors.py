"""Exception types shared across the package."""


class InkmatchError(Exception):
    """Base class for all inkmatch errors."""


class FormatError(InkmatchError):
    """Input bytes could not be decoded as a supported image."""


class ParameterError(InkmatchError):
    """A parameter violates an operation's preconditions."""


class NoRegionsError(InkmatchError):
    """A keyframe produced no matchable (non-background) regions."""


class PinConflictError(InkmatchError):
    """A pin set references a region id more than once or names an invalid id."""


class MetricUndefinedError(InkmatchError):
    """An accuracy metric was requested over an empty slot set."""


class RestoreError(InkmatchError):
    """A persisted session could not be restored; the message names the file."""
