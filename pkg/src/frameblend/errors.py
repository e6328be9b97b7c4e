"""Exception types shared across the package."""


class FrameblendError(Exception):
    """Base class for all frameblend errors."""


class InvalidParameterError(FrameblendError, ValueError):
    """A parameter is outside its documented domain."""


class EmptyInputError(InvalidParameterError):
    """An input that must contain at least one element is empty."""


class DegenerateWeightsError(InvalidParameterError):
    """A weight vector sums to zero and cannot be normalized."""


class ShapeError(FrameblendError, ValueError):
    """Frame dimensions are inconsistent or do not match their declaration."""


class DecodeError(FrameblendError, ValueError):
    """A file exists but cannot be decoded as the declared format."""


class OutputCollisionError(FrameblendError, ValueError):
    """Two outputs would be written to the same path."""


class DegenerateClassError(FrameblendError, ValueError):
    """A score set lacks live or spoof records, so rates are undefined."""


class ScoreFileError(FrameblendError, ValueError):
    """A score CSV is malformed; the message carries the line number."""


class ManifestError(FrameblendError, ValueError):
    """A dataset manifest is malformed or violates its invariants."""


class InvalidPlanError(FrameblendError, ValueError):
    """An evaluation plan request is inconsistent."""


class CoverageError(FrameblendError, ValueError):
    """Score records do not cover the manifest entries they must score."""

    def __init__(self, message: str, missing_ids: list[str] | None = None):
        super().__init__(message)
        self.missing_ids = list(missing_ids or [])
