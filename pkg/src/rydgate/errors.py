"""Exception types shared across the package."""


class RydgateError(Exception):
    """Base class for package errors."""


class SpeciesDataError(RydgateError):
    """Species or config file is missing, malformed, or incomplete."""


class NumericsError(RydgateError):
    """A numerical routine failed to produce a trustworthy result."""


class ResonanceError(RydgateError):
    """A perturbative sum hit a near-degenerate channel.

    Carries the offending channel so callers can flag the row instead of
    dying mid-scan.
    """

    def __init__(self, message, channel=None):
        super().__init__(message)
        self.channel = channel


class WindowError(RydgateError):
    """The gate operating window is empty for the requested parameters."""
