"""Exception hierarchy for stableport."""


class StableportError(Exception):
    """Base class for all stableport errors."""


class DataError(StableportError):
    """Raised when input data cannot be parsed or fails validation."""


class FitError(StableportError):
    """Raised when a model fit fails (rank deficiency, non-convergence,
    nonstationary result where stationarity is required)."""


class DegeneracyError(StableportError):
    """Raised when a partial autocorrelation reaches unit magnitude,
    i.e. the implied autocorrelation matrix is singular."""
