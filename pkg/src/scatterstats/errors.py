"""Exception hierarchy shared across the package."""


class ScatterStatsError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ScatterStatsError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DimensionError(ScatterStatsError, ValueError):
    """Array arguments have inconsistent or unexpected shapes."""


class GeometryError(ScatterStatsError):
    """A boundary realization is degenerate or self-intersecting."""


class ContainmentError(ScatterStatsError):
    """A boundary realization is not strictly enclosed by the interface."""


class NumericalError(ScatterStatsError):
    """A solver or factorization failed beyond the accepted tolerances."""


class ConfigError(ScatterStatsError, ValueError):
    """A run configuration is invalid; message carries field diagnostics."""
