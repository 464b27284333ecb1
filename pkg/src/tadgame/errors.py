class TadError(Exception):
    """Base class for errors raised by tadgame."""


class DegenerateGeometryError(TadError, ValueError):
    """Coincident points or a collapsed circle where a direction is needed."""


class SolverFailure(TadError, RuntimeError):
    """A root finder could not produce an admissible solution.

    ``diagnostics`` carries whatever the solver saw (raw polynomial roots,
    scan range, ...) so callers can fall back or report.
    """

    def __init__(self, message, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


class RegionError(TadError, ValueError):
    """The state lies outside the region where an operation is defined."""

    def __init__(self, message, region=None):
        super().__init__(message)
        self.region = region
