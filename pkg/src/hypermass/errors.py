"""Exception hierarchy shared across the package."""


class HypermassError(Exception):
    """Base class for all package-specific errors."""


class DomainError(HypermassError):
    """Input lies outside the mathematical domain of an operation."""


class InvariantError(HypermassError):
    """A structural invariant of a value is violated (e.g. off-sheet point)."""


class MissingEmbedding(HypermassError):
    """Surface has no hyperbolic-space embedding attached."""


class ChartBoundary(HypermassError):
    """Point too close to the chart boundary for the requested stencil."""


class DegenerateImmersion(HypermassError):
    """Induced metric is (numerically) degenerate at a quadrature node."""


class NonPositiveMeanCurvature(HypermassError):
    """Mean curvature fails H > 0 at some node."""

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class IsometryViolation(HypermassError):
    """Induced metrics of the ambient and hyperbolic immersions disagree."""


class NotNull(HypermassError):
    """Vector expected to be null is not (within tolerance)."""


class CalibrationFailure(HypermassError):
    """No sign convention satisfies the spinor/null-vector identity."""


class ConfigError(HypermassError):
    """Scenario configuration is malformed or inconsistent."""


class HypothesisFailure(HypermassError):
    """A geometric hypothesis check failed and no override was given."""
