"""Exception hierarchy shared across the package."""


class TriconicError(Exception):
    """Base class for all package-specific errors."""


class ZeroRadius(TriconicError):
    """A position vector required to be nonzero has zero length."""


class DegenerateRotation(TriconicError):
    """Relative angular rate is zero: no angle-parameterized orbit exists."""


class RadiusDivergence(TriconicError):
    """Conic denominator reached zero: the requested angle is unbound."""


class QuadratureFailure(TriconicError):
    """Adaptive quadrature could not reach the requested tolerance."""


class Unreachable(TriconicError):
    """Requested time cannot be bracketed on the orbit's angular domain."""


class Collision(TriconicError):
    """Two bodies passed within the collision epsilon during integration.

    Carries the abort time and the partial integration result so callers
    can still use the samples accumulated before the abort.
    """

    def __init__(self, message, t=None, partial=None):
        super().__init__(message)
        self.t = t
        self.partial = partial


class StepFailure(TriconicError):
    """Adaptive step control underflowed the minimum step size."""

    def __init__(self, message, t=None, partial=None):
        super().__init__(message)
        self.t = t
        self.partial = partial


class GridMismatch(TriconicError):
    """Two series expected to share a time grid disagree."""


class ScenarioError(TriconicError):
    """Scenario file failed to parse or validate."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line
