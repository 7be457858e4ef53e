"""Exception types shared across the package."""


class RydbergPilotError(Exception):
    """Base class for all package-specific errors."""


class DomainError(RydbergPilotError, ValueError):
    """A coordinate or parameter lies outside its allowed range."""


class UnboundOrbitError(DomainError):
    """Parameters do not describe a bound orbit with real turning radii."""


class DegenerateOrbitError(DomainError):
    """Operation undefined for a circular orbit (zero radial extent)."""


class WkbGuardError(RydbergPilotError):
    """Radial momentum fell below the semiclassical guard threshold."""


class SingularConfigurationError(RydbergPilotError):
    """Phase requested where the winding-envelope term diverges (b = 0, A != 0)."""


class AmplitudeUnderflowError(RydbergPilotError):
    """Amplitude too small for a meaningful curvature evaluation."""


class CrossCheckError(RydbergPilotError):
    """Analytic and numerical derivative routes disagree."""


class FitError(RydbergPilotError):
    """Nonlinear fit could not be performed or did not converge."""


class InsufficientArcError(FitError):
    """Trajectory does not cover a full radial period."""


class StepFailureError(RydbergPilotError):
    """Adaptive step-size controller underflowed the minimum step."""


class ConfigError(RydbergPilotError, ValueError):
    """Configuration document is malformed or violates an invariant."""


class NumericalNoiseWarning(UserWarning):
    """A finite-difference result failed its internal consistency estimate."""


class TruncationWarning(UserWarning):
    """Winding sum truncation bound exceeded; increase the truncation order."""
