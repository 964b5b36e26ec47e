"""Exception hierarchy shared across the package."""


class FildynError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(FildynError):
    """An input violates a documented precondition or type invariant."""


class DomainError(FildynError):
    """An evaluation point sits on (or too close to) a singularity."""


class ConfigError(FildynError):
    """A run configuration is malformed, incomplete or inconsistent."""


class ComplexResidualError(FildynError):
    """A complex-arithmetic identity left a non-negligible imaginary part."""


class DegenerateFitError(FildynError):
    """The trajectory norm collapsed before a growth rate could be fitted."""


class ConvergenceError(FildynError):
    """A sampled limit sequence failed to approach its limit monotonically."""
