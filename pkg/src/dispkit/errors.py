"""Error taxonomy shared by the symbolic and numeric layers."""


class DispkitError(Exception):
    """Base class for all package-specific errors."""


class ParseError(DispkitError):
    """Malformed expression text."""


class SecondTimeDerivative(DispkitError):
    """A second t-derivative was requested; the jet algebra caps t-order at 1."""


class MissingRule(DispkitError):
    """Substitution mode needs an evolution rule for a symbol that has none."""


class NotExact(DispkitError):
    """integrateX called on an expression that is not an exact x-derivative."""


class DegenerateField(DispkitError):
    """A field value dropped below the positivity/zero guard."""


class NonPositiveField(DispkitError):
    """An operation requiring a positive field met a non-positive value."""


class BlowUp(DispkitError):
    """A non-finite value appeared during time stepping."""


class SchemeMismatch(DispkitError):
    """Derivative scheme incompatible with the field's boundary mode."""


class KernelDrift(DispkitError):
    """An evolved field left the kernel of the associated Schroedinger operator."""


class OutOfDomain(DispkitError):
    """Evaluation requested outside a solution's validity domain."""


class NonSmoothSolution(DispkitError):
    """A pointwise PDE residual was requested for a non-classical solution."""


class MissingAux(DispkitError):
    """A functional needs an auxiliary field that was not supplied."""


class DomainMismatch(DispkitError):
    """A conserved-quantity monitor refused an incompatible boundary mode."""


class SupportViolation(DispkitError):
    """A test function's support leaves the admissible space-time window."""


class QuadratureFailure(DispkitError):
    """Adaptive panel refinement stopped making progress before the target."""


class StationaryCase(DispkitError):
    """Parameter combination with no propagating exponential profile."""


class ZeroSpeed(DispkitError):
    """Wave speed c = 0 requested where a travelling profile is needed."""


class ConfigError(DispkitError):
    """Invalid run configuration."""
