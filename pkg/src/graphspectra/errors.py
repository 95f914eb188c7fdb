"""Exception types shared across the package.

ValidationError covers malformed inputs and contract violations; the CLI
maps it to exit code 2.  PrecisionError covers numeric failures (exhausted
working precision, non-convergence, snapping residuals above tolerance);
the CLI maps it and its subclasses to exit code 3.
"""


class ValidationError(ValueError):
    """Input violates a documented precondition."""


class PrecisionError(ArithmeticError):
    """A numeric stage could not deliver the requested accuracy."""


class AmbiguousClusteringError(PrecisionError):
    """Spectrum values could not be attributed to levels; retry with a larger prime."""


class RealizationError(ValidationError):
    """No graph realizes the given forest family."""
