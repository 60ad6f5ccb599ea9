"""Exception types shared across the package."""


class MetricInputError(ValueError):
    """Raised for malformed input: non-square matrices, axiom violations, bad parameters.

    When the failure comes from metric validation, ``report`` holds the
    :class:`~ultragh.space.ValidationReport` describing it.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ResourceLimitError(RuntimeError):
    """Raised when a size cap (points, pairs, samples) would be exceeded."""
