"""Exception hierarchy shared by every module.

The CLI maps :class:`DomainError` and :class:`ResourceError` to exit code 2.
"""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class DimensionError(DomainError):
    pass


class ContainmentError(DomainError):
    """A partition does not fit inside the required bounding box."""


class UnsupportedEnsembleError(DomainError):
    pass


class SingularPointsError(DomainError):
    """Coincident points passed to a route that divides by a Vandermonde."""


class ResourceError(RuntimeError):
    """A computation would exceed a configured budget or stored table."""


class OrderStarvationError(ResourceError):
    def __init__(self, message, required_order):
        super().__init__(message)
        self.required_order = required_order
