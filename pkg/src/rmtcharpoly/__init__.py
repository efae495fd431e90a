"""Exact moments of characteristic polynomials of GUE, LUE and JUE matrices."""

from .errors import (
    ContainmentError,
    DimensionError,
    DomainError,
    OrderStarvationError,
    ResourceError,
    SingularPointsError,
    UnsupportedEnsembleError,
)
from .orthopoly import EnsembleSpec, gue, jue, lue

__all__ = [
    "EnsembleSpec",
    "gue",
    "lue",
    "jue",
    "DomainError",
    "DimensionError",
    "ContainmentError",
    "UnsupportedEnsembleError",
    "SingularPointsError",
    "ResourceError",
    "OrderStarvationError",
]

__version__ = "0.1.0"
