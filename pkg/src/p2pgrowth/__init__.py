"""Analytic solver and simulator for a P2P live-streaming overlay growth model."""

from .errors import (
    CapacityError,
    ConvergenceError,
    DomainError,
    InternalError,
    ModelError,
    NumericError,
)
from .model import DistVector, ModelParams, RngStream, derive_stream, validate_params

__all__ = [
    "CapacityError",
    "ConvergenceError",
    "DistVector",
    "DomainError",
    "InternalError",
    "ModelError",
    "ModelParams",
    "NumericError",
    "RngStream",
    "derive_stream",
    "validate_params",
]
