"""Common utilities: the error taxonomy."""

from .errors import (
    ThinflowError,
    ParameterError,
    ConfigValidationError,
    ContractViolation,
    SolverError,
    CflViolation,
    ConservationViolation,
    SweepError,
    FieldFormatError,
)

__all__ = [
    "ThinflowError",
    "ParameterError",
    "ConfigValidationError",
    "ContractViolation",
    "SolverError",
    "CflViolation",
    "ConservationViolation",
    "SweepError",
    "FieldFormatError",
]
