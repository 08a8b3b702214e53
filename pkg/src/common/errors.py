"""Error taxonomy shared by every thinflow package."""

from typing import Any, List, Optional


class ThinflowError(Exception):
    """Base class for all thinflow errors."""


class ParameterError(ThinflowError, ValueError):
    """Numeric input is non-finite or outside its admissible range."""


class ConfigValidationError(ParameterError):
    """A configuration invariant does not hold."""

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")


class ContractViolation(ThinflowError, ValueError):
    """Caller broke an operation's precondition (shapes, grids, definiteness)."""


class SolverError(ThinflowError, RuntimeError):
    """A linear or time-stepping solve failed."""

    def __init__(self, message: str, residual: Optional[float] = None, iterations: Optional[int] = None):
        self.residual = residual
        self.iterations = iterations
        super().__init__(message)


class CflViolation(SolverError):
    """Requested step exceeds the transport stability limit."""

    def __init__(self, dt: float, suggested_dt: float):
        self.dt = dt
        self.suggested_dt = suggested_dt
        super().__init__(f"dt={dt:.6g} exceeds the CFL limit; retry with dt <= {suggested_dt:.6g}")


class ConservationViolation(SolverError):
    """Mass audit residual above threshold (strict monitoring only)."""


class SweepError(SolverError):
    """A γ sweep member failed; completed rows are kept on the exception."""

    def __init__(self, message: str, partial_rows: Optional[List[Any]] = None):
        self.partial_rows = partial_rows or []
        super().__init__(message)


class FieldFormatError(ThinflowError, ValueError):
    """A field CSV file is malformed."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")
