"""Time-level states, step results and trajectories shared by both models."""

import math
from dataclasses import dataclass, field
from typing import List, Optional

from src.common.errors import ParameterError
from src.grid.fields import FaceField, ScalarField


@dataclass(frozen=True)
class TimeStepConfig:
    cfl_number: float = 0.45
    dt_max: float = 1e-2
    cg_tol: float = 1e-10
    cg_max_iter: Optional[int] = None
    regularization_tol: float = 1e-11

    def __post_init__(self):
        if not 0.0 < self.cfl_number < 1.0:
            raise ParameterError(f"cfl_number must lie in (0, 1), got {self.cfl_number!r}")
        if not math.isfinite(self.dt_max) or self.dt_max <= 0:
            raise ParameterError(f"dt_max must be > 0, got {self.dt_max!r}")
        for name in ("cg_tol", "regularization_tol"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ParameterError(f"{name} must lie in (0, 1), got {value!r}")
        if self.cg_max_iter is not None and self.cg_max_iter < 1:
            raise ParameterError(f"cg_max_iter must be >= 1, got {self.cg_max_iter!r}")


@dataclass(frozen=True)
class SimState:
    """BTP time level: saturation, global pressure and (U, Q)."""

    time: float
    step: int
    S: ScalarField
    p: ScalarField
    V: FaceField
    # ‖pressure rhs‖, the scale for the divergence residual
    pressure_scale: float = 1.0


@dataclass(frozen=True)
class BveState:
    """BVE time level: saturation and the nonlocal velocities it induces."""

    time: float
    step: int
    S: ScalarField
    V: FaceField


@dataclass(frozen=True)
class StepResult:
    before: object
    state: object
    flux: FaceField
    increment: ScalarField
    dt: float


@dataclass
class Trajectory:
    model: str
    snapshots: List[object] = field(default_factory=list)
    reports: List[object] = field(default_factory=list)
    steps: int = 0
    pressure_solves: int = 0

    @property
    def final(self):
        return self.snapshots[-1]

    def at(self, time: float, tol: float = 1e-12):
        for snap in self.snapshots:
            if abs(snap.time - time) <= tol * max(1.0, abs(time)):
                return snap
        raise KeyError(f"no snapshot at t={time!r}")
