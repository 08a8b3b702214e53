"""Time integration of the full (BTP) and vertical-equilibrium (BVE) models."""

from .state import TimeStepConfig, SimState, BveState, StepResult, Trajectory
from .regularization import regularization_operator, regularized_mass, is_identity
from .base_solver import ModelSolver, TIME_EPS, initial_saturation_field, default_snapshot_times
from .btp import BtpSolver, pressure_operator, solve_pressure, reconstruct_velocity, btp_step, run_btp
from .bve import (
    BveSolver,
    face_mobility,
    bve_velocity_U,
    bve_velocity_Q,
    bve_velocity,
    bve_pressure_gradient,
    bve_pressure,
    bve_step,
    run_bve,
)
from .registry import register_solver, get_solver, get_all_solvers, REGISTRY

__all__ = [
    "TimeStepConfig",
    "SimState",
    "BveState",
    "StepResult",
    "Trajectory",
    "regularization_operator",
    "regularized_mass",
    "is_identity",
    "ModelSolver",
    "TIME_EPS",
    "initial_saturation_field",
    "default_snapshot_times",
    "BtpSolver",
    "pressure_operator",
    "solve_pressure",
    "reconstruct_velocity",
    "btp_step",
    "run_btp",
    "BveSolver",
    "face_mobility",
    "bve_velocity_U",
    "bve_velocity_Q",
    "bve_velocity",
    "bve_pressure_gradient",
    "bve_pressure",
    "bve_step",
    "run_bve",
    "register_solver",
    "get_solver",
    "get_all_solvers",
    "REGISTRY",
]
