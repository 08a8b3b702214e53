from abc import ABC, abstractmethod
from dataclasses import replace
from typing import Iterable, List, Optional
import logging
import math

import numpy as np

from src.common.errors import CflViolation, ParameterError
from src.grid.calculus import divergence
from src.grid.cg import cg_solve
from src.grid.fields import FaceField, GridSpec, ScalarField, require_same_grid
from src.grid.upwind import upwind_face_flux
from src.model.constitutive import max_frac_flow_slope
from src.model.profiles import decay
from src.model.types import BoundaryData, DimensionlessParams
from src.solvers.regularization import is_identity, regularization_operator
from src.solvers.state import StepResult, TimeStepConfig, Trajectory

logger = logging.getLogger(__name__)

# relative slack on time comparisons
TIME_EPS = 1e-12


def initial_saturation_field(grid: GridSpec, bc: BoundaryData) -> ScalarField:
    """S0 = g(x)·S_inflow(z) at cell centres, using the boundary's own profile."""
    profile = bc.inflow_values(grid.z_centers)
    return ScalarField(grid, decay(grid.x_centers)[:, None] * profile[None, :])


def default_snapshot_times(T: float) -> List[float]:
    return sorted({0.0, T / 2.0, T})


class ModelSolver(ABC):
    """
    Base class for both models.
    Owns the IMEX transport update, the CFL limit and the time loop; subclasses
    supply velocities (and pressure) for a given saturation.
    """

    name: str

    def __init__(
        self,
        params: DimensionlessParams,
        bc: Optional[BoundaryData] = None,
        grid: Optional[GridSpec] = None,
        cfg: Optional[TimeStepConfig] = None,
        initial: Optional[ScalarField] = None,
    ):
        self.params = params
        self.bc = bc or BoundaryData()
        self.grid = grid or GridSpec(250, 50)
        self.cfg = cfg or TimeStepConfig()
        if initial is not None:
            require_same_grid(initial.grid, self.grid)
        self.initial = initial
        self.inflow_saturation = self.bc.inflow_values(self.grid.z_centers)
        self.regularization = regularization_operator(self.grid, params)
        self.slope = max_frac_flow_slope(params.M)
        self.pressure_solves = 0
        self.cg_iterations = 0

    # --- model-specific parts ---

    @abstractmethod
    def refresh(self, S: ScalarField, time: float, step: int, previous=None):
        """Build the state at `time` for saturation S (velocities, pressure)."""

    def divergence_scale(self, state) -> float:
        """Scale that makes the divergence residual dimensionless."""
        return 1.0

    # --- shared numerics ---

    def initial_state(self):
        S0 = self.initial if self.initial is not None else initial_saturation_field(self.grid, self.bc)
        return self.refresh(S0, time=0.0, step=0)

    def cfl_limit(self, V: FaceField) -> float:
        """cfl·min(dx/max|U|, dz/max|Q|)/max f'; infinite for a resting fluid."""
        g = self.grid
        candidates = []
        u_max = float(np.max(np.abs(V.u_faces)))
        q_max = float(np.max(np.abs(V.q_faces)))
        if u_max > 0:
            candidates.append(g.dx / u_max)
        if q_max > 0:
            candidates.append(g.dz / q_max)
        if not candidates or self.slope == 0:
            return math.inf
        return self.cfg.cfl_number * min(candidates) / self.slope

    def transport_increment(self, S: ScalarField, V: FaceField, dt: float):
        """Solve (I − β₁D_xx − β₂D_zz)·δS = −dt·div(f(S)V) for δS."""
        flux = upwind_face_flux(S, V, self.params.M, self.inflow_saturation)
        rhs = ScalarField(self.grid, -dt * divergence(flux, self.grid).values)
        if is_identity(self.params):
            return rhs, flux
        result = cg_solve(
            self.regularization,
            rhs,
            tol=self.cfg.regularization_tol,
            max_iter=self.cfg.cg_max_iter,
        )
        self.cg_iterations += result.iterations
        return result.solution, flux

    def advance(self, state, dt: float) -> StepResult:
        if not math.isfinite(dt) or dt <= 0:
            raise ParameterError(f"time step must be finite and > 0, got {dt!r}")
        limit = self.cfl_limit(state.V)
        if dt > limit * (1.0 + TIME_EPS):
            raise CflViolation(dt, limit)
        increment, flux = self.transport_increment(state.S, state.V, dt)
        new_state = self.refresh(state.S + increment, time=state.time + dt, step=state.step + 1, previous=state)
        logger.debug("%s step %d: t=%.6g dt=%.3e", self.name, new_state.step, new_state.time, dt)
        return StepResult(before=state, state=new_state, flux=flux, increment=increment, dt=dt)

    def step(self, state, dt: float):
        return self.advance(state, dt).state

    def next_dt(self, state, target: float) -> float:
        return min(self.cfg.dt_max, self.cfl_limit(state.V), target - state.time)

    def run(self, snapshot_times: Optional[Iterable[float]] = None, monitor=None) -> Trajectory:
        """Integrate to end_time_T, emitting snapshots at the requested times.

        Steps are truncated so every snapshot time (and T) is hit exactly.
        `monitor`, if given, receives start/observe/snapshot callbacks.
        """
        T = self.params.end_time_T
        times = default_snapshot_times(T) if snapshot_times is None else sorted(set(float(t) for t in snapshot_times))
        if any(t < 0 or t > T * (1.0 + TIME_EPS) for t in times):
            raise ParameterError(f"snapshot times must lie in [0, {T}]")
        eps = TIME_EPS * max(1.0, T)

        logger.info("%s run: grid %dx%d, T=%g, gamma=%g", self.name, self.grid.nx, self.grid.nz, T, self.params.gamma)
        state = self.initial_state()
        trajectory = Trajectory(model=self.name)
        if monitor is not None:
            monitor.start(self, state)

        targets = [t for t in times if t > eps]
        if not targets or T - targets[-1] > eps:
            targets.append(T)
        if times and times[0] <= eps:
            self._emit(trajectory, state, monitor)

        for target in targets:
            if target <= eps:
                continue
            while target - state.time > eps:
                result = self.advance(state, self.next_dt(state, target))
                if monitor is not None:
                    monitor.observe(self, result)
                state = result.state
            state = replace(state, time=target)
            if any(abs(target - t) <= eps for t in times):
                self._emit(trajectory, state, monitor)

        trajectory.steps = state.step
        trajectory.pressure_solves = self.pressure_solves
        logger.info("%s run finished: %d steps, %d pressure solves", self.name, state.step, self.pressure_solves)
        return trajectory

    def _emit(self, trajectory: Trajectory, state, monitor) -> None:
        trajectory.snapshots.append(state)
        if monitor is not None:
            trajectory.reports.append(monitor.snapshot(self, state))
