import logging
from typing import List, Optional

from src.common.errors import ConservationViolation
from src.diagnostics.estimates import (
    EstimateReport,
    divergence_residual,
    energy_estimate,
    energy_functional,
    inflow_constant,
    inflow_energy_budget,
    inflow_energy_rate,
    mass_audit,
    overshoot,
    pressure_anisotropy,
)
from src.grid.calculus import face_l2_norms
from src.grid.fields import ScalarField
from src.solvers.bve import bve_pressure

logger = logging.getLogger(__name__)

MASS_THRESHOLD = 1e-8


class RunMonitor:
    """
    Per-step audits for a ModelSolver run.

    Every accepted step is mass-audited and its velocity field checked for
    discrete incompressibility; at snapshot times an EstimateReport is built.
    In strict mode a failed mass audit raises ConservationViolation.
    """

    def __init__(self, strict: bool = False, mass_threshold: float = MASS_THRESHOLD):
        self.strict = strict
        self.mass_threshold = mass_threshold
        self.reset()

    def reset(self) -> None:
        self.initial_energy: Optional[float] = None
        self.c_inflow = 0.0
        self.inflow_rates: List[float] = []
        self.step_dts: List[float] = []
        self.mass_residuals: List[float] = []
        self.div_residuals: List[float] = []
        self.max_overshoot = 0.0
        self.last_dtS_energy = 0.0
        self.peak_dtS_energy = 0.0

    # --- hooks called by ModelSolver.run ---

    def start(self, solver, state) -> None:
        self.reset()
        self.initial_energy = energy_functional(state.S, solver.params)
        self.c_inflow = inflow_constant(state.V.inflow_u, solver.inflow_saturation, solver.params.M)
        self.div_residuals.append(self._div_residual(solver, state))

    def observe(self, solver, result) -> None:
        params = solver.params
        before, after = result.before, result.state
        residual = mass_audit(before.S, after.S, result.flux, result.dt, params)
        self.mass_residuals.append(residual)
        if residual > self.mass_threshold:
            message = f"{solver.name} step {after.step}: mass residual {residual:.3e}"
            if self.strict:
                raise ConservationViolation(message, residual=residual)
            logger.warning(message)

        self.div_residuals.append(self._div_residual(solver, after))
        self.max_overshoot = max(self.max_overshoot, overshoot(after.S))
        rate = inflow_energy_rate(before.V.inflow_u, solver.inflow_saturation, params.M, solver.grid.dz)
        self.inflow_rates.append(rate)
        self.step_dts.append(result.dt)
        dSdt = ScalarField(after.S.grid, result.increment.values / result.dt)
        self.last_dtS_energy = energy_functional(dSdt, params)
        self.peak_dtS_energy = max(self.peak_dtS_energy, self.last_dtS_energy)

    def snapshot(self, solver, state) -> EstimateReport:
        params = solver.params
        E, bound = energy_estimate(state.S, params, self.initial_energy, self.c_inflow)
        if E > bound:
            logger.warning("%s t=%.6g: energy %.6g exceeds inflow bound %.6g", solver.name, state.time, E, bound)
        grad_x, grad_z = self._pressure_gradients(solver, state)
        u_norm, q_norm = face_l2_norms(state.V)
        return EstimateReport(
            time=state.time,
            energy_E=E,
            grad_p_x=grad_x,
            grad_p_z=grad_z,
            u_norm=u_norm,
            q_norm=q_norm,
            dtS_energy=self.last_dtS_energy,
            mass_residual=self.max_mass_residual,
            div_residual=self._div_residual(solver, state),
            overshoot=overshoot(state.S),
            energy_bound=bound,
            inflow_budget=self.inflow_budget,
        )

    # --- summaries ---

    @property
    def inflow_budget(self) -> float:
        return inflow_energy_budget(self.inflow_rates, self.step_dts)

    @property
    def max_mass_residual(self) -> float:
        return max(self.mass_residuals, default=0.0)

    @property
    def max_div_residual(self) -> float:
        return max(self.div_residuals, default=0.0)

    @staticmethod
    def _div_residual(solver, state) -> float:
        return divergence_residual(state.V, solver.grid, solver.divergence_scale(state))

    @staticmethod
    def _pressure_gradients(solver, state):
        p = getattr(state, "p", None)
        if p is None:
            p = bve_pressure(state.S, solver.params, solver.bc)
        gx, gz, _ = pressure_anisotropy(p, solver.params)
        return gx, gz
