"""Full Brinkman two-phase model: anisotropic pressure solve + IMEX transport.

    ∂x(λ ∂x p) + γ⁻² ∂z(λ ∂z p) = 0,   U = −λ ∂x p,   γ² Q = −λ ∂z p

discretised with two-point fluxes (harmonic face mobility), Dirichlet
pressure on the inflow/outflow faces and no-flow walls.
"""

import logging
from typing import Iterable, Optional

import numpy as np

from src.grid.calculus import l2_norm
from src.grid.cg import cg_solve
from src.grid.fields import FaceField, GridSpec, ScalarField, require_same_grid
from src.grid.linear_operator import LinearOperatorSpec, dirichlet
from src.model.constitutive import total_mobility
from src.model.types import BoundaryData, DimensionlessParams
from src.solvers.base_solver import ModelSolver
from src.solvers.state import SimState, TimeStepConfig, Trajectory

logger = logging.getLogger(__name__)


def _harmonic(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return 2.0 * a * b / (a + b)


def _transmissibilities(S: ScalarField, params: DimensionlessParams):
    """Face coefficients λ_face (x) and λ_face/γ² (z); boundary x faces use the cell value."""
    g = S.grid
    lam = total_mobility(S.values, params.M)
    tx = np.empty((g.nx + 1, g.nz))
    tx[1:-1] = _harmonic(lam[:-1], lam[1:])
    tx[0] = lam[0]
    tx[-1] = lam[-1]
    tz = np.zeros((g.nx, g.nz + 1))
    tz[:, 1:-1] = _harmonic(lam[:, :-1], lam[:, 1:]) / params.gamma**2
    return tx, tz


def pressure_operator(S: ScalarField, params: DimensionlessParams, bc: BoundaryData) -> LinearOperatorSpec:
    g = S.grid
    tx, tz = _transmissibilities(S, params)
    wx = tx / g.dx**2
    # inflow/outflow faces are half a cell from the nearest centre
    wx[[0, -1]] *= 2.0
    wz = tz / g.dz**2
    return LinearOperatorSpec(
        g,
        wx,
        wz,
        shift=0.0,
        bc={"left": dirichlet(bc.pressure_inflow), "right": dirichlet(bc.pressure_outflow)},
    )


def solve_pressure(
    S: ScalarField,
    params: DimensionlessParams,
    bc: Optional[BoundaryData] = None,
    tol: float = 1e-10,
    max_iter: Optional[int] = None,
    x0: Optional[ScalarField] = None,
) -> ScalarField:
    """TPFA pressure for saturation S; CG to relative residual `tol`."""
    return _solve_pressure(S, params, bc or BoundaryData(), tol, max_iter, x0)[0]


def _solve_pressure(S, params, bc, tol, max_iter, x0):
    op = pressure_operator(S, params, bc)
    rhs = ScalarField(S.grid, op.dirichlet_rhs())
    result = cg_solve(op, rhs, tol=tol, max_iter=max_iter, x0=x0)
    return result.solution, result, l2_norm(rhs)


def reconstruct_velocity(
    p: ScalarField,
    S: ScalarField,
    params: DimensionlessParams,
    bc: Optional[BoundaryData] = None,
) -> FaceField:
    """U = −λ ∂x p on vertical faces, Q = −(λ/γ²) ∂z p on horizontal faces.

    The x = 0 face carries the discrete inflow flux against the Dirichlet
    datum; wall faces are zero.
    """
    require_same_grid(p.grid, S.grid)
    bc = bc or BoundaryData()
    g = p.grid
    tx, tz = _transmissibilities(S, params)
    P = p.values

    u = np.empty((g.nx + 1, g.nz))
    u[1:-1] = -tx[1:-1] * (P[1:] - P[:-1]) / g.dx
    u[0] = -tx[0] * (P[0] - bc.pressure_inflow) / (0.5 * g.dx)
    u[-1] = -tx[-1] * (bc.pressure_outflow - P[-1]) / (0.5 * g.dx)

    q = np.zeros((g.nx, g.nz + 1))
    q[:, 1:-1] = -tz[:, 1:-1] * (P[:, 1:] - P[:, :-1]) / g.dz
    return FaceField(g, u, q)


class BtpSolver(ModelSolver):
    name = "btp"

    def solve_pressure(self, S: ScalarField, x0: Optional[ScalarField] = None):
        p, result, scale = _solve_pressure(S, self.params, self.bc, self.cfg.cg_tol, self.cfg.cg_max_iter, x0)
        self.pressure_solves += 1
        self.cg_iterations += result.iterations
        logger.debug("pressure solve %d: %d CG iterations", self.pressure_solves, result.iterations)
        return p, scale

    def refresh(self, S: ScalarField, time: float, step: int, previous=None) -> SimState:
        warm = previous.p if previous is not None else None
        p, scale = self.solve_pressure(S, x0=warm)
        V = reconstruct_velocity(p, S, self.params, self.bc)
        return SimState(time=time, step=step, S=S, p=p, V=V, pressure_scale=scale)

    def divergence_scale(self, state: SimState) -> float:
        return state.pressure_scale


def btp_step(
    state: SimState,
    dt: float,
    params: DimensionlessParams,
    bc: Optional[BoundaryData] = None,
    cfg: Optional[TimeStepConfig] = None,
) -> SimState:
    """One IMEX step of the full model, followed by a fresh pressure solve."""
    return BtpSolver(params, bc, state.S.grid, cfg).step(state, dt)


def run_btp(
    params: DimensionlessParams,
    bc: Optional[BoundaryData] = None,
    grid: Optional[GridSpec] = None,
    cfg: Optional[TimeStepConfig] = None,
    snapshot_times: Optional[Iterable[float]] = None,
    monitor=None,
    initial: Optional[ScalarField] = None,
) -> Trajectory:
    return BtpSolver(params, bc, grid, cfg, initial=initial).run(snapshot_times, monitor)
