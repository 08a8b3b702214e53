"""Vertical-equilibrium reduction: velocities as functionals of saturation.

    U[S] = Û λ(S) / ∫₀¹ λ(S) dz,    Q[S] = −∂x ∫₀^z U[S] dr

No pressure solve. Q is built by telescoping the discrete incompressibility
constraint upward from the bottom wall, so div(U, Q) vanishes cell by cell.
"""

import logging
from typing import Callable, Iterable, Optional

import numpy as np

from src.common.errors import ContractViolation
from src.grid.calculus import column_average
from src.grid.fields import FaceField, GridSpec, ScalarField
from src.model.constitutive import total_mobility
from src.model.types import BoundaryData, DimensionlessParams
from src.solvers.base_solver import ModelSolver
from src.solvers.state import BveState, TimeStepConfig, Trajectory

logger = logging.getLogger(__name__)

# admissible |Q| on the top wall after telescoping
TOP_RESIDUAL_TOL = 1e-10


def face_mobility(S: ScalarField, M: float, mobility: Callable = total_mobility) -> np.ndarray:
    """λ on vertical faces: arithmetic mean inside, the adjacent cell on x = 0 and x = 1."""
    lam = mobility(S.values, M)
    g = S.grid
    out = np.empty((g.nx + 1, g.nz))
    out[1:-1] = 0.5 * (lam[:-1] + lam[1:])
    out[0] = lam[0]
    out[-1] = lam[-1]
    return out


def bve_velocity_U(
    S: ScalarField,
    u_hat_inflow: float,
    M: float,
    mobility: Callable = total_mobility,
) -> np.ndarray:
    """U = Û·λ_face/λ̄ per vertical face; each face column averages to Û."""
    lam_face = face_mobility(S, M, mobility)
    lam_bar = column_average(lam_face, S.grid.dz)
    return u_hat_inflow * lam_face / lam_bar[:, None]


def bve_velocity_Q(U: np.ndarray, g: GridSpec) -> np.ndarray:
    """Q on horizontal faces from Q_{j+1/2} = Q_{j−1/2} − (dz/dx)(U_{i+1/2,j} − U_{i−1/2,j}), Q_{1/2} = 0."""
    U = np.asarray(U, dtype=float)
    if U.shape != (g.nx + 1, g.nz):
        raise ContractViolation(f"U has shape {U.shape}, expected {(g.nx + 1, g.nz)}")
    if not np.all(np.isfinite(U)):
        raise ContractViolation("U contains non-finite values")
    q = np.zeros((g.nx, g.nz + 1))
    q[:, 1:] = -(g.dz / g.dx) * np.cumsum(U[1:] - U[:-1], axis=1)
    top = float(np.max(np.abs(q[:, -1]))) if g.nx else 0.0
    if top > TOP_RESIDUAL_TOL:
        raise ContractViolation(f"U columns do not share a vertical average: top-wall Q residual {top:.3e}")
    return q


def bve_velocity(S: ScalarField, params: DimensionlessParams) -> FaceField:
    U = bve_velocity_U(S, params.u_hat_inflow, params.M)
    return FaceField(S.grid, U, bve_velocity_Q(U, S.grid))


def bve_pressure_gradient(S: ScalarField, params: DimensionlessParams) -> np.ndarray:
    """∂x p = −Û/∫₀¹λ dz on each vertical-face column, shape (nx + 1,)."""
    lam_bar = column_average(face_mobility(S, params.M), S.grid.dz)
    return -params.u_hat_inflow / lam_bar


def bve_pressure(
    S: ScalarField,
    params: DimensionlessParams,
    bc: Optional[BoundaryData] = None,
) -> ScalarField:
    """z-independent limit pressure, integrated from the outflow datum at x = 1."""
    bc = bc or BoundaryData()
    g = S.grid
    grad = bve_pressure_gradient(S, params)
    # widths between consecutive evaluation points: half cell at each end
    widths = np.full(g.nx + 1, g.dx)
    widths[[0, -1]] = 0.5 * g.dx
    # p(x_i) = p(1) − Σ_{faces right of centre i} grad·width
    drops = np.empty(g.nx)
    drops[-1] = grad[-1] * widths[-1]
    drops[:-1] = grad[1:-1] * widths[1:-1]
    centres = bc.pressure_outflow - np.cumsum(drops[::-1])[::-1]
    return ScalarField(g, np.repeat(centres[:, None], g.nz, axis=1))


class BveSolver(ModelSolver):
    name = "bve"

    def refresh(self, S: ScalarField, time: float, step: int, previous=None) -> BveState:
        return BveState(time=time, step=step, S=S, V=bve_velocity(S, self.params))


def bve_step(
    state: BveState,
    dt: float,
    params: DimensionlessParams,
    bc: Optional[BoundaryData] = None,
    cfg: Optional[TimeStepConfig] = None,
) -> BveState:
    return BveSolver(params, bc, state.S.grid, cfg).step(state, dt)


def run_bve(
    params: DimensionlessParams,
    bc: Optional[BoundaryData] = None,
    grid: Optional[GridSpec] = None,
    cfg: Optional[TimeStepConfig] = None,
    snapshot_times: Optional[Iterable[float]] = None,
    monitor=None,
    initial: Optional[ScalarField] = None,
) -> Trajectory:
    return BveSolver(params, bc, grid, cfg, initial=initial).run(snapshot_times, monitor)
