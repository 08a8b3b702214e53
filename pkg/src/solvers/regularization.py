"""The pseudo-parabolic operator I − β₁D_xx − β₂D_zz.

Homogeneous Dirichlet at the inflow face (the inflow saturation does not
change in time), homogeneous Neumann on the outflow face and both walls.
"""

import numpy as np

from src.grid.fields import GridSpec, ScalarField
from src.grid.linear_operator import LinearOperatorSpec, dirichlet
from src.model.types import DimensionlessParams


def regularization_operator(grid: GridSpec, params: DimensionlessParams) -> LinearOperatorSpec:
    wx = np.zeros((grid.nx + 1, grid.nz))
    wx[1:-1] = params.beta1 / grid.dx**2
    # the inflow face sits half a cell from the first centre
    wx[0] = 2.0 * params.beta1 / grid.dx**2
    wz = np.zeros((grid.nx, grid.nz + 1))
    wz[:, 1:-1] = params.beta2 / grid.dz**2
    return LinearOperatorSpec(grid, wx, wz, shift=1.0, bc={"left": dirichlet(0.0)})


def is_identity(params: DimensionlessParams) -> bool:
    return params.beta1 == 0.0 and params.beta2 == 0.0


def regularized_mass(S: ScalarField, op: LinearOperatorSpec) -> float:
    """dx·dz·Σ (S − β₁D_xxS − β₂D_zzS), the quantity the IMEX update conserves."""
    return float(S.grid.cell_area * np.sum(op.apply(S.values)))
