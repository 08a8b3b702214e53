"""Grid operations: staggered fields, discrete calculus, upwinding, CG."""

from .fields import GridSpec, ScalarField, FaceField, require_same_grid
from .calculus import (
    divergence,
    column_average,
    column_cumulative,
    vertical_average,
    cumulative_vertical_integral,
    l2_inner,
    l2_norm,
    l2_grad_norms,
    max_norm,
    net_boundary_flux,
    face_l2_norms,
)
from .upwind import upwind_face_flux
from .linear_operator import LinearOperatorSpec, BoundaryCondition, NEUMANN, dirichlet
from .cg import cg_solve, CgResult, default_max_iter

__all__ = [
    "GridSpec",
    "ScalarField",
    "FaceField",
    "require_same_grid",
    "divergence",
    "column_average",
    "column_cumulative",
    "vertical_average",
    "cumulative_vertical_integral",
    "l2_inner",
    "l2_norm",
    "l2_grad_norms",
    "max_norm",
    "net_boundary_flux",
    "face_l2_norms",
    "upwind_face_flux",
    "LinearOperatorSpec",
    "BoundaryCondition",
    "NEUMANN",
    "dirichlet",
    "cg_solve",
    "CgResult",
    "default_max_iter",
]
