"""First-order upwind evaluation of the transported flux f(S)·V."""

import numpy as np

from src.grid.fields import FaceField, ScalarField, require_same_grid
from src.model.constitutive import frac_flow


def upwind_face_flux(s: ScalarField, v: FaceField, M: float, inflow_saturation: np.ndarray) -> FaceField:
    """Flux on every face, taking f from the cell the velocity comes from.

    Inflow faces (x = 0, U > 0) use f(S_inflow(z)); a reversed outflow face
    draws the defending phase (f = 0). Top and bottom walls carry no flux.
    """
    require_same_grid(s.grid, v.grid)
    g = s.grid
    inflow_saturation = np.asarray(inflow_saturation, dtype=float)
    if inflow_saturation.shape != (g.nz,):
        inflow_saturation = np.broadcast_to(inflow_saturation, (g.nz,))

    f_cells = frac_flow(s.values, M)
    f_inflow = frac_flow(inflow_saturation, M)
    u, q = v.u_faces, v.q_faces

    u_flux = np.zeros_like(u)
    u_flux[1:-1] = u[1:-1] * np.where(u[1:-1] > 0, f_cells[:-1], f_cells[1:])
    u_flux[0] = u[0] * np.where(u[0] > 0, f_inflow, f_cells[0])
    u_flux[-1] = np.where(u[-1] > 0, u[-1] * f_cells[-1], 0.0)

    q_flux = np.zeros_like(q)
    q_flux[:, 1:-1] = q[:, 1:-1] * np.where(q[:, 1:-1] > 0, f_cells[:, :-1], f_cells[:, 1:])
    return FaceField(g, u_flux, q_flux)
