"""Discrete calculus on the staggered grid.

Reductions run in a fixed index order (sequential cumulative sums along z),
so column averages and cumulative integrals agree bitwise on the top face.
"""

import numpy as np

from src.grid.fields import FaceField, GridSpec, ScalarField, require_same_grid


def divergence(v: FaceField, g: GridSpec) -> ScalarField:
    """(U_{i+1/2,j} - U_{i-1/2,j})/dx + (Q_{i,j+1/2} - Q_{i,j-1/2})/dz per cell."""
    require_same_grid(v.grid, g)
    u, q = v.u_faces, v.q_faces
    return ScalarField(g, (u[1:] - u[:-1]) / g.dx + (q[:, 1:] - q[:, :-1]) / g.dz)


def column_cumulative(values: np.ndarray, dz: float) -> np.ndarray:
    """dz·Σ_{k<j} values[:, k] for j = 0..nz, i.e. values at horizontal faces."""
    out = np.zeros((values.shape[0], values.shape[1] + 1))
    out[:, 1:] = dz * np.cumsum(values, axis=1)
    return out


def column_average(values: np.ndarray, dz: float) -> np.ndarray:
    """Midpoint-rule ∫_0^1 · dz per column; the top row of column_cumulative."""
    return dz * np.cumsum(values, axis=1)[:, -1]


def vertical_average(s: ScalarField) -> np.ndarray:
    return column_average(s.values, s.grid.dz)


def cumulative_vertical_integral(s: ScalarField) -> np.ndarray:
    """∫_0^z s dr on every horizontal face, shape (nx, nz + 1); bottom row is 0."""
    return column_cumulative(s.values, s.grid.dz)


def l2_inner(a: ScalarField, b: ScalarField) -> float:
    require_same_grid(a.grid, b.grid)
    return float(a.grid.cell_area * np.sum(a.values * b.values))


def l2_norm(s: ScalarField) -> float:
    """sqrt(dx·dz·Σ s²); the unit square has measure 1."""
    return float(np.sqrt(s.grid.cell_area * np.sum(s.values**2)))


def max_norm(s: ScalarField) -> float:
    return float(np.max(np.abs(s.values)))


def _directional_norm(diffs: np.ndarray, spacing: float, cell_area: float) -> float:
    # interior face differences, the two boundary half cells reuse the
    # nearest one-sided difference
    if diffs.size == 0:
        return 0.0
    grad = diffs / spacing
    energy = np.sum(grad**2, axis=0) + 0.5 * (grad[0] ** 2 + grad[-1] ** 2)
    return float(np.sqrt(cell_area * np.sum(energy)))


def l2_grad_norms(s: ScalarField) -> tuple:
    """(‖∂x s‖, ‖∂z s‖) from face differences of cell values."""
    g = s.grid
    dxs = np.diff(s.values, axis=0)
    dzs = np.diff(s.values, axis=1).T
    return (
        _directional_norm(dxs, g.dx, g.cell_area),
        _directional_norm(dzs, g.dz, g.cell_area),
    )


def net_boundary_flux(flux: FaceField) -> float:
    """Outward flux through ∂Ω (outflow positive)."""
    g = flux.grid
    u, q = flux.u_faces, flux.q_faces
    return float(g.dz * (np.sum(u[-1]) - np.sum(u[0])) + g.dx * (np.sum(q[:, -1]) - np.sum(q[:, 0])))


def face_l2_norms(v: FaceField) -> tuple:
    """Discrete L² norms of U and Q over their face control volumes."""
    g = v.grid
    u, q = v.u_faces, v.q_faces
    u_weights = np.ones(g.nx + 1)
    u_weights[[0, -1]] = 0.5
    q_weights = np.ones(g.nz + 1)
    q_weights[[0, -1]] = 0.5
    u_norm = np.sqrt(g.cell_area * np.sum(u_weights[:, None] * u**2))
    q_norm = np.sqrt(g.cell_area * np.sum(q_weights[None, :] * q**2))
    return float(u_norm), float(q_norm)
