"""Energy, pressure and velocity functionals monitored during a run."""

from dataclasses import asdict, dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from src.grid.calculus import divergence, l2_grad_norms, l2_norm, net_boundary_flux
from src.grid.fields import FaceField, GridSpec, ScalarField, require_same_grid
from src.model.constitutive import frac_flow, frac_flow_primitive
from src.model.profiles import INFLOW_SATURATION
from src.model.types import DimensionlessParams
from src.solvers.regularization import regularization_operator, regularized_mass


@dataclass(frozen=True)
class EstimateReport:
    time: float
    energy_E: float
    grad_p_x: float
    grad_p_z: float
    u_norm: float
    q_norm: float
    dtS_energy: float
    mass_residual: float
    div_residual: float
    overshoot: float
    energy_bound: float = float("nan")
    inflow_budget: float = 0.0

    def to_row(self) -> Dict[str, float]:
        return {k: float(v) for k, v in asdict(self).items()}


def energy_functional(S: ScalarField, params: DimensionlessParams) -> float:
    """‖S‖² + β₁‖∂xS‖² + β₂‖∂zS‖²."""
    gx, gz = l2_grad_norms(S)
    return l2_norm(S) ** 2 + params.beta1 * gx**2 + params.beta2 * gz**2


def inflow_constant(inflow_u: np.ndarray, inflow_saturation: np.ndarray, M: float) -> float:
    """C_inflow = 2M‖U_inflow‖∞‖S_inflow‖∞."""
    u_max = float(np.max(np.abs(inflow_u), initial=0.0))
    s_max = float(np.max(np.abs(inflow_saturation), initial=0.0))
    return 2.0 * M * u_max * s_max


def energy_estimate(
    S: ScalarField,
    params: DimensionlessParams,
    initial_energy: Optional[float] = None,
    c_inflow: float = 0.0,
) -> Tuple[float, float]:
    """(E(t), E(0) + C_inflow). Without a cached E(0), S is taken as the initial state."""
    E = energy_functional(S, params)
    E0 = E if initial_energy is None else initial_energy
    return E, E0 + c_inflow


def pressure_anisotropy(p: ScalarField, params: DimensionlessParams) -> Tuple[float, float, float]:
    """(‖∂x p‖, ‖∂z p‖, (1 − γ²)‖∂z p‖² + γ²‖∂x p‖²)."""
    gx, gz = l2_grad_norms(p)
    g2 = params.gamma**2
    return gx, gz, (1.0 - g2) * gz**2 + g2 * gx**2


def l2_difference(a: ScalarField, b: ScalarField) -> float:
    require_same_grid(a.grid, b.grid)
    return l2_norm(a - b)


def mass_audit(
    before: ScalarField,
    after: ScalarField,
    flux: FaceField,
    dt: float,
    params: DimensionlessParams,
) -> float:
    """|Δ(regularized mass) + dt·(net outflow)| / max(mass, 1) for one step."""
    require_same_grid(before.grid, after.grid)
    require_same_grid(before.grid, flux.grid)
    op = regularization_operator(before.grid, params)
    m0 = regularized_mass(before, op)
    m1 = regularized_mass(after, op)
    return abs(m1 - m0 + dt * net_boundary_flux(flux)) / max(abs(m1), 1.0)


def divergence_residual(V: FaceField, grid: GridSpec, reference: float = 1.0) -> float:
    """‖div V‖ / reference."""
    scale = reference if reference > 0 else 1.0
    return l2_norm(divergence(V, grid)) / scale


def overshoot(S: ScalarField, cap: float = INFLOW_SATURATION) -> float:
    """max(S − cap, −S, 0) over the grid."""
    values = S.values
    return float(max(np.max(values - cap), np.max(-values), 0.0))


def inflow_energy_rate(inflow_u: np.ndarray, inflow_saturation: np.ndarray, M: float, dz: float) -> float:
    """∫₀¹ 2·U_inflow·(f(S_in)·S_in − F(S_in)) dz on the inflow faces."""
    s = np.asarray(inflow_saturation, dtype=float)
    integrand = 2.0 * np.asarray(inflow_u) * (frac_flow(s, M) * s - frac_flow_primitive(s, M))
    return float(dz * np.sum(integrand))


def inflow_energy_budget(rates, dts) -> float:
    """Time integral of inflow_energy_rate over accepted steps."""
    return float(sum(r * dt for r, dt in zip(rates, dts)))
