"""Dimensional → dimensionless parameter map."""

import logging

from src.model.types import DimensionlessParams, PhysicalSetup

logger = logging.getLogger(__name__)


def nondimensionalize(setup: PhysicalSetup, u_hat_inflow: float = 1.0, end_time_T: float = 0.3) -> DimensionlessParams:
    """γ = H/L, β₁ = μ_e/L², β₂ = μ_e/H²; the viscosity ratio passes through."""
    params = DimensionlessParams(
        gamma=setup.width_H / setup.length_L,
        beta1=setup.effective_viscosity_mue / setup.length_L**2,
        beta2=setup.effective_viscosity_mue / setup.width_H**2,
        viscosity_ratio_M=setup.viscosity_ratio_M,
        u_hat_inflow=u_hat_inflow,
        end_time_T=end_time_T,
    )
    logger.debug("nondimensionalized %s -> %s", setup, params)
    return params


def setup_for_gamma(gamma: float, length_L: float = 5.0, **kwargs) -> PhysicalSetup:
    """Reference geometry family: fixed L, H = γ·L."""
    return PhysicalSetup(length_L=length_L, width_H=gamma * length_L, **kwargs)


def physical_time(t: float, setup: PhysicalSetup) -> float:
    """Dimensionless time → seconds."""
    return t * setup.time_scale
