"""Runtime estimates, conservation audits and snapshot reports."""

from .estimates import (
    EstimateReport,
    energy_functional,
    energy_estimate,
    inflow_constant,
    pressure_anisotropy,
    l2_difference,
    mass_audit,
    divergence_residual,
    overshoot,
    inflow_energy_rate,
    inflow_energy_budget,
)
from .monitor import RunMonitor, MASS_THRESHOLD

__all__ = [
    "EstimateReport",
    "energy_functional",
    "energy_estimate",
    "inflow_constant",
    "pressure_anisotropy",
    "l2_difference",
    "mass_audit",
    "divergence_residual",
    "overshoot",
    "inflow_energy_rate",
    "inflow_energy_budget",
    "RunMonitor",
    "MASS_THRESHOLD",
]
