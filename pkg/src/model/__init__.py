"""Core model: domain types, constitutive laws, profiles, nondimensionalization."""

from .profiles import inflow_profile, constant_profile, decay, initial_saturation, INFLOW_SATURATION
from .types import PhysicalSetup, DimensionlessParams, BoundaryData
from .constitutive import (
    frac_flow,
    frac_flow_derivative,
    frac_flow_primitive,
    total_mobility,
    max_frac_flow_slope,
)
from .nondim import nondimensionalize, setup_for_gamma, physical_time

__all__ = [
    "inflow_profile",
    "constant_profile",
    "decay",
    "initial_saturation",
    "INFLOW_SATURATION",
    "PhysicalSetup",
    "DimensionlessParams",
    "BoundaryData",
    "frac_flow",
    "frac_flow_derivative",
    "frac_flow_primitive",
    "total_mobility",
    "max_frac_flow_slope",
    "nondimensionalize",
    "setup_for_gamma",
    "physical_time",
]
