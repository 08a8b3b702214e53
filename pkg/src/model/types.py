"""Domain value types for the thin-domain two-phase model."""

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from src.common.errors import ParameterError
from src.model.profiles import inflow_profile


def _require_positive(name: str, value: float) -> None:
    if not math.isfinite(value) or value <= 0:
        raise ParameterError(f"{name} must be finite and > 0, got {value!r}")


@dataclass(frozen=True)
class PhysicalSetup:
    """Dimensional description of a thin rectangular reservoir (L × H)."""

    length_L: float = 5.0
    width_H: float = 1.0
    inflow_speed_q: float = 1.0
    viscosity_defending_mud: float = 1.0
    viscosity_ratio_M: float = 2.0
    effective_viscosity_mue: float = 1e-2
    mean_perm_kx: float = 1.0
    mean_perm_kz: float = 1.0

    def __post_init__(self):
        for name in (
            "length_L",
            "width_H",
            "inflow_speed_q",
            "viscosity_defending_mud",
            "viscosity_ratio_M",
            "effective_viscosity_mue",
            "mean_perm_kx",
            "mean_perm_kz",
        ):
            _require_positive(name, getattr(self, name))
        if self.width_H > self.length_L:
            raise ParameterError(
                f"width_H={self.width_H!r} exceeds length_L={self.length_L!r}: the domain is not thin"
            )

    @property
    def time_scale(self) -> float:
        """Seconds per dimensionless time unit (L/q)."""
        return self.length_L / self.inflow_speed_q

    @property
    def anisotropy_ratio(self) -> float:
        """σ = k_z/k_x. Reported only; the solvers assume σ = 1."""
        return self.mean_perm_kz / self.mean_perm_kx


@dataclass(frozen=True)
class DimensionlessParams:
    gamma: float
    beta1: float
    beta2: float
    viscosity_ratio_M: float = 2.0
    u_hat_inflow: float = 1.0
    end_time_T: float = 0.3

    def __post_init__(self):
        if not math.isfinite(self.gamma) or not 0.0 < self.gamma <= 1.0:
            raise ParameterError(f"gamma must lie in (0, 1], got {self.gamma!r}")
        for name in ("beta1", "beta2"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ParameterError(f"{name} must be finite and >= 0, got {value!r}")
        # H <= L forces beta1 <= beta2; allow round-off from the division
        if self.beta1 > self.beta2 * (1.0 + 1e-12):
            raise ParameterError(f"beta1={self.beta1!r} exceeds beta2={self.beta2!r}")
        _require_positive("viscosity_ratio_M", self.viscosity_ratio_M)
        _require_positive("u_hat_inflow", self.u_hat_inflow)
        if not math.isfinite(self.end_time_T) or self.end_time_T < 0:
            raise ParameterError(f"end_time_T must be finite and >= 0, got {self.end_time_T!r}")

    @property
    def M(self) -> float:
        return self.viscosity_ratio_M

    def with_gamma(self, gamma: float) -> "DimensionlessParams":
        """Same L and μ_e, new width: β₁ stays, β₂ = β₁/γ²."""
        return DimensionlessParams(
            gamma=gamma,
            beta1=self.beta1,
            beta2=self.beta1 / gamma**2,
            viscosity_ratio_M=self.viscosity_ratio_M,
            u_hat_inflow=self.u_hat_inflow,
            end_time_T=self.end_time_T,
        )


@dataclass(frozen=True)
class BoundaryData:
    inflow_saturation_profile: Callable[[np.ndarray], np.ndarray] = field(default=inflow_profile)
    pressure_inflow: float = 1.0
    pressure_outflow: float = 0.0

    def inflow_values(self, z: np.ndarray) -> np.ndarray:
        """Profile sampled at heights z, checked to stay inside [0, 1]."""
        values = np.asarray(self.inflow_saturation_profile(np.asarray(z, dtype=float)), dtype=float)
        values = np.broadcast_to(values, np.shape(z)).astype(float)
        if not np.all(np.isfinite(values)) or values.min(initial=0.0) < 0.0 or values.max(initial=0.0) > 1.0:
            raise ParameterError("inflow saturation profile must take values in [0, 1]")
        return values
