"""
Experiment configuration.
TOML file in, validated pydantic models out; these define the contract
between the config file and the solvers.
"""

import tomllib
from pathlib import Path
from typing import List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.common.errors import ConfigValidationError, ParameterError
from src.model.nondim import nondimensionalize
from src.model.types import DimensionlessParams, PhysicalSetup
from src.solvers.base_solver import default_snapshot_times
from src.solvers.state import TimeStepConfig
from src.grid.fields import GridSpec

DEFAULT_GAMMA_LIST = "1, 0.2, 0.04"


def _parse_number_list(value) -> List[float]:
    """Accepts a TOML array or a comma-separated string."""
    if isinstance(value, str):
        parts = [p.strip() for p in value.split(",") if p.strip()]
        try:
            return [float(p) for p in parts]
        except ValueError:
            raise ValueError(f"not a comma-separated list of numbers: {value!r}") from None
    if isinstance(value, (int, float)):
        return [float(value)]
    return [float(v) for v in value]


class _Block(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


# =============================================================================
# Sections
# =============================================================================

class GridBlock(_Block):
    nx: int = 250
    nz: int = 50

    @field_validator("nx", "nz")
    @classmethod
    def _at_least_two(cls, v, info):
        if v < 2:
            raise ValueError(f"{info.field_name} must be ≥ 2")
        return v

    def spec(self) -> GridSpec:
        return GridSpec(self.nx, self.nz)


class PhysicalBlock(_Block):
    """Dimensional setup; defaults give γ = 0.2."""
    length_L: float = Field(5.0, gt=0)
    width_H: float = Field(1.0, gt=0)
    inflow_speed_q: float = Field(1.0, gt=0)
    viscosity_defending_mud: float = Field(1.0, gt=0)
    viscosity_ratio_M: float = Field(2.0, gt=0)
    effective_viscosity_mue: float = Field(1e-2, gt=0)
    mean_perm_kx: float = Field(1.0, gt=0)
    mean_perm_kz: float = Field(1.0, gt=0)

    @model_validator(mode="after")
    def _thin(self):
        if self.width_H > self.length_L:
            raise ValueError("width_H must not exceed length_L")
        return self

    def setup(self) -> PhysicalSetup:
        return PhysicalSetup(**self.model_dump())


class DimensionlessBlock(_Block):
    gamma: float = Field(..., gt=0, le=1)
    beta1: float = Field(..., ge=0)
    beta2: float = Field(..., ge=0)
    viscosity_ratio_M: float = Field(2.0, gt=0)


class RunBlock(_Block):
    model: Literal["btp", "bve", "both"] = "both"
    end_time_T: float = Field(0.3, ge=0)
    u_hat_inflow: float = Field(1.0, gt=0)
    snapshot_times: Optional[List[float]] = None
    # seeds randomized checks only; the solvers are deterministic
    seed: int = Field(0, ge=0)

    @field_validator("snapshot_times", mode="before")
    @classmethod
    def _parse_times(cls, v):
        return None if v is None else _parse_number_list(v)

    @model_validator(mode="after")
    def _times_in_range(self):
        for t in self.snapshot_times or []:
            if not 0.0 <= t <= self.end_time_T:
                raise ValueError(f"snapshot time {t!r} outside [0, {self.end_time_T}]")
        return self


class SweepBlock(_Block):
    gamma_list: List[float] = Field(default_factory=lambda: _parse_number_list(DEFAULT_GAMMA_LIST))

    @field_validator("gamma_list", mode="before")
    @classmethod
    def _parse(cls, v):
        return _parse_number_list(v)

    @field_validator("gamma_list")
    @classmethod
    def _decreasing(cls, v):
        if not v:
            raise ValueError("gamma_list must not be empty")
        if any(not 0.0 < g <= 1.0 for g in v):
            raise ValueError("gamma_list values must lie in (0, 1]")
        if any(b >= a for a, b in zip(v, v[1:])):
            raise ValueError("gamma_list must be strictly decreasing")
        return v


class TimeStepBlock(_Block):
    cfl_number: float = Field(0.45, gt=0, lt=1)
    dt_max: float = Field(1e-2, gt=0)
    cg_tol: float = Field(1e-10, gt=0, lt=1)
    cg_max_iter: int = Field(0, ge=0)  # 0: 10·nx·nz
    regularization_tol: float = Field(1e-11, gt=0, lt=1)

    def config(self) -> TimeStepConfig:
        return TimeStepConfig(
            cfl_number=self.cfl_number,
            dt_max=self.dt_max,
            cg_tol=self.cg_tol,
            cg_max_iter=self.cg_max_iter or None,
            regularization_tol=self.regularization_tol,
        )


class OutputBlock(_Block):
    directory: str = "runs"


# =============================================================================
# Experiment
# =============================================================================

class ExperimentConfig(_Block):
    grid: GridBlock = Field(default_factory=GridBlock)
    physical: Optional[PhysicalBlock] = None
    dimensionless: Optional[DimensionlessBlock] = None
    run: RunBlock = Field(default_factory=RunBlock)
    sweep: SweepBlock = Field(default_factory=SweepBlock)
    timestep: TimeStepBlock = Field(default_factory=TimeStepBlock)
    output: OutputBlock = Field(default_factory=OutputBlock)

    @model_validator(mode="after")
    def _one_parameter_block(self):
        if self.physical is not None and self.dimensionless is not None:
            raise ValueError("give either [physical] or [dimensionless], not both")
        # surfaces cross-field range errors (beta1 > beta2, ...) at load time
        self.params()
        return self

    # --- derived objects ---

    @property
    def grid_spec(self) -> GridSpec:
        return self.grid.spec()

    @property
    def timestep_config(self) -> TimeStepConfig:
        return self.timestep.config()

    @property
    def snapshot_times(self) -> List[float]:
        if self.run.snapshot_times is None:
            return default_snapshot_times(self.run.end_time_T)
        return sorted(set(self.run.snapshot_times))

    def rng(self) -> np.random.Generator:
        """Random generator seeded from [run] seed."""
        return np.random.default_rng(self.run.seed)

    def params(self) -> DimensionlessParams:
        """Dimensionless parameters of the configured geometry."""
        if self.dimensionless is not None:
            d = self.dimensionless
            return DimensionlessParams(
                gamma=d.gamma,
                beta1=d.beta1,
                beta2=d.beta2,
                viscosity_ratio_M=d.viscosity_ratio_M,
                u_hat_inflow=self.run.u_hat_inflow,
                end_time_T=self.run.end_time_T,
            )
        physical = self.physical or PhysicalBlock()
        return nondimensionalize(physical.setup(), self.run.u_hat_inflow, self.run.end_time_T)

    def params_for_gamma(self, gamma: float) -> DimensionlessParams:
        """Same L and μ_e with H = γ·L."""
        return self.params().with_gamma(gamma)

    def with_overrides(
        self,
        output: Optional[str] = None,
        model: Optional[str] = None,
        gamma: Optional[float] = None,
    ) -> "ExperimentConfig":
        """Copy with CLI overrides applied and re-validated."""
        data = self.model_dump()
        if output is not None:
            data["output"]["directory"] = output
        if model is not None:
            data["run"]["model"] = model
        if gamma is not None:
            data["sweep"]["gamma_list"] = [gamma]
            base = self.params()
            if self.dimensionless is not None:
                data["dimensionless"].update(gamma=gamma, beta2=base.beta1 / gamma**2)
            else:
                physical = data["physical"] or PhysicalBlock().model_dump()
                physical["width_H"] = gamma * physical["length_L"]
                data["physical"] = physical
        return build_config(data)


def _error_key(error: dict) -> str:
    loc = [str(part) for part in error.get("loc", ()) if not isinstance(part, int)]
    return ".".join(loc) if loc else "config"


def _error_message(error: dict) -> str:
    ctx_error = (error.get("ctx") or {}).get("error")
    if isinstance(ctx_error, Exception):
        return str(ctx_error)
    return error.get("msg", "invalid value")


def build_config(data: dict) -> ExperimentConfig:
    """Validate a parsed mapping; pydantic errors become ConfigValidationError."""
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        raise ConfigValidationError(_error_key(first), _error_message(first)) from exc
    except ParameterError as exc:
        raise ConfigValidationError("config", str(exc)) from exc


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    """Read a TOML experiment file; an empty file yields the defaults."""
    path = Path(path)
    try:
        with open(path, "rb") as f:
            data = tomllib.load(f)
    except FileNotFoundError as exc:
        raise ConfigValidationError("config", f"no such file: {path}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigValidationError("config", f"{path}: {exc}") from exc
    return build_config(data)

