"""Staggered grid over the dimensionless unit square and the fields living on it.

Cell arrays are shaped (nx, nz) and indexed [i, j] with i along x. Vertical
faces carry U and are shaped (nx + 1, nz); horizontal faces carry Q and are
shaped (nx, nz + 1).
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from src.common.errors import ContractViolation, ParameterError


@dataclass(frozen=True)
class GridSpec:
    nx: int
    nz: int

    def __post_init__(self):
        # solvers additionally require nx, nz >= 2 (checked at config time)
        if int(self.nx) != self.nx or int(self.nz) != self.nz or self.nx < 1 or self.nz < 1:
            raise ParameterError(f"grid needs positive integer cell counts, got {self.nx}x{self.nz}")

    @property
    def dx(self) -> float:
        return 1.0 / self.nx

    @property
    def dz(self) -> float:
        return 1.0 / self.nz

    @property
    def shape(self) -> tuple:
        return (self.nx, self.nz)

    @property
    def cell_area(self) -> float:
        return self.dx * self.dz

    @property
    def x_centers(self) -> np.ndarray:
        return (np.arange(self.nx) + 0.5) * self.dx

    @property
    def z_centers(self) -> np.ndarray:
        return (np.arange(self.nz) + 0.5) * self.dz

    @property
    def x_faces(self) -> np.ndarray:
        return np.arange(self.nx + 1) * self.dx

    @property
    def z_faces(self) -> np.ndarray:
        return np.arange(self.nz + 1) * self.dz

    def mesh(self):
        """Cell-centre coordinates as two (nx, nz) arrays."""
        return np.meshgrid(self.x_centers, self.z_centers, indexing="ij")


def _frozen_array(values, shape: tuple, what: str) -> np.ndarray:
    array = np.array(values, dtype=float)
    if array.shape != shape:
        raise ContractViolation(f"{what} has shape {array.shape}, expected {shape}")
    if not np.all(np.isfinite(array)):
        raise ParameterError(f"{what} contains non-finite entries")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Cell-centred scalar (saturation, pressure, increments)."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen_array(self.values, self.grid.shape, "ScalarField"))

    @classmethod
    def zeros(cls, grid: GridSpec) -> "ScalarField":
        return cls(grid, np.zeros(grid.shape))

    @classmethod
    def constant(cls, grid: GridSpec, value: float) -> "ScalarField":
        return cls(grid, np.full(grid.shape, float(value)))

    @classmethod
    def from_function(cls, grid: GridSpec, fn: Callable) -> "ScalarField":
        """Sample fn(x, z) at cell centres."""
        x, z = grid.mesh()
        return cls(grid, np.broadcast_to(fn(x, z), grid.shape))

    def with_values(self, values) -> "ScalarField":
        return ScalarField(self.grid, values)

    def __sub__(self, other: "ScalarField") -> "ScalarField":
        require_same_grid(self.grid, other.grid)
        return ScalarField(self.grid, self.values - other.values)

    def __add__(self, other: "ScalarField") -> "ScalarField":
        require_same_grid(self.grid, other.grid)
        return ScalarField(self.grid, self.values + other.values)


@dataclass(frozen=True, eq=False)
class FaceField:
    """Face-centred velocity or flux: u on vertical faces, q on horizontal faces."""

    grid: GridSpec
    u_faces: np.ndarray
    q_faces: np.ndarray

    def __post_init__(self):
        nx, nz = self.grid.shape
        object.__setattr__(self, "u_faces", _frozen_array(self.u_faces, (nx + 1, nz), "FaceField.u_faces"))
        object.__setattr__(self, "q_faces", _frozen_array(self.q_faces, (nx, nz + 1), "FaceField.q_faces"))

    @classmethod
    def zeros(cls, grid: GridSpec) -> "FaceField":
        return cls(grid, np.zeros((grid.nx + 1, grid.nz)), np.zeros((grid.nx, grid.nz + 1)))

    @property
    def inflow_u(self) -> np.ndarray:
        """Velocities on the x = 0 faces."""
        return self.u_faces[0]


def require_same_grid(a: GridSpec, b: GridSpec) -> None:
    if a != b:
        raise ContractViolation(f"grid mismatch: {a.nx}x{a.nz} vs {b.nx}x{b.nz}")
