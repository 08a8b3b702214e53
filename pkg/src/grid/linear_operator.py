"""Matrix-free five-point operators on the cell grid.

    (A x)_c = shift·x_c + Σ_faces w_f (x_c - x_nbr)

Dirichlet sides treat the exterior value as data (moved to the right-hand
side by `dirichlet_rhs`); Neumann sides drop the boundary face. With
nonnegative weights and shift > 0, or at least one Dirichlet side, A is SPD.
"""

from dataclasses import dataclass, field
from typing import Dict, Literal, Union

import numpy as np
from scipy.sparse.linalg import LinearOperator

from src.common.errors import ContractViolation
from src.grid.fields import GridSpec

SIDES = ("left", "right", "bottom", "top")


@dataclass(frozen=True)
class BoundaryCondition:
    kind: Literal["dirichlet", "neumann"] = "neumann"
    value: Union[float, np.ndarray] = 0.0

    @property
    def is_dirichlet(self) -> bool:
        return self.kind == "dirichlet"


NEUMANN = BoundaryCondition("neumann")


def dirichlet(value=0.0) -> BoundaryCondition:
    return BoundaryCondition("dirichlet", value)


@dataclass(frozen=True, eq=False)
class LinearOperatorSpec:
    grid: GridSpec
    wx: np.ndarray  # (nx + 1, nz) vertical-face weights
    wz: np.ndarray  # (nx, nz + 1) horizontal-face weights
    shift: float = 0.0
    bc: Dict[str, BoundaryCondition] = field(default_factory=dict)

    def __post_init__(self):
        nx, nz = self.grid.shape
        if np.shape(self.wx) != (nx + 1, nz) or np.shape(self.wz) != (nx, nz + 1):
            raise ContractViolation("operator weights do not conform to the grid")
        if np.any(np.asarray(self.wx) < 0) or np.any(np.asarray(self.wz) < 0) or self.shift < 0:
            raise ContractViolation("operator weights and shift must be nonnegative")
        unknown = set(self.bc) - set(SIDES)
        if unknown:
            raise ContractViolation(f"unknown boundary sides: {sorted(unknown)}")

    def side(self, name: str) -> BoundaryCondition:
        return self.bc.get(name, NEUMANN)

    @property
    def is_singular(self) -> bool:
        """Pure Neumann without shift: constants span the null space."""
        return self.shift == 0 and not any(self.side(s).is_dirichlet for s in SIDES)

    def apply(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float).reshape(self.grid.shape)
        y = self.shift * x

        fx = self.wx[1:-1] * (x[1:] - x[:-1])
        y[1:] += fx
        y[:-1] -= fx
        fz = self.wz[:, 1:-1] * (x[:, 1:] - x[:, :-1])
        y[:, 1:] += fz
        y[:, :-1] -= fz

        if self.side("left").is_dirichlet:
            y[0] += self.wx[0] * x[0]
        if self.side("right").is_dirichlet:
            y[-1] += self.wx[-1] * x[-1]
        if self.side("bottom").is_dirichlet:
            y[:, 0] += self.wz[:, 0] * x[:, 0]
        if self.side("top").is_dirichlet:
            y[:, -1] += self.wz[:, -1] * x[:, -1]
        return y

    def dirichlet_rhs(self) -> np.ndarray:
        """Contribution of the boundary data to the right-hand side."""
        b = np.zeros(self.grid.shape)
        if self.side("left").is_dirichlet:
            b[0] += self.wx[0] * self.side("left").value
        if self.side("right").is_dirichlet:
            b[-1] += self.wx[-1] * self.side("right").value
        if self.side("bottom").is_dirichlet:
            b[:, 0] += self.wz[:, 0] * self.side("bottom").value
        if self.side("top").is_dirichlet:
            b[:, -1] += self.wz[:, -1] * self.side("top").value
        return b

    def as_linear_operator(self) -> LinearOperator:
        n = self.grid.nx * self.grid.nz
        return LinearOperator((n, n), matvec=lambda v: self.apply(v).ravel(), dtype=float)

    def to_dense(self) -> np.ndarray:
        """Assembled matrix in C-order flattening; for small grids and tests."""
        n = self.grid.nx * self.grid.nz
        return self.as_linear_operator().matmat(np.eye(n))
