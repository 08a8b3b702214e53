"""Unpreconditioned conjugate gradients for LinearOperatorSpec systems."""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from src.common.errors import ContractViolation, SolverError
from src.grid.fields import ScalarField
from src.grid.linear_operator import LinearOperatorSpec

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
# relative tolerance for the mean of a pure-Neumann right-hand side
COMPATIBILITY_TOL = 1e-12


@dataclass(frozen=True)
class CgResult:
    solution: ScalarField
    iterations: int
    relative_residual: float
    residual_history: tuple


def default_max_iter(op: LinearOperatorSpec) -> int:
    return 10 * op.grid.nx * op.grid.nz


def cg_solve(
    op: LinearOperatorSpec,
    rhs: ScalarField,
    tol: float = DEFAULT_TOL,
    max_iter: Optional[int] = None,
    x0: Optional[ScalarField] = None,
    callback: Optional[Callable[[np.ndarray], None]] = None,
) -> CgResult:
    """Solve op·x = rhs to ‖op·x − rhs‖/‖rhs‖ <= tol.

    The recursive residual is re-verified against the true residual before
    returning; CG restarts from the true residual if the two drifted apart.
    Pure-Neumann systems need a mean-zero rhs and return the zero-mean solution.
    """
    if rhs.grid != op.grid:
        raise ContractViolation("rhs grid does not match the operator grid")
    max_iter = default_max_iter(op) if max_iter is None else int(max_iter)
    singular = op.is_singular

    b = np.array(rhs.values, dtype=float)
    if singular:
        if abs(b.sum()) > COMPATIBILITY_TOL * max(1.0, float(np.abs(b).sum())):
            raise ContractViolation("pure-Neumann right-hand side is not mean-zero")
        b = b - b.mean()
    b_norm = float(np.linalg.norm(b))

    if b_norm == 0.0:
        return CgResult(ScalarField.zeros(op.grid), 0, 0.0, ())

    x = np.zeros(op.grid.shape) if x0 is None else np.array(x0.values, dtype=float)

    def project(v: np.ndarray) -> np.ndarray:
        return v - v.mean() if singular else v

    history = []
    iterations = 0
    while True:
        r = project(b - op.apply(x))
        relative = float(np.linalg.norm(r)) / b_norm
        if relative <= tol:
            break
        if iterations >= max_iter:
            raise SolverError(
                f"CG did not converge in {iterations} iterations (relative residual {relative:.3e})",
                residual=relative,
                iterations=iterations,
            )
        p = r.copy()
        rr = float(np.vdot(r, r))
        while iterations < max_iter:
            Ap = project(op.apply(p))
            curvature = float(np.vdot(p, Ap))
            if curvature <= 0.0:
                raise ContractViolation(f"operator is not positive definite (p·Ap = {curvature:.3e})")
            alpha = rr / curvature
            x += alpha * p
            r -= alpha * Ap
            iterations += 1
            rr_next = float(np.vdot(r, r))
            history.append(np.sqrt(rr_next) / b_norm)
            if callback is not None:
                callback(x.copy())
            if np.sqrt(rr_next) <= tol * b_norm:
                break
            p = r + (rr_next / rr) * p
            rr = rr_next

    if singular:
        x -= x.mean()
    logger.debug("CG converged in %d iterations, relative residual %.3e", iterations, relative)
    return CgResult(ScalarField(op.grid, x), iterations, relative, tuple(history))
