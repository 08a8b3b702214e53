"""Independent 1-D upwind + pseudo-parabolic integrator for height-independent runs."""

import numpy as np
from scipy import linalg

from src.model.constitutive import frac_flow, total_mobility
from src.model.profiles import decay


def unit_velocity(S, params):
    return 1.0


def darcy_velocity(S, params, dp=1.0):
    """Total velocity of a 1-D column under pressure drop dp: TPFA resistances add up to dx·Σ 1/λ."""
    dx = 1.0 / S.size
    return dp / (dx * np.sum(1.0 / total_mobility(S, params.M)))


def reference_1d(nx, params, dt_max, snapshot_times, inflow=0.9, velocity=unit_velocity):
    dx = 1.0 / nx
    x = (np.arange(nx) + 0.5) * dx
    S = decay(x) * inflow
    w = params.beta1 / dx**2
    diag = np.full(nx, 1.0 + 2.0 * w)
    diag[0] = 1.0 + 3.0 * w
    diag[-1] = 1.0 + w
    banded = np.zeros((3, nx))
    banded[0, 1:] = -w
    banded[1] = diag
    banded[2, :-1] = -w
    f_in = frac_flow(inflow, params.M)

    t = 0.0
    eps = 1e-12 * max(1.0, params.end_time_T)
    out = {0.0: S.copy()}
    for target in snapshot_times[1:]:
        while target - t > eps:
            dt = min(dt_max, target - t)
            U = velocity(S, params)
            F = U * np.concatenate([[f_in], frac_flow(S, params.M)])
            rhs = -dt * (F[1:] - F[:-1]) / dx
            S = S + linalg.solve_banded((1, 1), banded, rhs)
            t = t + dt
        t = target
        out[target] = S.copy()
    return out
