"""Initial and inflow saturation profiles of the reference displacement experiment."""

from typing import Callable

import numpy as np

INFLOW_SATURATION = 0.9
BAND_LOWER = 0.3
BAND_UPPER = 0.7
# steepness of the initial decay away from the inflow boundary
DECAY_COEFFICIENT = 1e5


def inflow_profile(z):
    """0.9 on the band 3/10 < z <= 7/10, zero elsewhere."""
    z = np.asarray(z, dtype=float)
    return np.where((z > BAND_LOWER) & (z <= BAND_UPPER), INFLOW_SATURATION, 0.0)


def constant_profile(value: float) -> Callable[[np.ndarray], np.ndarray]:
    """Height-independent inflow profile, used for dimensional-collapse checks."""

    def _profile(z):
        return np.full(np.shape(z), float(value))

    return _profile


def decay(x):
    """g(x) = (1-x)^2 / (1e5 x^2 + (1-x)^2); g(0)=1, g(1)=0."""
    x = np.asarray(x, dtype=float)
    return (1.0 - x) ** 2 / (DECAY_COEFFICIENT * x**2 + (1.0 - x) ** 2)


def initial_saturation(x, z, profile: Callable = inflow_profile):
    """S0(x, z) = g(x) * S_inflow(z); equals the inflow profile at x = 0."""
    result = decay(x) * profile(z)
    if np.ndim(result) == 0:
        return float(result)
    return result
