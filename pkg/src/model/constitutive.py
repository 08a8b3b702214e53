"""Constitutive laws: quadratic Corey mobilities.

    λ_i(S) = M S²,  λ_d(S) = (1 - S)²,  λ_tot = λ_i + λ_d,  f = λ_i / λ_tot

All functions clamp S to [0, 1] before evaluation; the transported field is
never clamped. Scalars in, floats out; arrays in, arrays out.
"""

import math
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from src.common.errors import ParameterError

PRIMITIVE_ABS_TOL = 1e-10
SLOPE_SAMPLE_SPACING = 1e-3


def _check_ratio(M: float) -> float:
    M = float(M)
    if not math.isfinite(M) or M <= 0:
        raise ParameterError(f"viscosity ratio M must be finite and > 0, got {M!r}")
    return M


def _clamped(S) -> np.ndarray:
    values = np.asarray(S, dtype=float)
    if not np.all(np.isfinite(values)):
        raise ParameterError("saturation must be finite")
    return np.clip(values, 0.0, 1.0)


def _like_input(S, values: np.ndarray):
    return float(values) if np.ndim(S) == 0 else values


def total_mobility(S, M: float):
    """λ_tot(S) = M S² + (1 - S)², bounded below by M/(1+M)."""
    M = _check_ratio(M)
    s = _clamped(S)
    return _like_input(S, M * s**2 + (1.0 - s) ** 2)


def frac_flow(S, M: float):
    """f(S) = M S² / (M S² + (1 - S)²)."""
    M = _check_ratio(M)
    s = _clamped(S)
    invading = M * s**2
    return _like_input(S, invading / (invading + (1.0 - s) ** 2))


def frac_flow_derivative(S, M: float):
    """f'(S) = 2 M S (1 - S) / λ_tot(S)²."""
    M = _check_ratio(M)
    s = _clamped(S)
    mobility = M * s**2 + (1.0 - s) ** 2
    return _like_input(S, 2.0 * M * s * (1.0 - s) / mobility**2)


@lru_cache(maxsize=64)
def max_frac_flow_slope(M: float) -> float:
    """Lipschitz constant of f, sampled on a uniform 1e-3 grid of [0, 1]."""
    samples = np.linspace(0.0, 1.0, int(round(1.0 / SLOPE_SAMPLE_SPACING)) + 1)
    return float(np.max(frac_flow_derivative(samples, M)))


@lru_cache(maxsize=4096)
def _primitive(s: float, M: float) -> float:
    if s == 0.0:
        return 0.0
    value, _ = quad(lambda q: frac_flow(q, M), 0.0, s, epsabs=PRIMITIVE_ABS_TOL, epsrel=0.0, limit=200)
    return value


def frac_flow_primitive(S, M: float):
    """F(S) = ∫_0^S f(q) dq by adaptive quadrature (abs tol 1e-10), cached per (S, M)."""
    M = _check_ratio(M)
    s = _clamped(S)
    if np.ndim(S) == 0:
        return _primitive(float(s), M)
    return np.vectorize(lambda v: _primitive(float(v), M), otypes=[float])(s)
