import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import trapezoid

from src.common.errors import ParameterError
from src.model.constitutive import (
    frac_flow,
    frac_flow_derivative,
    frac_flow_primitive,
    max_frac_flow_slope,
    total_mobility,
)

saturations = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
ratios = st.floats(min_value=1e-2, max_value=1e2, allow_nan=False)


class TestFracFlow:

    @pytest.mark.parametrize("S, expected", [(0.0, 0.0), (1.0, 1.0), (0.5, 2.0 / 3.0)])
    def test_reference_values(self, S, expected):
        assert frac_flow(S, 2.0) == pytest.approx(expected, abs=1e-15)

    def test_scalar_in_float_out(self):
        assert isinstance(frac_flow(0.3, 2.0), float)
        assert frac_flow(np.array([0.3, 0.4]), 2.0).shape == (2,)

    def test_clamps_out_of_range_saturation(self):
        assert frac_flow(1.2, 2.0) == 1.0
        assert frac_flow(-0.1, 2.0) == 0.0

    @pytest.mark.parametrize("bad", [float("nan"), float("inf")])
    def test_non_finite_saturation_rejected(self, bad):
        with pytest.raises(ParameterError):
            frac_flow(bad, 2.0)

    @pytest.mark.parametrize("M", [0.0, -1.0, float("nan")])
    def test_bad_viscosity_ratio_rejected(self, M):
        with pytest.raises(ParameterError):
            frac_flow(0.5, M)
        with pytest.raises(ParameterError):
            total_mobility(0.5, M)

    @given(a=saturations, b=saturations, M=ratios)
    def test_monotone(self, a, b, M):
        lo, hi = min(a, b), max(a, b)
        assert frac_flow(lo, M) <= frac_flow(hi, M)

    @given(S=saturations, M=ratios)
    def test_times_mobility_is_invading_mobility(self, S, M):
        assert math.isclose(frac_flow(S, M) * total_mobility(S, M), M * S**2, rel_tol=1e-13, abs_tol=1e-300)

    def test_derivative_matches_central_difference(self):
        S = np.linspace(0.05, 0.95, 19)
        h = 1e-6
        fd = (frac_flow(S + h, 2.0) - frac_flow(S - h, 2.0)) / (2 * h)
        np.testing.assert_allclose(frac_flow_derivative(S, 2.0), fd, rtol=1e-7)

    def test_max_slope_bounds_sampled_derivative(self):
        slope = max_frac_flow_slope(2.0)
        assert 2.0 < slope < 2.2
        assert np.all(frac_flow_derivative(np.linspace(0, 1, 101), 2.0) <= slope + 1e-12)


class TestTotalMobility:

    @pytest.mark.parametrize("S, expected", [(0.0, 1.0), (1.0, 2.0), (1.0 / 3.0, 2.0 / 3.0)])
    def test_reference_values(self, S, expected):
        assert total_mobility(S, 2.0) == pytest.approx(expected, abs=1e-15)

    @given(S=saturations, M=ratios)
    def test_bounded_below(self, S, M):
        assert total_mobility(S, M) >= M / (1.0 + M) * (1.0 - 1e-13)


class TestPrimitive:

    def test_zero_at_zero(self):
        assert frac_flow_primitive(0.0, 2.0) == 0.0

    def test_symmetric_case_integrates_to_half(self):
        assert frac_flow_primitive(1.0, 1.0) == pytest.approx(0.5, abs=1e-10)

    def test_matches_fine_trapezoid(self):
        q = np.linspace(0.0, 0.5, 1_000_001)
        oracle = trapezoid(frac_flow(q, 2.0), q)
        assert frac_flow_primitive(0.5, 2.0) == pytest.approx(oracle, abs=1e-10)

    def test_monotone_on_array(self):
        values = frac_flow_primitive(np.linspace(0, 1, 21), 2.0)
        assert np.all(np.diff(values) >= 0)


def test_random_sample_identities(rng):
    S = rng.uniform(0.0, 1.0, 10_000)
    M = rng.uniform(0.1, 10.0, 10_000)
    lam = np.array([total_mobility(s, m) for s, m in zip(S, M)])
    f = np.array([frac_flow(s, m) for s, m in zip(S, M)])
    np.testing.assert_allclose(f * lam, M * S**2, rtol=1e-13, atol=1e-300)
    assert np.all(lam >= M / (1 + M) * (1 - 1e-13))
    order = np.argsort(S)
    for m in (0.1, 1.0, 10.0):
        assert np.all(np.diff(frac_flow(S[order], m)) >= 0)
