import math

import numpy as np
import pytest

from src.common.errors import CflViolation, ParameterError
from src.grid.fields import FaceField, GridSpec, ScalarField
from src.model.types import DimensionlessParams
from src.solvers.base_solver import default_snapshot_times, initial_saturation_field
from src.solvers.btp import BtpSolver
from src.solvers.bve import BveSolver
from src.solvers.registry import get_all_solvers, get_solver
from src.solvers.regularization import is_identity, regularization_operator, regularized_mass
from src.solvers.state import TimeStepConfig


class TestTimeStepConfig:

    @pytest.mark.parametrize(
        "kwargs",
        [{"cfl_number": 0.0}, {"cfl_number": 1.0}, {"dt_max": 0.0}, {"cg_tol": 0.0}, {"cg_max_iter": 0}],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ParameterError):
            TimeStepConfig(**kwargs)


class TestRegularization:

    def test_identity_when_unregularized(self, hyperbolic_params, small_grid):
        assert is_identity(hyperbolic_params)
        op = regularization_operator(small_grid, hyperbolic_params)
        x = np.arange(small_grid.nx * small_grid.nz, dtype=float).reshape(small_grid.shape)
        np.testing.assert_array_equal(op.apply(x), x)

    def test_mass_of_constant_field(self, params, small_grid):
        op = regularization_operator(small_grid, params)
        S = ScalarField.constant(small_grid, 0.5)
        # only the Dirichlet inflow face sees a constant field
        expected = 0.5 + params.beta1 / small_grid.dx
        assert regularized_mass(S, op) == pytest.approx(expected, rel=1e-13)


class TestSolverLoop:

    def test_default_snapshots(self):
        assert default_snapshot_times(0.3) == [0.0, 0.15, 0.3]
        assert default_snapshot_times(0.0) == [0.0]

    def test_initial_field_matches_inflow(self, bc, small_grid):
        S0 = initial_saturation_field(small_grid, bc)
        assert S0.values.max() <= 0.9
        assert S0.values[0].max() > 0.0

    def test_cfl_limit_of_resting_fluid_is_infinite(self, params, bc, small_grid):
        solver = BveSolver(params, bc, small_grid)
        assert math.isinf(solver.cfl_limit(FaceField.zeros(small_grid)))

    def test_cfl_violation_suggests_step(self, params, bc, small_grid):
        solver = BveSolver(params, bc, small_grid)
        state = solver.initial_state()
        limit = solver.cfl_limit(state.V)
        with pytest.raises(CflViolation) as info:
            solver.advance(state, 2 * limit)
        assert info.value.suggested_dt == pytest.approx(limit)
        assert info.value.dt == pytest.approx(2 * limit)

    @pytest.mark.parametrize("dt", [0.0, -1e-3, float("nan")])
    def test_invalid_step(self, params, bc, small_grid, dt):
        solver = BveSolver(params, bc, small_grid)
        with pytest.raises(ParameterError):
            solver.advance(solver.initial_state(), dt)

    def test_next_dt_respects_all_limits(self, params, bc, small_grid):
        solver = BveSolver(params, bc, small_grid, TimeStepConfig(dt_max=1.0))
        state = solver.initial_state()
        assert solver.next_dt(state, 1.0) == pytest.approx(solver.cfl_limit(state.V))
        assert solver.next_dt(state, 1e-6) == pytest.approx(1e-6)

    def test_snapshot_times_validated(self, params, bc, small_grid):
        with pytest.raises(ParameterError):
            BveSolver(params, bc, small_grid).run([0.0, 1.0])

    def test_custom_snapshots_and_final_time(self, params, bc, small_grid, cfg):
        traj = BveSolver(params, bc, small_grid, cfg).run([0.005])
        assert [s.time for s in traj.snapshots] == [0.005]
        assert traj.steps > 0
        with pytest.raises(KeyError):
            traj.at(0.02)

    def test_initial_field_override(self, params, bc, small_grid):
        initial = ScalarField.constant(small_grid, 0.2)
        solver = BveSolver(params.with_gamma(1.0), bc, small_grid, initial=initial)
        np.testing.assert_array_equal(solver.initial_state().S.values, 0.2)


class TestRegistry:

    def test_lookup(self):
        assert get_solver("btp") is BtpSolver
        assert get_solver("BVE") is BveSolver
        assert {cls.name for cls in get_all_solvers()} == {"btp", "bve"}

    def test_unknown_model(self):
        with pytest.raises(ParameterError):
            get_solver("darcy")
