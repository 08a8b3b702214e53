import logging
from dataclasses import replace

import numpy as np
import pytest

from src.common.errors import ConservationViolation, ContractViolation
from src.diagnostics.estimates import (
    EstimateReport,
    divergence_residual,
    energy_estimate,
    energy_functional,
    inflow_constant,
    inflow_energy_budget,
    inflow_energy_rate,
    l2_difference,
    mass_audit,
    overshoot,
    pressure_anisotropy,
)
from src.diagnostics.monitor import RunMonitor
from src.grid.fields import FaceField, GridSpec, ScalarField
from src.model.constitutive import frac_flow, frac_flow_primitive
from src.model.types import DimensionlessParams
from src.solvers.btp import solve_pressure
from src.solvers.bve import BveSolver, run_bve


class TestEnergy:

    def test_initial_energy_below_bound(self, params, bc, small_grid):
        solver = BveSolver(params, bc, small_grid)
        state = solver.initial_state()
        c = inflow_constant(state.V.inflow_u, solver.inflow_saturation, params.M)
        E, bound = energy_estimate(state.S, params, c_inflow=c)
        assert c > 0
        assert E <= bound

    def test_zero_data(self, params, small_grid):
        E, bound = energy_estimate(ScalarField.zeros(small_grid), params)
        assert (E, bound) == (0.0, 0.0)

    def test_unregularized_energy_is_squared_norm(self, hyperbolic_params, rng):
        S = ScalarField(GridSpec(5, 5), rng.uniform(size=(5, 5)))
        assert energy_functional(S, hyperbolic_params) == pytest.approx(np.sum(S.values**2) / 25, rel=1e-14)

    def test_inflow_constant(self):
        assert inflow_constant(np.array([1.0, -2.0]), np.array([0.9, 0.0]), 2.0) == pytest.approx(7.2)


class TestPressureAnisotropy:

    def test_linear_pressure_has_no_vertical_gradient(self, bc):
        g = GridSpec(10, 5)
        params = DimensionlessParams(gamma=0.2, beta1=0.0, beta2=0.0)
        p = solve_pressure(ScalarField.constant(g, 0.3), params, bc)
        gx, gz, combined = pressure_anisotropy(p, params)
        assert gz <= 1e-12
        assert gx == pytest.approx(1.0, rel=1e-8)
        assert combined == pytest.approx(0.96 * gz**2 + 0.04 * gx**2)

    def test_manufactured_loop_oracle(self, rng):
        g = GridSpec(4, 4)
        p = ScalarField(g, rng.normal(size=(4, 4)))
        params = DimensionlessParams(gamma=0.5, beta1=0.0, beta2=0.0)
        sz = 0.0
        for i in range(4):
            diffs = [(p.values[i, j + 1] - p.values[i, j]) / g.dz for j in range(3)]
            sz += sum(d * d for d in diffs) + 0.5 * (diffs[0] ** 2 + diffs[-1] ** 2)
        _, gz, _ = pressure_anisotropy(p, params)
        assert gz == pytest.approx(np.sqrt(g.cell_area * sz), rel=1e-14)


class TestL2Difference:

    def test_identical(self, rng):
        a = ScalarField(GridSpec(3, 3), rng.normal(size=(3, 3)))
        assert l2_difference(a, a) == 0.0

    def test_constants(self):
        g = GridSpec(6, 4)
        assert l2_difference(ScalarField.constant(g, 0.7), ScalarField.constant(g, 0.2)) == pytest.approx(0.5)

    def test_loop_oracle(self, rng):
        g = GridSpec(5, 3)
        a, b = (ScalarField(g, rng.normal(size=(5, 3))) for _ in range(2))
        total = sum((a.values[i, j] - b.values[i, j]) ** 2 for i in range(5) for j in range(3))
        assert l2_difference(a, b) == pytest.approx(np.sqrt(total * g.cell_area), rel=1e-14)

    def test_grid_mismatch(self):
        with pytest.raises(ContractViolation):
            l2_difference(ScalarField.zeros(GridSpec(2, 2)), ScalarField.zeros(GridSpec(2, 3)))


class TestMassAudit:

    def test_zero_flux_step(self, params, rng):
        g = GridSpec(4, 4)
        S = ScalarField(g, rng.uniform(size=(4, 4)))
        assert mass_audit(S, S, FaceField.zeros(g), 1e-3, params) == 0.0

    def test_clamping_breaks_balance(self, params, bc, small_grid):
        solver = BveSolver(params, bc, small_grid)
        result = solver.advance(solver.initial_state(), 1e-3)
        honest = mass_audit(result.before.S, result.state.S, result.flux, result.dt, params)
        clamped = result.state.S.with_values(np.clip(result.state.S.values, 0.0, 0.5 * result.state.S.values.max()))
        assert honest <= 1e-10
        assert mass_audit(result.before.S, clamped, result.flux, result.dt, params) > 1e-8


class TestResiduals:

    def test_divergence_residual_scaled(self):
        g = GridSpec(2, 2)
        v = FaceField(g, np.array([[0.0, 0.0], [0.0, 0.0], [1.0, 1.0]]), np.zeros((2, 3)))
        assert divergence_residual(v, g) == pytest.approx(np.sqrt(0.5 * 4.0))
        assert divergence_residual(v, g, 2.0) == pytest.approx(np.sqrt(2.0) / 2.0)

    def test_overshoot(self):
        g = GridSpec(2, 1)
        assert overshoot(ScalarField(g, np.array([[0.5], [0.3]]))) == 0.0
        assert overshoot(ScalarField(g, np.array([[0.95], [-0.01]]))) == pytest.approx(0.05)

    def test_inflow_energy_rate(self):
        s = np.array([0.9, 0.0])
        expected = 0.5 * 2.0 * (frac_flow(0.9, 2.0) * 0.9 - frac_flow_primitive(0.9, 2.0))
        assert inflow_energy_rate(np.ones(2), s, 2.0, 0.5) == pytest.approx(expected)
        assert inflow_energy_budget([1.0, 2.0], [0.1, 0.2]) == pytest.approx(0.5)

    def test_report_row(self):
        report = EstimateReport(0.1, 1.0, 2.0, 0.0, 1.0, 0.0, 0.5, 1e-14, 1e-15, 0.0)
        row = report.to_row()
        assert list(row)[:3] == ["time", "energy_E", "grad_p_x"]
        assert np.isnan(row["energy_bound"])


class TestRunMonitor:

    def test_reports_at_snapshots(self, params, bc, cfg):
        monitor = RunMonitor()
        traj = run_bve(params, bc, GridSpec(16, 8), cfg, monitor=monitor)
        assert len(traj.reports) == len(traj.snapshots) == 3
        for report in traj.reports:
            assert report.energy_E <= report.energy_bound
            assert report.grad_p_z == 0.0
            assert report.div_residual <= 1e-11
            assert all(np.isfinite(v) and v >= 0 for v in report.to_row().values())
        assert traj.reports[-1].inflow_budget > 0
        assert traj.reports[-1].dtS_energy > 0

    def test_strict_mode_raises(self, params, bc, small_grid):
        solver = BveSolver(params, bc, small_grid)
        state = solver.initial_state()
        monitor = RunMonitor(strict=True)
        monitor.start(solver, state)
        result = solver.advance(state, 1e-3)
        tampered = replace(result, state=replace(result.state, S=result.state.S.with_values(result.state.S.values + 0.01)))
        with pytest.raises(ConservationViolation):
            monitor.observe(solver, tampered)

    def test_lenient_mode_warns(self, params, bc, small_grid, caplog):
        solver = BveSolver(params, bc, small_grid)
        state = solver.initial_state()
        monitor = RunMonitor()
        monitor.start(solver, state)
        result = solver.advance(state, 1e-3)
        tampered = replace(result, state=replace(result.state, S=result.state.S.with_values(result.state.S.values + 0.01)))
        with caplog.at_level(logging.WARNING):
            monitor.observe(solver, tampered)
        assert "mass residual" in caplog.text
        assert monitor.max_mass_residual > 1e-8

    def test_budget_and_peak_accumulate_over_steps(self, params, bc, cfg):
        monitor = RunMonitor()
        traj = run_bve(params, bc, GridSpec(16, 8), cfg, monitor=monitor)
        assert len(monitor.inflow_rates) == len(monitor.step_dts) == traj.steps
        assert sum(monitor.step_dts) == pytest.approx(params.end_time_T)
        assert monitor.inflow_budget == inflow_energy_budget(monitor.inflow_rates, monitor.step_dts)
        assert traj.reports[-1].inflow_budget == monitor.inflow_budget
        assert monitor.peak_dtS_energy >= monitor.last_dtS_energy > 0

    def test_start_resets_accumulators(self, params, bc, small_grid):
        solver = BveSolver(params, bc, small_grid)
        monitor = RunMonitor()
        monitor.start(solver, solver.initial_state())
        monitor.observe(solver, solver.advance(solver.initial_state(), 1e-3))
        monitor.start(solver, solver.initial_state())
        assert monitor.inflow_budget == 0.0
        assert monitor.peak_dtS_energy == 0.0
