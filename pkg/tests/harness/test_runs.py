import numpy as np
import pytest

from src.common.errors import SweepError
from src.harness import sweep as sweep_module
from src.harness.config import build_config
from src.harness.diag import diagnose
from src.harness.field_io import read_field
from src.harness.reports import read_convergence, read_reports
from src.harness.run_ledger import RunLedger
from src.harness.runs import format_value, record_outcome, run_dir_name, run_model
from src.harness.sweep import CONVERGENCE_FILE, gamma_sweep, run_gamma_sweep


def small_config(**run):
    return build_config({
        "grid": {"nx": 12, "nz": 4},
        "run": {"end_time_T": 0.01, **run},
        "sweep": {"gamma_list": "1, 0.5"},
        "timestep": {"dt_max": 5e-3},
    })


class TestNaming:

    def test_run_dir_name(self):
        assert run_dir_name("bve") == "bve"
        assert run_dir_name("btp", 0.04) == "btp_gamma_0.04"
        assert run_dir_name("btp", 1.0) == "btp_gamma_1"

    def test_format_value(self):
        assert format_value(0.15) == "0.15"
        assert format_value(0.0) == "0"


class TestRunModel:

    def test_btp_files(self, tmp_path):
        outcome = run_model(small_config(), "btp", gamma=0.5, output_dir=tmp_path)
        run_dir = tmp_path / "btp_gamma_0.5"
        assert outcome.run_dir == run_dir
        assert outcome.snapshot_paths == ["btp_gamma_0.5/S_t0.csv", "btp_gamma_0.5/S_t0.005.csv", "btp_gamma_0.5/S_t0.01.csv"]
        assert (run_dir / "p_t0.01.csv").exists()
        final = read_field(tmp_path / outcome.snapshot_paths[-1])
        assert np.array_equal(final.values, outcome.trajectory.final.S.values)
        assert read_reports(run_dir / "reports.csv").height == 3

    def test_bve_has_no_pressure_files(self, tmp_path):
        run_model(small_config(), "bve", output_dir=tmp_path)
        assert not list((tmp_path / "bve").glob("p_t*.csv"))

    def test_without_output(self):
        outcome = run_model(small_config(), "bve")
        assert outcome.run_dir is None
        assert outcome.final_report.time == pytest.approx(0.01)

    def test_record_outcome(self, tmp_path):
        outcome = run_model(small_config(), "btp", gamma=1.0, output_dir=tmp_path)
        ledger = RunLedger(tmp_path)
        record_outcome(ledger, outcome)
        entry = ledger.get_run("btp_gamma_1")
        assert entry["params"]["gamma"] == 1.0
        assert entry["pressure_solves"] == outcome.trajectory.pressure_solves
        assert entry["reports"] == "btp_gamma_1/reports.csv"


class TestGammaSweep:

    def test_single_gamma_at_time_zero(self, tmp_path):
        cfg = build_config({"grid": {"nx": 8, "nz": 4}, "run": {"end_time_T": 0.0}, "sweep": {"gamma_list": [0.2]}})
        table = gamma_sweep(cfg, tmp_path)
        assert table.errors() == [0.0]
        assert table.monotone and not table.partial

    @pytest.mark.asyncio
    async def test_rows_and_files(self, tmp_path):
        table = await run_gamma_sweep(small_config(), tmp_path)
        assert [row["gamma"] for row in table.rows] == [1.0, 0.5]
        assert all(row["e_gamma"] > 0 for row in table.rows)
        assert read_convergence(tmp_path / CONVERGENCE_FILE).rows == table.rows
        ledger = RunLedger(tmp_path)
        assert set(ledger.runs()) == {"bve", "btp_gamma_1", "btp_gamma_0.5"}
        assert ledger.get_run("bve")["params"]["beta2"] == pytest.approx(4e-4 / 0.25)

    def test_needs_both_models(self):
        with pytest.raises(ValueError):
            gamma_sweep(small_config(model="btp"))

    def test_failed_member_keeps_partial_rows(self, tmp_path, monkeypatch):
        real_run_model = sweep_module.run_model

        def flaky(cfg, model, gamma=None, **kwargs):
            if gamma == 0.5:
                raise SweepError("injected")
            return real_run_model(cfg, model, gamma=gamma, **kwargs)

        monkeypatch.setattr(sweep_module, "run_model", flaky)
        with pytest.raises(SweepError) as err:
            gamma_sweep(small_config(), tmp_path)
        assert [row["gamma"] for row in err.value.partial_rows] == [1.0]
        assert read_convergence(tmp_path / CONVERGENCE_FILE).partial


class TestDiagnose:

    def test_sweep_output_is_consistent(self, tmp_path):
        table = gamma_sweep(small_config(), tmp_path)
        result = diagnose(tmp_path)
        assert result.consistent
        assert [row["e_gamma"] for row in result.convergence_rows] == pytest.approx(table.errors(), rel=1e-12)
        assert result.stored_monotone == table.monotone
        assert len(result.snapshot_rows) == 9
        btp_rows = [row for row in result.snapshot_rows if row["run"].startswith("btp")]
        assert all("grad_p_z" in row for row in btp_rows)

    def test_tampered_table(self, tmp_path):
        gamma_sweep(small_config(), tmp_path)
        path = tmp_path / CONVERGENCE_FILE
        lines = path.read_text().splitlines()
        fields = lines[2].split(",")
        fields[1] = repr(float(fields[1]) * 2.0)
        lines[2] = ",".join(fields)
        path.write_text("\n".join(lines) + "\n")
        assert not diagnose(tmp_path).consistent

    def test_missing_manifest(self, tmp_path):
        with pytest.raises(ValueError):
            diagnose(tmp_path)
