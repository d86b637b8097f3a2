"""Run orchestration, file output determinism, and the CLI contract."""

import json

import numpy as np
import pytest

from trotterbench import (
    NoiseParams,
    RunConfig,
    compare_command,
    run_command,
    scaling_command,
    sweep_command,
)
from trotterbench.cli import main


class TestRunConfig:
    def test_defaults(self):
        cfg = RunConfig()
        assert cfg.tfim.n_spins == 5
        assert cfg.tfim.dt == 0.2
        assert cfg.steps == 20
        assert cfg.shots == 1024

    def test_round_trip(self):
        cfg = RunConfig().replace(g=3.0, mode="noisy", traj=64, p2=0.05, seed=9)
        assert RunConfig.from_dict(cfg.to_dict()) == cfg

    def test_rejects_unknown_keys(self):
        with pytest.raises(ValueError):
            RunConfig.from_dict({"banana": 1})

    def test_validation(self):
        with pytest.raises(ValueError):
            RunConfig().replace(steps=0)
        with pytest.raises(ValueError):
            RunConfig().replace(mode="magic")
        with pytest.raises(ValueError):
            RunConfig().replace(seed=-1)


class TestRunCommand:
    def test_ideal_low_field_small_error(self):
        result = run_command(RunConfig(), write=False)
        assert result.errors.rmse_local <= 0.05

    def test_zero_field_commuting_limit(self):
        for order in ("first", "sym2"):
            cfg = RunConfig().replace(g=0.0, order=order)
            assert run_command(cfg, write=False).errors.rmse_local <= 1e-9

    def test_series_grids_match_and_start_at_zero(self):
        result = run_command(RunConfig(), write=False)
        assert result.sim.times[0] == 0.0
        assert result.sim.times.shape == (21,)
        np.testing.assert_allclose(result.sim.times, result.exact.times)
        assert result.errors.delta_local.shape == (20, 5)

    def test_shots_mode_estimates_track_exact(self):
        cfg = RunConfig().replace(mode="shots", seed=3)
        result = run_command(cfg, write=False)
        # 1024-shot noise on top of a small Trotter error stays modest
        assert result.errors.rmse_local <= 0.08

    def test_noisy_zero_noise_matches_ideal_exactly(self):
        ideal = run_command(RunConfig(), write=False)
        cfg = RunConfig().replace(mode="noisy", traj=1, p1=0.0, p2=0.0,
                                  read01=0.0, read10=0.0)
        noisy = run_command(cfg, write=False)
        np.testing.assert_array_equal(noisy.sim.local, ideal.sim.local)

    def test_gate_counts_echoed(self):
        result = run_command(RunConfig(), write=False)
        assert result.counts["total"] == {"RX": 100, "RZ": 80, "CNOT": 160}


class TestOutputs:
    def test_files_written_and_deterministic(self, tmp_path):
        cfg = RunConfig().replace(mode="shots", seed=5, out=str(tmp_path))
        run_command(cfg)
        first = {
            name: (tmp_path / name).read_bytes()
            for name in ("series.csv", "totals.csv", "meta.json")
        }
        run_command(cfg)
        for name in ("series.csv", "totals.csv"):
            assert (tmp_path / name).read_bytes() == first[name]
        meta_a = json.loads(first["meta.json"])
        meta_b = json.loads((tmp_path / "meta.json").read_text())
        meta_a.pop("wall_time")
        meta_b.pop("wall_time")
        assert meta_a == meta_b

    def test_csv_headers(self, tmp_path):
        run_command(RunConfig().replace(out=str(tmp_path)))
        series = (tmp_path / "series.csv").read_text().splitlines()
        assert series[0] == "t,site,m_sim,m_exact,dm"
        assert len(series) == 1 + 21 * 5
        totals = (tmp_path / "totals.csv").read_text().splitlines()
        assert totals[0] == "t,m_total_sim,m_total_exact,dm_total"
        assert len(totals) == 1 + 21

    def test_meta_config_round_trip(self, tmp_path):
        cfg = RunConfig().replace(g=2.0, seed=7, out=str(tmp_path))
        run_command(cfg)
        meta = json.loads((tmp_path / "meta.json").read_text())
        assert RunConfig.from_dict(meta["config"]) == cfg
        assert meta["tool"] == "trotterbench"
        assert "version" in meta
        assert meta["rmse"]["local"] >= 0


class TestSweepCompareScaling:
    def test_singleton_sweep_equals_run(self):
        base = RunConfig().replace(g=2.0)
        swept = sweep_command(base, [2.0])[0]
        single = run_command(base, write=False)
        assert swept.errors.rmse_local == single.errors.rmse_local

    def test_empty_g_list(self):
        with pytest.raises(ValueError):
            sweep_command(RunConfig(), [])

    def test_sweep_writes_per_g_and_table(self, tmp_path):
        base = RunConfig().replace(out=str(tmp_path))
        sweep_command(base, [1.0, 2.0])
        table = (tmp_path / "sweep.csv").read_text().splitlines()
        assert table[0] == "g,rmse_local,rmse_total"
        assert len(table) == 3
        assert (tmp_path / "g_1" / "series.csv").exists()
        assert (tmp_path / "g_2" / "meta.json").exists()

    def test_compare_zero_field_reports_na(self):
        rows = compare_command(RunConfig(), [0.0])
        assert rows[0]["ratio_local"] == "NA"
        assert rows[0]["ratio_total"] == "NA"

    def test_compare_table_written(self, tmp_path):
        base = RunConfig().replace(out=str(tmp_path))
        compare_command(base, [1.0, 3.0])
        lines = (tmp_path / "compare.csv").read_text().splitlines()
        assert lines[0] == ("g,rmse_local_first,rmse_local_sym2,ratio_local,"
                            "rmse_total_first,rmse_total_sym2,ratio_total")
        assert len(lines) == 3
        first_row = lines[1].split(",")
        assert float(first_row[3]) > 1.0  # symmetric error exceeds first order

    def test_scaling_slopes(self):
        rows = scaling_command(RunConfig().replace(g=2.0),
                               [0.0125, 0.025, 0.05, 0.1, 0.2])
        by_order = {r["order"]: r["slope"] for r in rows}
        assert by_order["first"] == pytest.approx(2.0, abs=0.1)
        assert by_order["sym2"] == pytest.approx(3.0, abs=0.15)

    def test_scaling_degenerate_at_zero_field(self):
        rows = scaling_command(RunConfig().replace(g=0.0), [0.05, 0.1, 0.2])
        assert all(r["slope"] == "degenerate" for r in rows)

    def test_scaling_needs_three_points(self):
        with pytest.raises(ValueError):
            scaling_command(RunConfig(), [0.1, 0.2])


class TestCli:
    def test_run_writes_outputs(self, tmp_path, capsys):
        code = main(["run", "--g", "2", "--steps", "5", "--out", str(tmp_path)])
        assert code == 0
        assert (tmp_path / "series.csv").exists()
        assert "rmse_local=" in capsys.readouterr().out

    def test_usage_error_exit_2(self, capsys):
        code = main(["run", "--mode", "noisy", "--traj", "0"])
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_sweep_requires_g_list(self, capsys):
        code = main(["sweep"])
        assert code == 2

    def test_argparse_rejects_bad_choice(self):
        with pytest.raises(SystemExit) as exc:
            main(["run", "--order", "third"])
        assert exc.value.code == 2

    def test_missing_config_file(self, capsys):
        assert main(["run", "--config", "/nonexistent/cfg.json"]) == 2

    def test_config_file_with_flag_override(self, tmp_path, capsys):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps({"g": 3.0, "steps": 5, "order": "sym2"}))
        out = tmp_path / "out"
        code = main(["run", "--config", str(cfg_path), "--g", "1", "--out", str(out)])
        assert code == 0
        meta = json.loads((out / "meta.json").read_text())
        assert meta["config"]["g"] == 1.0  # flag wins
        assert meta["config"]["steps"] == 5  # file value kept
        assert meta["config"]["order"] == "sym2"

    def test_noisy_mode_defaults_to_device_calibration(self, tmp_path):
        out = tmp_path / "out"
        code = main(["run", "--mode", "noisy", "--traj", "8", "--steps", "2",
                     "--out", str(out)])
        assert code == 0
        meta = json.loads((out / "meta.json").read_text())
        assert meta["config"]["p1"] == 0.002
        assert meta["config"]["p2"] == 0.02
        assert meta["config"]["read01"] == 0.02

    def test_noisy_flags_override_calibration(self, tmp_path):
        out = tmp_path / "out"
        code = main(["run", "--mode", "noisy", "--traj", "8", "--steps", "2",
                     "--p2", "0", "--out", str(out)])
        assert code == 0
        meta = json.loads((out / "meta.json").read_text())
        assert meta["config"]["p2"] == 0.0
        assert meta["config"]["p1"] == 0.002

    def test_scaling_stdout(self, capsys):
        code = main(["scaling", "--g", "2", "--dt-list", "0.05,0.1,0.2"])
        assert code == 0
        out = capsys.readouterr().out
        assert out.startswith("order,slope")
        assert "first," in out and "sym2," in out

    def test_compare_stdout_lists_g_rows(self, capsys):
        code = main(["compare", "--g-list", "1,3", "--steps", "5"])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 3

    def test_g_list_from_config_file(self, tmp_path, capsys):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps({"g_list": [1.0, 2.0], "steps": 5}))
        code = main(["sweep", "--config", str(cfg_path)])
        assert code == 0
        assert len(capsys.readouterr().out.splitlines()) == 3


class TestBackendFallback:
    def test_numpy_backend_matches_active(self, tmp_path):
        import os
        import subprocess
        import sys

        script = (
            "import json, trotterbench as tb\n"
            "cfg = tb.RunConfig().replace(g=2.0, mode='noisy', traj=16, seed=11)\n"
            "r = tb.run_command(cfg, write=False)\n"
            "print(json.dumps([tb.active_backend(), r.sim.local.tolist()]))\n"
        )
        outputs = {}
        for backend in ("numpy", "numba"):
            env = dict(os.environ, TROTTERBENCH_BACKEND=backend)
            proc = subprocess.run([sys.executable, "-c", script], env=env,
                                  capture_output=True, text=True, check=True)
            name, local = json.loads(proc.stdout)
            assert name == backend
            outputs[backend] = np.asarray(local)
        np.testing.assert_allclose(outputs["numpy"], outputs["numba"], atol=1e-12)
