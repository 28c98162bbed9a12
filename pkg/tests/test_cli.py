"""Tests for the command-line interface."""

import pandas as pd
import pytest

from pyfsonoma import __version__
from pyfsonoma.cli import check_scenario, main, run_scenario
from pyfsonoma.constants import CSV_COLUMNS
from pyfsonoma.exceptions import ConvergenceError

SMALL_RUN = """
power_start = 0
power_stop = 4
power_step = 2
distance_1 = 1000
distance_2 = 2000
attenuation = 4.2e-3
rate_1 = 0.1
rate_2 = 0.5
schemes = fixed, oma
samples = 20000
chunk_size = 5000
seed = 3
"""


@pytest.fixture
def scenario_file(tmp_path):
    """A small scenario that needs no quadrature."""
    path = tmp_path / "small.scenario"
    path.write_text(SMALL_RUN, encoding="utf-8")
    return path


class TestCheck:
    """Tests for the check command."""

    def test_bundled(self, capsys):
        """Test checking a bundled scenario."""
        assert main(["check", "haze"]) == 0
        assert "Threshold product:" in capsys.readouterr().out

    def test_returns_config(self, scenario_file, capsys):
        """Test that check_scenario returns the parsed file."""
        config = check_scenario(scenario_file)
        assert config.powers() == [0.0, 2.0, 4.0]
        assert "Case 1:" in capsys.readouterr().out

    def test_missing_file(self, tmp_path, capsys):
        """Test that a missing file is an input error."""
        assert main(["check", str(tmp_path / "missing.scenario")]) == 1
        assert capsys.readouterr().err.startswith("error:")

    def test_integer_order(self, tmp_path, capsys):
        """Test that an integer alpha - beta is rejected."""
        path = tmp_path / "integer.scenario"
        path.write_text(SMALL_RUN + "alpha = 2.0\nbeta = 1.0\n", encoding="utf-8")
        assert main(["check", str(path)]) == 1
        assert "alpha" in capsys.readouterr().err


class TestRun:
    """Tests for the run command."""

    def test_writes_csv(self, scenario_file, tmp_path):
        """Test that run writes the outage table."""
        out = tmp_path / "out.csv"
        assert main(["run", str(scenario_file), "--out", str(out), "--no-progress"]) == 0

        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == 1 + 3 * 2 * 2

    def test_reproducible(self, scenario_file, tmp_path):
        """Test that a rerun with other worker counts writes identical bytes."""
        first = tmp_path / "first.csv"
        second = tmp_path / "second.csv"
        args = ["run", str(scenario_file), "--no-progress"]
        assert main([*args, "--out", str(first), "--workers", "1"]) == 0
        assert main([*args, "--out", str(second), "--workers", "3"]) == 0
        assert first.read_bytes() == second.read_bytes()

    def test_overrides(self, scenario_file, tmp_path):
        """Test the seed and sample overrides."""
        base = run_scenario(scenario_file, tmp_path / "a.csv", progress=False)
        reseeded = run_scenario(scenario_file, tmp_path / "b.csv", seed=4, progress=False)
        assert not base["p_out_mc"].equals(reseeded["p_out_mc"])

        table = pd.read_csv(tmp_path / "a.csv")
        assert list(table.columns) == list(CSV_COLUMNS)
        pd.testing.assert_series_equal(table["power_dbm"], base["power_dbm"])

    def test_invalid_samples(self, scenario_file, tmp_path, capsys):
        """Test that a nonpositive sample count is an input error."""
        out = tmp_path / "out.csv"
        code = main(["run", str(scenario_file), "--out", str(out), "--samples", "0"])
        assert code == 1
        assert not out.exists()
        assert "n_samples" in capsys.readouterr().err

    def test_numerical_failure(self, scenario_file, tmp_path, monkeypatch, capsys):
        """Test that a convergence failure exits with status 2."""

        def failing_sweep(*args, **kwargs):
            raise ConvergenceError("quadrature did not converge", method="quad")

        monkeypatch.setattr("pyfsonoma.cli.sweep_power", failing_sweep)
        code = main(["run", str(scenario_file), "--out", str(tmp_path / "out.csv")])
        assert code == 2
        assert capsys.readouterr().err.startswith("numerical failure:")


class TestParser:
    """Tests for the argument parser."""

    def test_version(self, capsys):
        """Test the --version flag."""
        with pytest.raises(SystemExit) as exc_info:
            main(["--version"])
        assert exc_info.value.code == 0
        assert __version__ in capsys.readouterr().out

    def test_command_required(self):
        """Test that a command is required."""
        with pytest.raises(SystemExit) as exc_info:
            main([])
        assert exc_info.value.code == 2
