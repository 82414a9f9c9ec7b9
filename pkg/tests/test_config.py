"""Tests for spingate.config module."""

import configparser
import os
from pathlib import Path

import pytest

from spingate.cli import main
from spingate.config import SpinGateConfig, _find_base_path


@pytest.fixture
def tmp_base(tmp_path):
    """Create a temporary base directory for testing."""
    return tmp_path / "spingate_test"


@pytest.fixture
def config(tmp_base):
    """Create a SpinGateConfig with a temporary base path."""
    return SpinGateConfig(base_path=tmp_base)


def _write_user_ini(base, section, **values):
    config_dir = base / "config"
    config_dir.mkdir(parents=True, exist_ok=True)
    ini = configparser.ConfigParser()
    ini.add_section(section)
    for key, value in values.items():
        ini.set(section, key, value)
    with open(config_dir / "defaults.ini", "w") as f:
        ini.write(f)


class TestFindBasePath:
    def test_uses_env_var(self, tmp_path, monkeypatch):
        custom = tmp_path / "custom_spingate"
        monkeypatch.setenv("SPINGATE_HOME", str(custom))
        result = _find_base_path()
        assert result == custom.resolve()

    def test_defaults_to_home(self, monkeypatch):
        monkeypatch.delenv("SPINGATE_HOME", raising=False)
        result = _find_base_path()
        assert result == Path.home() / ".spingate"


class TestSpinGateConfig:
    def test_init_creates_config_object(self, config, tmp_base):
        assert config.base_path == tmp_base.resolve()
        assert config.config_dir == tmp_base.resolve() / "config"

    def test_default_values(self, config):
        assert config.dt == 1e-3
        assert config.max_samples == 100000
        assert config.threshold == 0.9
        assert config.relax_threshold == 0.999
        assert config.turning_grid == 10000
        assert config.gauss_nodes == 256
        assert config.bisect_xtol == 1e-14
        assert config.phi_margin == 0.01
        assert config.max_iter == 200
        assert config.float_digits == 17

    def test_threads_zero_means_all_cores(self, config):
        assert config.threads == (os.cpu_count() or 1)

    def test_threads_explicit(self, tmp_base):
        _write_user_ini(tmp_base, "runtime", threads="3")
        assert SpinGateConfig(base_path=tmp_base).threads == 3

    def test_missing_base_path_is_not_created(self, config, tmp_base):
        assert config.dt == 1e-3
        assert not tmp_base.exists()

    def test_loads_user_config(self, tmp_base):
        _write_user_ini(tmp_base, "verify", threshold="0.8")

        config = SpinGateConfig(base_path=tmp_base)
        assert config.threshold == 0.8
        assert config.relax_threshold == 0.999

    def test_user_config_reaches_cli(self, tmp_base, tmp_path):
        _write_user_ini(tmp_base, "integrator", dt="0.25")
        out = tmp_path / "run.csv"
        code = main([
            "--base-path", str(tmp_base), "simulate", "--scheme", "collinear",
            "--h-perp", "1.0", "--config", "11", "--t-end", "1", "--out", str(out),
        ])
        assert code == 0
        # header plus samples at t = 0, 0.25, 0.5, 0.75, 1
        assert len(out.read_text().splitlines()) == 6
