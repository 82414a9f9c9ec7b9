"""Tests for spingate.render module."""

import math
from unittest.mock import patch

import pytest

from spingate.dynamics import CollinearModel, integrate
from spingate.errors import SpinGateError
from spingate.render import _check_plot_dependencies, write_projection_svg
from spingate.spin_core import Axis3, ControlConfig, encode_bit


@pytest.fixture
def trajectory():
    model = CollinearModel(a=0.0, h_perp=2.0 / math.sqrt(99.0))
    return integrate(model, ControlConfig.C11, encode_bit(1, Axis3.z_axis()), t_end=5.0, dt=1e-2)


class TestCheckPlotDependencies:
    def test_returns_tuple(self):
        ok, msg = _check_plot_dependencies()
        assert isinstance(ok, bool)
        assert isinstance(msg, str)

    def test_missing_matplotlib(self, trajectory, tmp_path):
        with patch.dict("sys.modules", {"matplotlib": None}):
            ok, msg = _check_plot_dependencies()
            assert ok is False
            assert "spingate[plot]" in msg
            with pytest.raises(SpinGateError):
                write_projection_svg(trajectory, tmp_path / "x.svg")


class TestWriteProjectionSvg:
    def test_writes_svg(self, trajectory, tmp_path):
        pytest.importorskip("matplotlib")
        out = write_projection_svg(trajectory, tmp_path / "nested" / "proj.svg")
        text = out.read_text()
        assert out.exists()
        assert "<svg" in text
        assert "s_z" in text

    def test_byte_stable(self, trajectory, tmp_path):
        pytest.importorskip("matplotlib")
        first = write_projection_svg(trajectory, tmp_path / "a.svg")
        second = write_projection_svg(trajectory, tmp_path / "b.svg")
        assert first.read_bytes() == second.read_bytes()
