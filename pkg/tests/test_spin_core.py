"""Tests for spingate.spin_core module."""

import math

import numpy as np
import pytest

from spingate.errors import ArgumentError
from spingate.spin_core import (
    Axis3,
    BitValue,
    ControlConfig,
    Spin3,
    control_axes,
    decode_bit,
    encode_bit,
    toffoli_expected,
)


class TestSpin3:
    def test_normalizes_small_deviation(self):
        s = Spin3(0.0, 0.0, 1.0 + 5e-7)
        assert s.z == 1.0
        assert math.sqrt(s.x ** 2 + s.y ** 2 + s.z ** 2) == pytest.approx(1.0, abs=1e-15)

    def test_rejects_non_unit(self):
        with pytest.raises(ArgumentError):
            Spin3(0.0, 0.0, 1.1)

    def test_rejects_zero(self):
        with pytest.raises(ArgumentError):
            Spin3(0.0, 0.0, 0.0)

    def test_rejects_nan(self):
        with pytest.raises(ArgumentError):
            Spin3(float("nan"), 0.0, 1.0)

    def test_array_roundtrip(self):
        s = Spin3.from_array(np.array([0.6, 0.0, 0.8]))
        assert s.as_tuple() == pytest.approx((0.6, 0.0, 0.8))

    def test_negation(self):
        s = -Spin3(0.0, 1.0, 0.0)
        assert s.as_tuple() == (-0.0, -1.0, -0.0)

    def test_is_value_object(self):
        assert Spin3(1.0, 0.0, 0.0) == Spin3(1.0, 0.0, 0.0)


class TestAxis3:
    def test_normalizes_any_vector(self):
        axis = Axis3(0.0, 3.0, 4.0)
        assert (axis.x, axis.y, axis.z) == pytest.approx((0.0, 0.6, 0.8))

    def test_rejects_zero_vector(self):
        with pytest.raises(ArgumentError):
            Axis3(0.0, 0.0, 0.0)

    def test_control_axes_mirror_in_y(self):
        e1, e2 = control_axes(0.3)
        assert e1.x == pytest.approx(e2.x)
        assert e1.y == pytest.approx(-e2.y)
        assert e1.y > 0


class TestEncodeDecode:
    def test_encode_one_is_plus_axis(self):
        s = encode_bit(1, Axis3.z_axis())
        assert s.as_tuple() == (0.0, 0.0, 1.0)

    def test_encode_zero_is_minus_axis(self):
        s = encode_bit(0, Axis3.z_axis())
        assert s.z == -1.0

    def test_encode_rejects_bad_bit(self):
        with pytest.raises(ArgumentError):
            encode_bit(2, Axis3.z_axis())

    @pytest.mark.parametrize("bit", [0, 1])
    def test_decode_inverts_encode_at_threshold_one(self, bit):
        axis = Axis3(1.0, 2.0, -0.5)
        assert decode_bit(encode_bit(bit, axis), axis, threshold=1.0).bit == bit

    def test_equator_is_undecided(self):
        assert decode_bit(Spin3(1.0, 0.0, 0.0), Axis3.z_axis()) is BitValue.UNDECIDED

    def test_threshold_boundary(self):
        z = 0.9
        s = Spin3(math.sqrt(1 - z * z), 0.0, z)
        assert decode_bit(s, Axis3.z_axis(), threshold=0.9) is BitValue.ONE
        assert decode_bit(s, Axis3.z_axis(), threshold=0.95) is BitValue.UNDECIDED

    @pytest.mark.parametrize("threshold", [0.0, -0.1, 1.5])
    def test_rejects_bad_threshold(self, threshold):
        with pytest.raises(ArgumentError):
            decode_bit(Spin3(0.0, 0.0, 1.0), Axis3.z_axis(), threshold=threshold)

    def test_undecided_has_no_bit(self):
        assert BitValue.UNDECIDED.bit is None


class TestControlConfig:
    def test_from_label(self):
        assert ControlConfig.from_label("10") is ControlConfig.C10
        assert ControlConfig.C10.bits == (1, 0)
        assert ControlConfig.C10.label == "10"

    @pytest.mark.parametrize("label", ["2", "012", "ab", ""])
    def test_bad_label(self, label):
        with pytest.raises(ArgumentError):
            ControlConfig.from_label(label)

    def test_collinear_z(self):
        assert ControlConfig.C00.collinear_z() == (-1.0, -1.0)
        assert ControlConfig.C11.collinear_z() == (1.0, 1.0)

    def test_noncollinear_spins_cancel_field_for_00(self):
        phi = 0.7
        s1, s2 = ControlConfig.C00.noncollinear_spins(phi)
        e1, e2 = control_axes(phi)
        total = s1 + s2 + e1.as_array() + e2.as_array()
        assert np.allclose(total, 0.0)


class TestToffoli:
    def test_truth_table(self):
        table = {
            (c1, c2, t): toffoli_expected(c1, c2, t)
            for c1 in (0, 1) for c2 in (0, 1) for t in (0, 1)
        }
        assert table[(1, 1, 0)] == 1
        assert table[(1, 1, 1)] == 0
        for (c1, c2, t), out in table.items():
            if (c1, c2) != (1, 1):
                assert out == t

    def test_is_permutation(self):
        outputs = {
            (c1, c2, toffoli_expected(c1, c2, t))
            for c1 in (0, 1) for c2 in (0, 1) for t in (0, 1)
        }
        assert len(outputs) == 8

    def test_rejects_bad_bits(self):
        with pytest.raises(ArgumentError):
            toffoli_expected(0, 3, 1)
