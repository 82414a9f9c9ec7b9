"""Tests for spingate.analytics module."""

import math

import numpy as np
import pytest

from spingate.analytics import (
    PeriodSet,
    anisotropic_period,
    describe_orbit,
    elliptic_k_norm,
    elliptic_k_norm_quad,
    half_period_flip,
    implicit_time,
    noncollinear_periods,
    period_numeric,
    periods_collinear_a0,
    quartic_first_integral,
)
from spingate.dynamics import CollinearModel, integrate
from spingate.errors import ArgumentError, ConfinementError, DomainError, NumericError
from spingate.spin_core import ControlConfig, Spin3

K_GRID = [round(0.1 * i, 1) for i in range(10)] + [0.95, 0.99]


class TestEllipticK:
    def test_zero_is_exactly_one(self):
        assert elliptic_k_norm(0.0) == 1.0

    @pytest.mark.parametrize("k", K_GRID)
    def test_agm_matches_quadrature(self, k):
        assert elliptic_k_norm(k) == pytest.approx(elliptic_k_norm_quad(k), abs=1e-10)

    def test_known_value(self):
        assert elliptic_k_norm(0.5) == pytest.approx(1.0732, abs=1e-4)

    def test_series_at_small_k(self):
        k = 0.2
        series = 1 + k ** 2 / 4 + 9 * k ** 4 / 64
        remainder = elliptic_k_norm(k) - series
        assert 0.0 < remainder <= k ** 6
        assert remainder == pytest.approx(25 * k ** 6 / 256, abs=5e-7)

    def test_strictly_increasing(self):
        values = [elliptic_k_norm(k) for k in np.linspace(0.0, 0.999, 200)]
        assert all(b > a for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("k", [1.0, 1.5, -0.1, float("nan")])
    def test_domain(self, k):
        with pytest.raises(DomainError):
            elliptic_k_norm(k)


class TestPeriods:
    def test_collinear_a0_values(self):
        periods = periods_collinear_a0(0.20101)
        assert periods.T11 == pytest.approx(31.258, abs=2e-3)
        assert periods.T01 == pytest.approx(3.1257, abs=1e-3)
        assert periods.T00 == pytest.approx(1.5688, abs=1e-3)
        assert periods.T01 == periods.T10

    def test_h_perp_two_gives_pi(self):
        assert periods_collinear_a0(2.0).T11 == pytest.approx(math.pi)

    def test_large_field_ratios_approach_one(self):
        periods = periods_collinear_a0(1e6)
        assert periods.T00 / periods.T11 == pytest.approx(1.0, rel=1e-10)

    @pytest.mark.parametrize("h_perp", [0.0, -1.0])
    def test_rejects_non_positive(self, h_perp):
        with pytest.raises(DomainError):
            periods_collinear_a0(h_perp)

    def test_period_set_lookup(self):
        periods = periods_collinear_a0(1.0)
        assert periods.for_config(ControlConfig.C11) == periods.T11

    def test_period_set_rejects_non_positive(self):
        with pytest.raises(NumericError):
            PeriodSet(T00=1.0, T01=1.0, T10=0.0, T11=1.0)


class TestHalfPeriodFlip:
    def test_no_anisotropy_is_precession(self):
        assert half_period_flip(2.7, 0.0) == pytest.approx(math.pi / 2.7)

    def test_anisotropic_value(self):
        assert half_period_flip(2.7, 2.5) == pytest.approx(1.787, abs=1e-3)

    def test_anisotropy_lengthens_flip(self):
        for a in (0.5, 1.0, 2.0, 2.6):
            assert half_period_flip(2.7, a) > math.pi / 2.7

    def test_confinement(self):
        with pytest.raises(ConfinementError):
            half_period_flip(2.0, 2.5)

    def test_equal_field_is_confined(self):
        with pytest.raises(ConfinementError):
            half_period_flip(2.0, 2.0)

    def test_anisotropic_period_is_twice(self):
        assert anisotropic_period(2.7, 2.5) == 2 * half_period_flip(2.7, 2.5)

    def test_noncollinear_periods_without_anisotropy(self):
        phi = math.acos(0.75)
        t01, t11 = noncollinear_periods(phi, 0.0)
        assert t01 == pytest.approx(math.pi)
        assert t11 == pytest.approx(2 * math.pi / 3)
        # three half [11] periods equal one [01] period
        assert 1.5 * t11 == pytest.approx(t01)


class TestQuarticFirstIntegral:
    def test_start_pole_is_root(self):
        model = CollinearModel(a=1.3, h_par=-0.7, h_perp=2.1)
        for config in ControlConfig:
            for pole in (1, -1):
                fi = quartic_first_integral(model, config, pole)
                assert fi(float(pole)) == pytest.approx(0.0, abs=1e-12)

    def test_flip_configuration_factorizes(self):
        a, hp = 2.5, 2.7
        fi = quartic_first_integral(CollinearModel(a=a, h_perp=hp), ControlConfig.C11, 1)
        for z in np.linspace(-1.0, 1.0, 11):
            expected = (1 - z * z) * (hp * hp - a * a * (1 - z * z))
            assert fi(z) == pytest.approx(expected, abs=1e-12)

    def test_no_anisotropy_is_quadratic(self):
        hp = 0.5
        fi = quartic_first_integral(CollinearModel(h_perp=hp), ControlConfig.C00, 1)
        ht = -4.0
        assert fi.coefficients == pytest.approx(
            (hp * hp - ht * ht, 2 * ht * ht, -(hp * hp + ht * ht), 0.0, 0.0)
        )

    def test_derivative_at_north(self):
        fi = quartic_first_integral(CollinearModel(a=1.0, h_perp=1.5), ControlConfig.C01, 1)
        assert fi.polynomial.deriv()(1.0) == pytest.approx(-2 * 1.5 ** 2)

    def test_value_at_opposite_pole(self):
        model = CollinearModel(a=1.0, h_perp=1.5)
        fi = quartic_first_integral(model, ControlConfig.C00, 1)
        assert fi(-1.0) == pytest.approx(-4 * model.h_tilde(ControlConfig.C00) ** 2)

    def test_acceleration_is_half_derivative(self):
        fi = quartic_first_integral(CollinearModel(a=1.7, h_perp=2.2), ControlConfig.C01, -1)
        for z in (-0.8, -0.1, 0.4, 0.9):
            assert fi.acceleration(z) == pytest.approx(0.5 * fi.polynomial.deriv()(z))

    def test_x_of_z_matches_simulation(self):
        model = CollinearModel(a=1.2, h_par=-2.0, h_perp=2.5)
        fi = quartic_first_integral(model, ControlConfig.C01, 1)
        traj = integrate(model, ControlConfig.C01, Spin3(0.0, 0.0, 1.0), t_end=3.0, dt=1e-3)
        x_pred = fi.x_of_z(traj.z)
        assert np.allclose(x_pred, traj.spins[:, 0], atol=1e-8)

    def test_dz_squared_matches_simulation(self):
        model = CollinearModel(a=1.2, h_par=-2.0, h_perp=2.5)
        fi = quartic_first_integral(model, ControlConfig.C00, 1)
        traj = integrate(model, ControlConfig.C00, Spin3(0.0, 0.0, 1.0), t_end=2.0, dt=1e-3)
        # z' = -h_perp * y from the equations of motion
        dz = model.h_perp * traj.spins[:, 1]
        assert np.allclose(dz ** 2, fi(traj.z), atol=1e-8)

    def test_roots_include_start_pole(self):
        fi = quartic_first_integral(CollinearModel(a=1.0, h_perp=1.5), ControlConfig.C01, 1)
        assert np.min(np.abs(fi.roots() - 1.0)) < 1e-8

    def test_x_of_z_needs_drive(self):
        fi = quartic_first_integral(CollinearModel(a=1.0), ControlConfig.C01, 1)
        with pytest.raises(DomainError):
            fi.x_of_z(0.5)

    def test_rejects_bad_pole(self):
        with pytest.raises(ArgumentError):
            quartic_first_integral(CollinearModel(), ControlConfig.C00, 0)


class TestPeriodNumeric:
    def test_flip_matches_elliptic_formula(self):
        model = CollinearModel(a=2.5, h_par=-2.0, h_perp=2.7)
        period, flips = period_numeric(model, ControlConfig.C11, 1)
        assert flips is True
        assert period == pytest.approx(2 * half_period_flip(2.7, 2.5), abs=1e-9)

    @pytest.mark.parametrize("config", list(ControlConfig))
    @pytest.mark.parametrize("pole", [1, -1])
    def test_no_anisotropy_matches_larmor(self, config, pole):
        hp = 0.20101
        model = CollinearModel(a=0.0, h_par=-2.0, h_perp=hp)
        period, flips = period_numeric(model, config, pole)
        expected = periods_collinear_a0(hp).for_config(config)
        assert period == pytest.approx(expected, abs=1e-10)
        assert flips is (config is ControlConfig.C11)

    @pytest.mark.parametrize("hp", [0.03, 0.02, 0.01, 0.005])
    @pytest.mark.parametrize("config", list(ControlConfig))
    @pytest.mark.parametrize("pole", [1, -1])
    def test_weak_drive_turns_inside_first_grid_cell(self, hp, config, pole):
        model = CollinearModel(a=0.0, h_par=-2.0, h_perp=hp)
        period, flips = period_numeric(model, config, pole)
        expected = periods_collinear_a0(hp).for_config(config)
        assert period == pytest.approx(expected, abs=1e-10)
        assert flips is (config is ControlConfig.C11)

    def test_weak_drive_turning_point(self):
        hp = 0.01
        info = describe_orbit(CollinearModel(a=0.0, h_par=-2.0, h_perp=hp), ControlConfig.C00, 1)
        assert info is not None
        # precession cone about (hp, 0, -4): z_min = cos(2 atan(hp / 4))
        assert info["turning_point"] == pytest.approx(math.cos(2 * math.atan(hp / 4)), abs=1e-9)
        assert 1.0 - info["turning_point"] < 2e-4

    def test_confined_orbit(self):
        model = CollinearModel(a=3.0, h_par=-2.0, h_perp=2.7)
        period, flips = period_numeric(model, ControlConfig.C11, 1)
        assert flips is False
        assert math.isfinite(period) and period > 0

    def test_confined_period_matches_simulation(self):
        model = CollinearModel(a=3.0, h_par=-2.0, h_perp=2.7)
        period, _ = period_numeric(model, ControlConfig.C11, 1)
        traj = integrate(
            model, ControlConfig.C11, Spin3(0.0, 0.0, 1.0), t_end=1.5 * period, dt=1e-4
        )
        later = traj.times > 0.5 * period
        t_back = traj.times[later][int(np.argmax(traj.z[later]))]
        assert t_back == pytest.approx(period, rel=1e-3)

    def test_no_drive_is_separatrix(self):
        with pytest.raises(NumericError):
            period_numeric(CollinearModel(a=1.0, h_perp=0.0), ControlConfig.C01, 1)

    def test_describe_orbit(self):
        model = CollinearModel(a=2.5, h_par=-2.0, h_perp=2.7)
        info = describe_orbit(model, ControlConfig.C11, 1)
        assert info is not None
        assert info["turning_point"] == pytest.approx(-1.0)
        assert info["flips"] is True

    def test_describe_orbit_none_without_drive(self):
        assert describe_orbit(CollinearModel(a=1.0), ControlConfig.C01, 1) is None


class TestImplicitTime:
    def test_half_period_at_far_pole(self):
        model = CollinearModel(a=2.5, h_par=-2.0, h_perp=2.7)
        fi = quartic_first_integral(model, ControlConfig.C11, 1)
        assert implicit_time(fi, -1.0) == pytest.approx(half_period_flip(2.7, 2.5), abs=1e-9)

    def test_zero_at_start(self):
        fi = quartic_first_integral(CollinearModel(a=1.0, h_perp=1.5), ControlConfig.C01, 1)
        assert implicit_time(fi, 1.0) == pytest.approx(0.0, abs=1e-12)

    def test_equator_crossing_matches_simulation(self):
        model = CollinearModel(a=2.5, h_par=-2.0, h_perp=2.7)
        fi = quartic_first_integral(model, ControlConfig.C11, 1)
        t_eq = implicit_time(fi, 0.0)
        assert t_eq == pytest.approx(0.5 * half_period_flip(2.7, 2.5), rel=1e-9)
        traj = integrate(model, ControlConfig.C11, Spin3(0.0, 0.0, 1.0), t_end=2.0, dt=1e-4)
        t_sim = traj.times[int(np.argmax(traj.z <= 0.0))]
        assert t_sim == pytest.approx(t_eq, abs=2e-4)

    def test_south_start(self):
        model = CollinearModel(a=2.5, h_par=-2.0, h_perp=2.7)
        fi = quartic_first_integral(model, ControlConfig.C11, -1)
        assert implicit_time(fi, 1.0) == pytest.approx(half_period_flip(2.7, 2.5), abs=1e-9)
        assert implicit_time(fi, 0.0) == pytest.approx(
            0.5 * half_period_flip(2.7, 2.5), rel=1e-9
        )

    def test_outside_travelled_interval(self):
        model = CollinearModel(a=3.0, h_par=-2.0, h_perp=2.7)
        fi = quartic_first_integral(model, ControlConfig.C11, 1)
        with pytest.raises(DomainError):
            implicit_time(fi, 0.0)
