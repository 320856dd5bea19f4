import math

import numpy as np
import pytest

from casimirbox import _modesum
from casimirbox.boxzero import BoxGeometry, FieldKind, e0
from casimirbox.errors import ConvergenceError
from casimirbox.specfun import HBAR_C, K_BOLTZMANN, PI, ZETA3
from casimirbox.thermal import (
    EnergyBreakdown,
    ThermalPoint,
    asymptotic_thermal,
    blackbody_density,
    blackbody_internal_density,
    corner_coefficient,
    entropy,
    force_x,
    free_energy,
    heat_kernel_coeffs,
    internal_energy,
    mode_frequency,
    subtraction_coeffs,
    thermal_raw,
)

SCALAR = FieldKind.SCALAR_DIRICHLET
EM = FieldKind.ELECTROMAGNETIC

CUBE_2UM = BoxGeometry(2e-6, 2e-6, 2e-6)
TP300 = ThermalPoint(300.0)

# pinned by the direct compensated sums (data/fixtures.txt)
X_UNIT_CUBE_T1 = -1.9422641285061052e-05
Y_UNIT_CUBE_T1 = -0.00045872658846693947


def tp_for_akt(a: float, akt: float) -> ThermalPoint:
    """Temperature at which a * kT equals akt (natural units)."""
    return ThermalPoint(akt * HBAR_C / (K_BOLTZMANN * a))


class TestThermalPoint:
    def test_reduced_t_anchor(self):
        # a = 2 um at 300 K sits at t = T_eff/T ~ 1.908
        assert TP300.reduced_t(2e-6) == pytest.approx(1.908237, abs=1e-5)

    def test_zero_temperature_sentinels(self):
        tp = ThermalPoint(0.0)
        assert tp.kt == 0.0
        assert math.isinf(tp.beta)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            ThermalPoint(-1.0)


class TestModeFrequency:
    def test_cube_ground_mode(self):
        g = BoxGeometry(1.0, 1.0, 1.0)
        assert mode_frequency(1, 1, 1, g) == pytest.approx(PI * math.sqrt(3.0), rel=1e-15)

    def test_mixed_indices(self):
        g = BoxGeometry(1.0, 2.0, 4.0)
        expected = PI * math.sqrt(4.0 + 0.25 + 1.0 / 16.0)
        assert mode_frequency(2, 1, 1, g) == pytest.approx(expected, rel=1e-15)

    def test_monotone_in_each_index(self):
        g = BoxGeometry(1.0, 1.3, 0.8)
        for n in range(1, 4):
            assert mode_frequency(n + 1, 2, 3, g) > mode_frequency(n, 2, 3, g)
            assert mode_frequency(2, n + 1, 3, g) > mode_frequency(2, n, 3, g)
            assert mode_frequency(2, 3, n + 1, g) > mode_frequency(2, 3, n, g)

    def test_em_double_modes_allow_one_zero(self):
        g = BoxGeometry(1.0, 2.0, 4.0)
        assert mode_frequency(1, 1, 0, g) == pytest.approx(PI * math.sqrt(1.0 + 0.25))
        with pytest.raises(ValueError):
            mode_frequency(0, 0, 0, g)


class TestThermalRaw:
    def test_zero_at_t0(self):
        assert thermal_raw(CUBE_2UM, SCALAR, ThermalPoint(0.0)) == 0.0

    def test_pinned_unit_cube_sums(self):
        betas = (2 * PI, 2 * PI, 2 * PI)
        assert _modesum.log_sum(betas, 1e-12) == pytest.approx(X_UNIT_CUBE_T1, rel=1e-9)
        doubles = math.fsum(
            _modesum.log_sum(p, 1e-12)
            for p in ((betas[1], betas[2]), (betas[0], betas[1]), (betas[0], betas[2]))
        )
        y = 2.0 * _modesum.log_sum(betas, 1e-12) + doubles
        assert y == pytest.approx(Y_UNIT_CUBE_T1, rel=1e-9)

    def test_reduced_variable_invariance(self):
        # (a,b,c,T) and (2a,2b,2c,T/2) share the X value exactly
        tp1 = ThermalPoint(300.0)
        tp2 = ThermalPoint(150.0)
        g2 = CUBE_2UM.scaled(2.0)
        raw1 = thermal_raw(CUBE_2UM, SCALAR, tp1)
        raw2 = thermal_raw(g2, SCALAR, tp2)
        assert 2.0 * raw2 == pytest.approx(raw1, rel=1e-12)

    def test_vanishes_faster_than_any_power_at_low_t(self):
        g = BoxGeometry(1e-6, 1e-6, 1e-6)
        vals = []
        for T in (40.0, 20.0, 10.0):
            tp = ThermalPoint(T)
            vals.append(abs(thermal_raw(g, SCALAR, tp)) / tp.kt**5)
        # |raw| / (kT)^5 still decreases as T drops: stronger than power law
        assert vals[0] > vals[1] > vals[2]

    def test_em_exceeds_twice_scalar_in_magnitude(self):
        # Y = 2X + three negative double sums
        raw_s = thermal_raw(CUBE_2UM, SCALAR, TP300)
        raw_e = thermal_raw(CUBE_2UM, EM, TP300)
        assert raw_e < 2.0 * raw_s < 0.0

    def test_budget_exhaustion(self):
        hot = ThermalPoint(5000.0)
        big = BoxGeometry(50e-6, 50e-6, 50e-6)
        with pytest.raises(ConvergenceError):
            thermal_raw(big, SCALAR, hot, max_points=1000)


class TestBlackbody:
    def test_zero_at_t0(self):
        assert blackbody_density(ThermalPoint(0.0), SCALAR) == 0.0

    def test_scalar_value_at_unit_kt(self):
        # kT = 1 natural: f = -pi^2/90 = -0.109662...
        tp = ThermalPoint(HBAR_C / K_BOLTZMANN)
        assert tp.kt == pytest.approx(1.0, rel=1e-14)
        assert blackbody_density(tp, SCALAR) == pytest.approx(-(PI**2) / 90.0 * tp.kt**4, rel=1e-14)
        assert blackbody_density(tp, SCALAR) == pytest.approx(-0.109662, abs=1e-6)

    def test_em_doubles_scalar(self):
        assert blackbody_density(TP300, EM) == pytest.approx(
            2.0 * blackbody_density(TP300, SCALAR), rel=1e-15
        )

    def test_planck_density_from_em_term(self):
        u = blackbody_internal_density(TP300, EM)
        assert u == pytest.approx(PI**2 * TP300.kt**4 / 15.0, rel=1e-12)

    def test_planck_density_against_finite_differences(self):
        # independent route: u = -T^2 d(f/T)/dT by central differences
        T = 300.0
        h = 1e-4 * T

        def f_over_t(temp):
            return blackbody_density(ThermalPoint(temp), EM) / temp

        d1 = (f_over_t(T + h) - f_over_t(T - h)) / (2.0 * h)
        d2 = (f_over_t(T + h / 2.0) - f_over_t(T - h / 2.0)) / h
        u_fd = -(T**2) * (4.0 * d2 - d1) / 3.0
        assert u_fd == pytest.approx(PI**2 * TP300.kt**4 / 15.0, rel=1e-10)


class TestSubtractionCoefficients:
    def test_scalar_cube(self):
        a = 1.0
        coeffs = subtraction_coeffs(BoxGeometry(a, a, a), SCALAR)
        assert coeffs.alpha1 == pytest.approx(3.0 * ZETA3 * a**2 / (4.0 * PI), rel=1e-15)
        assert coeffs.alpha2 == pytest.approx(-PI * a / 8.0, rel=1e-15)
        assert coeffs.bb_prefactor == pytest.approx(PI**2 / 90.0, rel=1e-15)

    def test_em_has_no_surface_term(self):
        coeffs = subtraction_coeffs(BoxGeometry(1.0, 2.0, 3.0), EM)
        assert coeffs.alpha1 == 0.0
        assert coeffs.alpha2 == pytest.approx(PI * 6.0 / 12.0, rel=1e-15)
        assert coeffs.bb_prefactor == pytest.approx(PI**2 / 45.0, rel=1e-15)

    def test_heat_kernel_route(self):
        g = BoxGeometry(1.0, 2.0, 3.0)
        a_half, a_one = heat_kernel_coeffs(g)
        surface = 2.0 * (1 * 2 + 2 * 3 + 3 * 1)
        assert a_half == pytest.approx(-math.sqrt(PI) * surface / 2.0, rel=1e-15)
        assert a_one == pytest.approx(PI * 6.0, rel=1e-15)
        coeffs = subtraction_coeffs(g, SCALAR)
        assert coeffs.alpha1 == pytest.approx(-ZETA3 * a_half / (4.0 * PI**1.5), rel=1e-13)
        assert coeffs.alpha2 == pytest.approx(-a_one / 24.0, rel=1e-13)

    def test_corner_coefficient_right_angle(self):
        assert corner_coefficient(PI / 2.0) == pytest.approx(PI / 4.0, rel=1e-15)

    def test_unit_cube_edge_coefficient(self):
        _, a_one = heat_kernel_coeffs(BoxGeometry(1.0, 1.0, 1.0))
        assert a_one == pytest.approx(3.0 * PI, rel=1e-15)


class TestFreeEnergy:
    def test_t0_reduces_to_e0(self):
        fe = free_energy(CUBE_2UM, SCALAR, ThermalPoint(0.0))
        assert fe.total == fe.e0_ren
        assert fe.thermal_raw == fe.bb_term == fe.alpha1_term == fe.alpha2_term == 0.0

    @pytest.mark.parametrize("field", [SCALAR, EM])
    @pytest.mark.parametrize("temperature", [50.0, 300.0, 600.0])
    def test_breakdown_identity(self, field, temperature):
        fe = free_energy(CUBE_2UM, field, ThermalPoint(temperature))
        naive = fe.e0_ren + fe.thermal_raw + fe.bb_term + fe.alpha1_term + fe.alpha2_term
        assert abs(naive - fe.total) <= 4.0 * math.ulp(abs(fe.total))

    def test_scalar_cube_reduced_form(self):
        # independent rewrite in the dimensionless variable t = T_eff/T:
        # F = E0 + (1/(2at)) sum ln(1 - e^{-2 pi t sqrt(n^2+l^2+p^2)})
        #     + pi^2/(1440 a t^4) - 3 zeta3/(32 pi a t^3) + pi/(32 a t^2)
        a = CUBE_2UM.a
        t = TP300.reduced_t(a)
        mode_sum = 0.0
        for n in range(1, 40):
            for l in range(1, 40):
                for p in range(1, 40):
                    r = 2.0 * PI * t * math.sqrt(n * n + l * l + p * p)
                    if r > 700.0:
                        break
                    mode_sum += math.log1p(-math.exp(-r))
        fe = free_energy(CUBE_2UM, SCALAR, TP300)
        reduced = math.fsum(
            [
                fe.e0_ren,
                mode_sum / (2.0 * a * t),
                PI**2 / (1440.0 * a * t**4),
                -3.0 * ZETA3 / (32.0 * PI * a * t**3),
                PI / (32.0 * a * t**2),
            ]
        )
        assert fe.total == pytest.approx(reduced, rel=1e-12)

    def test_em_cube_reduced_form(self):
        # F = E0 + (3/(2at)) sum_{nl} ln(...) + (1/(at)) sum_{nlp} ln(...)
        #     + pi^2/(720 a t^4) - pi/(16 a t^2)
        a = CUBE_2UM.a
        t = TP300.reduced_t(a)
        pair_sum = 0.0
        for n in range(1, 60):
            for l in range(1, 60):
                r = 2.0 * PI * t * math.sqrt(n * n + l * l)
                if r > 700.0:
                    break
                pair_sum += math.log1p(-math.exp(-r))
        triple_sum = 0.0
        for n in range(1, 40):
            for l in range(1, 40):
                for p in range(1, 40):
                    r = 2.0 * PI * t * math.sqrt(n * n + l * l + p * p)
                    if r > 700.0:
                        break
                    triple_sum += math.log1p(-math.exp(-r))
        fe = free_energy(CUBE_2UM, EM, TP300)
        reduced = math.fsum(
            [
                fe.e0_ren,
                3.0 * pair_sum / (2.0 * a * t),
                triple_sum / (a * t),
                PI**2 / (720.0 * a * t**4),
                -PI / (16.0 * a * t**2),
            ]
        )
        assert fe.total == pytest.approx(reduced, rel=1e-12)

    def test_scalar_increases_em_decreases_with_t(self):
        temps = np.linspace(100.0, 600.0, 11)
        f_s = [free_energy(CUBE_2UM, SCALAR, ThermalPoint(float(T))).total for T in temps]
        f_e = [free_energy(CUBE_2UM, EM, ThermalPoint(float(T))).total for T in temps]
        assert np.all(np.diff(f_s) > 0.0)
        assert np.all(np.diff(f_e) < 0.0)

    def test_classical_ratio_approaches_one(self):
        # F(2T) / (2 F(T)) -> 1 as aT doubles: the kT-proportional regime
        a = 1.0
        cube = BoxGeometry(a, a, a)
        gaps = []
        for field in (SCALAR, EM):
            totals = [free_energy(cube, field, tp_for_akt(a, akt)).total for akt in (2, 4, 8, 16)]
            ratios = [totals[i + 1] / (2.0 * totals[i]) for i in range(3)]
            devs = [abs(rr - 1.0) for rr in ratios]
            assert devs[0] > devs[1] > devs[2]
            gaps.append(devs[-1])
        assert max(gaps) < 0.25


class TestForce:
    def test_matches_finite_difference_of_free_energy(self):
        a = 2e-6
        h = 1e-4 * a
        for field in (SCALAR, EM):

            def f_of(aa):
                return free_energy(BoxGeometry(aa, 2e-6, 2e-6), field, TP300).total

            d1 = (f_of(a + h) - f_of(a - h)) / (2.0 * h)
            d2 = (f_of(a + h / 2.0) - f_of(a - h / 2.0)) / h
            fd = -(4.0 * d2 - d1) / 3.0
            assert force_x(CUBE_2UM, field, TP300) == pytest.approx(fd, rel=1e-4)

    def test_scalar_cube_attractive_em_repulsive(self):
        for T in (0.0, 150.0, 300.0, 600.0):
            tp = ThermalPoint(T)
            assert force_x(CUBE_2UM, SCALAR, tp) < 0.0
            assert force_x(CUBE_2UM, EM, tp) > 0.0

    def test_em_force_increases_with_t(self):
        temps = [0.0, 100.0, 200.0, 300.0, 450.0, 600.0]
        vals = [force_x(CUBE_2UM, EM, ThermalPoint(T)) for T in temps]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_temperature_contribution_sign_cases(self):
        # b = c = 10 um: thermal force piece negative at a = 2.942 um,
        # positive at a = 34.29 um, and positive for long boxes a > b
        tp = ThermalPoint(300.0)
        t0 = ThermalPoint(0.0)
        for a_um, expected_sign in ((2.942, -1.0), (34.29, +1.0)):
            g = BoxGeometry(a_um * 1e-6, 10e-6, 10e-6)
            delta = force_x(g, EM, tp) - force_x(g, EM, t0)
            assert math.copysign(1.0, delta) == expected_sign
        for a_um in (11.0, 15.0, 20.0, 30.0, 50.0):
            g = BoxGeometry(a_um * 1e-6, 10e-6, 10e-6)
            delta = force_x(g, EM, tp) - force_x(g, EM, t0)
            assert delta > 0.0


class TestInternalEnergyAndEntropy:
    def test_u_approaches_e0_at_low_t(self):
        # the residual scales as (kT)^2, so push T low enough
        tp = ThermalPoint(1.0)
        u = internal_energy(CUBE_2UM, SCALAR, tp)
        e0v = e0(CUBE_2UM, SCALAR)
        assert u == pytest.approx(e0v, rel=1e-4)

    def test_requires_positive_t(self):
        with pytest.raises(ValueError):
            internal_energy(CUBE_2UM, SCALAR, ThermalPoint(0.0))
        with pytest.raises(ValueError):
            entropy(CUBE_2UM, SCALAR, ThermalPoint(0.0))

    @pytest.mark.parametrize("field", [SCALAR, EM])
    def test_u_consistent_with_finite_differences(self, field):
        T = 300.0
        h = 1e-4 * T

        def f_over_t(temp):
            return free_energy(CUBE_2UM, field, ThermalPoint(temp)).total / temp

        d1 = (f_over_t(T + h) - f_over_t(T - h)) / (2.0 * h)
        d2 = (f_over_t(T + h / 2.0) - f_over_t(T - h / 2.0)) / h
        u_fd = -(T**2) * (4.0 * d2 - d1) / 3.0
        assert internal_energy(CUBE_2UM, field, TP300) == pytest.approx(u_fd, rel=1e-4)

    @pytest.mark.parametrize("field", [SCALAR, EM])
    def test_entropy_consistent_with_finite_differences(self, field):
        T = 300.0
        h = 1e-4 * T

        def f_of(temp):
            return free_energy(CUBE_2UM, field, ThermalPoint(temp)).total

        d1 = (f_of(T + h) - f_of(T - h)) / (2.0 * h)
        d2 = (f_of(T + h / 2.0) - f_of(T - h / 2.0)) / h
        s_fd = -(4.0 * d2 - d1) / 3.0 * T / TP300.kt
        assert entropy(CUBE_2UM, field, TP300) == pytest.approx(s_fd, rel=1e-4)

    def test_entropy_vanishes_linearly_at_low_t(self):
        s_vals = [entropy(CUBE_2UM, SCALAR, ThermalPoint(T)) for T in (1.0, 2.0, 4.0)]
        assert abs(s_vals[0]) < abs(s_vals[1]) < abs(s_vals[2])
        # leading behavior linear in T, from the (kT)^2 subtraction term
        assert s_vals[1] / s_vals[0] == pytest.approx(2.0, rel=0.05)

    def test_entropy_increment_bounded_at_high_t(self):
        a = 1.0
        cube = BoxGeometry(a, a, a)
        s_vals = [entropy(cube, SCALAR, tp_for_akt(a, akt)) for akt in (2, 4, 8, 16)]
        increments = [abs(b - a) for a, b in zip(s_vals, s_vals[1:])]
        assert increments[-1] < 2.0 * increments[0] + 1.0


class TestAsymptote:
    def test_scalar_direct_substitution(self):
        # unit cube at kT = 10 natural units
        g = BoxGeometry(1.0, 1.0, 1.0)
        tp = tp_for_akt(1.0, 10.0)
        kt = tp.kt
        expected = -PI * kt**2 * 3.0 / 24.0 + ZETA3 * 3.0 * kt**3 / (4.0 * PI) - PI**2 * kt**4 / 90.0
        assert asymptotic_thermal(g, SCALAR, tp) == pytest.approx(expected, rel=1e-13)

    def test_em_has_no_cubic_term(self):
        g = BoxGeometry(1.0, 2.0, 3.0)
        tp = tp_for_akt(1.0, 5.0)
        kt = tp.kt
        expected = PI * kt**2 * 6.0 / 12.0 - PI**2 * kt**4 * 6.0 / 45.0
        assert asymptotic_thermal(g, EM, tp) == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("field", [SCALAR, EM])
    def test_ratio_to_raw_approaches_one(self, field):
        g = BoxGeometry(1.0, 1.0, 1.0)
        devs = []
        for akt in (4.0, 8.0, 16.0):
            tp = tp_for_akt(1.0, akt)
            ratio = thermal_raw(g, field, tp) / asymptotic_thermal(g, field, tp)
            devs.append(abs(ratio - 1.0))
        assert devs[0] > devs[1] > devs[2]
        assert devs[-1] < 0.01


class TestSubtractionCompleteness:
    @pytest.mark.parametrize("field", [SCALAR, EM])
    def test_no_residual_power_growth(self, field):
        # [raw + bb - alpha terms]/kT stays within a small factor over a
        # 16x temperature span (only log growth remains)
        a = 1.0
        cube = BoxGeometry(a, a, a)
        vals = []
        for akt in (1.0, 2.0, 4.0, 8.0, 16.0):
            tp = tp_for_akt(a, akt)
            fe = free_energy(cube, field, tp)
            vals.append(abs((fe.total - fe.e0_ren) / tp.kt))
        assert max(vals) / min(vals) < 5.0
