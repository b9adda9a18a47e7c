import math

import numpy as np
from django.test import SimpleTestCase

from apps.configurations import builders
from apps.configurations.services import configuration_to_payload
from apps.melnikov.services import classify
from apps.melnikov.utils import melnikov_sum
from apps.utils.choices import FlowTime
from apps.utils.exceptions import ConvergenceRegionError, InvalidInputError
from .models import FlowParams, McGeheeState, PolarState
from .services import (
    integrate,
    poincare_numeric,
    splitting_measure,
    splitting_shooting,
    splitting_sweep,
    trajectory_header,
    trajectory_rows,
)
from .tasks import splitting_sweep_task
from .utils import (
    SQRT2,
    convergence_limit,
    duffing_field,
    duffing_rhs,
    hd_value,
    homoclinic,
    jacobi_value,
    mcgehee_t_field,
    mcgehee_tau_field,
    mcgehee_to_polar,
    perturbing_potential,
    polar_to_mcgehee,
    reduced_field,
    rhs_mcgehee_t,
    rhs_mcgehee_tau,
    s_closed_form,
    s_rate,
    theta_from_jacobi,
)

EPSILON = 0.5
TAU_GRID = np.linspace(-10.0, 10.0, 100)
DUFFING_TOL = 1e-12
POINCARE_X0 = 0.02
POINCARE_WINDOW = 0.05
SPLITTING_WINDOW = 1e-4
ZERO_OFFSET = 1e-3


def setUp_flows(self):
    self.rp3bp = builders.build_rp3bp(0.3)
    self.rp3bp_half = builders.build_rp3bp(0.5)
    self.collinear8 = builders.solve_collinear_equal(7)
    self.params = FlowParams(EPSILON, self.rp3bp, 9)
    self.state = McGeheeState(0.5, 0.1, 0.2, 1.0)


class HomoclinicTestCase(SimpleTestCase):
    """
    Separatriz da equação de Duffing.
    """

    def test_center(self):
        for theta0 in (1.0, -1.0, 2.0):
            x, y = homoclinic(0.0, theta0)
            self.assertAlmostEqual(x, SQRT2 / abs(theta0), delta=1e-15)
            self.assertEqual(y, 0.0)

    def test_decay(self):
        """Both components fall below 1e-8 once |τ| >= 20."""
        for tau in (-20.0, 20.0, 40.0, -400.0):
            x, y = homoclinic(tau, 1.0)
            self.assertLess(max(abs(x), abs(y)), 1e-8)

    def test_energy_level(self):
        """H_D vanishes along the separatrix."""
        for theta0 in (1.0, -0.7):
            x, y = homoclinic(TAU_GRID, theta0)
            self.assertLess(np.max(np.abs(hd_value(x, y, theta0))), 1e-13)

    def test_solves_duffing(self):
        """The analytic derivative of the separatrix equals the Duffing field."""
        theta0 = 1.3
        a = SQRT2 / theta0
        sech = 1.0 / np.cosh(TAU_GRID)
        tanh = np.tanh(TAU_GRID)
        x, y = homoclinic(TAU_GRID, theta0)
        dx, dy = -a * sech * tanh, -a * (sech**3 - tanh**2 * sech)
        fx, fy = duffing_rhs(x, y, theta0)
        self.assertLess(np.max(np.abs(fx - dx)), 1e-12)
        self.assertLess(np.max(np.abs(fy - dy)), 1e-12)

    def test_fixed_points(self):
        theta0 = 1.7
        for x in (0.0, 1.0 / theta0, -1.0 / theta0):
            fx, fy = duffing_rhs(x, 0.0, theta0)
            self.assertEqual(fx, 0.0)
            self.assertAlmostEqual(fy, 0.0, delta=1e-15)
        self.assertEqual(hd_value(0.0, 0.0, theta0), 0.0)

    def test_theta0_zero(self):
        with self.assertRaises(InvalidInputError):
            homoclinic(0.0, 0.0)


class AngleTestCase(SimpleTestCase):
    """
    s(τ) ao longo da homoclínica.
    """

    def test_origin(self):
        self.assertEqual(s_closed_form(0.0, 0.7, 1.0, EPSILON), 0.7)

    def test_rate(self):
        """Central differences of s(τ) match ds/dτ to relative 1e-8."""
        h = 1e-5
        for theta0 in (1.0, -1.3):
            for tau in (-2.0, -0.7, 0.3, 1.5):
                difference = (
                    s_closed_form(tau + h, 0.4, theta0, EPSILON) - s_closed_form(tau - h, 0.4, theta0, EPSILON)
                ) / (2.0 * h)
                rate = s_rate(tau, theta0, EPSILON)
                self.assertAlmostEqual(difference / rate, 1.0, delta=1e-8)

    def test_branch_flip(self):
        """Flipping Θ0 reverses the arctangent part of s and keeps the |Θ0|³ part."""
        for tau in (-1.0, 0.5, 2.0):
            upper = s_closed_form(tau, 0.4, 1.2, EPSILON)
            lower = s_closed_form(tau, 0.4, -1.2, EPSILON)
            cubic = 1.2**3 / (24.0 * EPSILON**3) * (9.0 * math.sinh(tau) + math.sinh(3.0 * tau))
            arctangent = 4.0 * math.atan(math.tanh(0.5 * tau))
            self.assertAlmostEqual(upper - lower, -2.0 * arctangent, delta=1e-9)
            self.assertAlmostEqual(upper + lower, 0.8 + 2.0 * cubic, delta=1e-9 * max(1.0, abs(cubic)))


class FlowTestCase(SimpleTestCase):
    """
    Campos de vetores em t e em τ.
    """

    def setUp(self):
        setUp_flows(self)

    def test_periodic_orbit(self):
        """x = y = 0 is the periodic orbit s = s0 + t."""
        self.assertEqual(rhs_mcgehee_t(McGeheeState(0.0, 0.0, 1.0, -1.0), self.params), (0.0, 0.0, 1.0, 0.0))

    def test_kepler_truncation(self):
        """Order 3 keeps only the Kepler terms."""
        params = FlowParams(EPSILON, self.rp3bp, 3)
        x, y, theta = 0.3, 0.1, 0.8
        rate = EPSILON**3 * x**3 / SQRT2
        expected = (rate * y, rate * x * (1 - theta**2 * x**2), 1 - EPSILON**3 * theta * x**4, 0.0)
        derivative = rhs_mcgehee_t(McGeheeState(x, y, 1.0, theta), params)
        for value, reference in zip(derivative, expected):
            self.assertAlmostEqual(value, reference, delta=1e-16)

    def test_collinear_torque(self):
        """Bodies on a line exert no torque at s = 0."""
        params = FlowParams(EPSILON, self.collinear8, 9)
        self.assertAlmostEqual(rhs_mcgehee_t(McGeheeState(0.3, 0.1, 0.0, 1.0), params)[3], 0.0, delta=1e-15)
        self.assertNotEqual(rhs_mcgehee_t(McGeheeState(0.3, 0.1, 0.4, 1.0), params)[3], 0.0)

    def test_time_rescaling(self):
        """The τ field is the t field divided by ε³x³/√2."""
        rate = EPSILON**3 * self.state.x**3 / SQRT2
        for t_value, tau_value in zip(rhs_mcgehee_t(self.state, self.params), rhs_mcgehee_tau(self.state, self.params)):
            self.assertAlmostEqual(t_value / rate, tau_value, delta=1e-12 * max(1.0, abs(tau_value)))

    def test_convergence_region(self):
        limit = convergence_limit(self.params)
        self.assertAlmostEqual(limit, 1.0 / (EPSILON * math.sqrt(0.7)), delta=1e-12)
        with self.assertRaises(ConvergenceRegionError):
            rhs_mcgehee_t(McGeheeState(limit + 0.1, 0.0, 0.0, 1.0), self.params)
        with self.assertRaises(InvalidInputError):
            rhs_mcgehee_tau(McGeheeState(0.0, 0.0, 0.0, 1.0), self.params)

    def test_params(self):
        for epsilon, order in ((0.0, 9), (1.0, 9), (0.5, 5)):
            with self.assertRaises(InvalidInputError):
                FlowParams(epsilon, self.rp3bp, order)
        self.assertEqual([table.j for table in self.params.tables], [2, 3])

    def test_state(self):
        """s is reduced to [0, 2π); x < 0 is refused."""
        self.assertAlmostEqual(McGeheeState(0.1, 0.0, 7.0, 1.0).s, 7.0 - 2.0 * math.pi, delta=1e-15)
        with self.assertRaises(InvalidInputError):
            McGeheeState(-0.1, 0.0, 0.0, 1.0)
        with self.assertRaises(InvalidInputError):
            PolarState(0.0, 0.0, 0.0, 1.0)

    def test_polar_coordinates(self):
        """r = x^(−2), R = −√2 y, s = t − θ."""
        state = polar_to_mcgehee(PolarState(4.0, 0.3, 0.2, 1.1), t=1.0)
        self.assertAlmostEqual(state.x, 0.5, delta=1e-15)
        self.assertAlmostEqual(state.y, -0.2 / SQRT2, delta=1e-15)
        self.assertAlmostEqual(state.s, 0.7, delta=1e-15)
        polar = mcgehee_to_polar(state, t=1.0)
        self.assertAlmostEqual(polar.r, 4.0, delta=1e-14)
        self.assertAlmostEqual(polar.theta_angle, 0.3, delta=1e-15)
        self.assertAlmostEqual(polar.R, 0.2, delta=1e-15)
        with self.assertRaises(InvalidInputError):
            mcgehee_to_polar(McGeheeState(0.0, 0.0, 0.0, 1.0))


class JacobiTestCase(SimpleTestCase):
    def setUp(self):
        setUp_flows(self)

    def test_infinity(self):
        """Θ = −C at x = y = 0."""
        self.assertEqual(theta_from_jacobi(0.0, 0.0, -1.3, EPSILON), 1.3)

    def test_small_x(self):
        """With y = x, Θ + C = O(x⁴): halving x divides it by 16."""
        C = -1.0
        excess = [theta_from_jacobi(x, x, C, EPSILON) + C for x in (0.01, 0.005)]
        self.assertAlmostEqual(excess[0] / excess[1], 16.0, delta=16e-3)

    def test_recovers_theta(self):
        """Θ(x, y; C) inverts C(x, y, s, Θ) on both sides of the series switch."""
        for x in (0.6, 0.02):
            state = McGeheeState(x, 0.1, 1.0, 0.9)
            C = jacobi_value(state, self.params)
            V = perturbing_potential(state.x, state.s, EPSILON, self.params.tables)
            self.assertAlmostEqual(theta_from_jacobi(state.x, state.y, C, EPSILON, V), 0.9, delta=1e-12)

    def test_negative_radicand(self):
        with self.assertRaises(InvalidInputError):
            theta_from_jacobi(1.0, 0.0, -10.0, EPSILON)

    def test_reduced_flow_needs_jacobi(self):
        with self.assertRaises(InvalidInputError):
            reduced_field(self.params)


class IntegrateTestCase(SimpleTestCase):
    """
    Integração numérica dos fluxos.
    """

    def setUp(self):
        setUp_flows(self)

    def test_tracks_homoclinic(self):
        """Duffing from the separatrix at τ = −10 stays on it up to τ = 10."""
        start = homoclinic(-10.0, 1.0)
        trajectory = integrate(duffing_field(1.0), start, (-10.0, 10.0), DUFFING_TOL, time_variable=FlowTime.DUFFING)
        x, y = homoclinic(trajectory.times, 1.0)
        error = np.max(np.abs(trajectory.states - np.column_stack([x, y])))
        self.assertLess(error, 1e-6)

    def test_duffing_energy(self):
        """H_D is conserved inside the well."""
        trajectory = integrate(duffing_field(1.0), [0.5, 0.0], (0.0, 20.0), 1e-10, time_variable=FlowTime.DUFFING)
        energy = hd_value(trajectory.states[:, 0], trajectory.states[:, 1], 1.0)
        self.assertLess(np.max(np.abs(energy - hd_value(0.5, 0.0, 1.0))), 1e-9)

    def test_periodic_orbit(self):
        """From x = y = 0 the reduced flow never leaves infinity."""
        params = FlowParams(EPSILON, self.rp3bp, 9, jacobi_C=-1.0)
        trajectory = integrate(reduced_field(params), [0.0, 0.0, 0.3], (0.0, 4.0 * math.pi), 1e-10)
        self.assertLessEqual(np.max(np.abs(trajectory.states[:, :2])), 1e-14)
        self.assertAlmostEqual(trajectory.states[-1, 2], 0.3 + 4.0 * math.pi, delta=1e-9)

    def test_jacobi_conservation(self):
        """C drifts less than 1e-8 over 50 time units at order 9."""
        trajectory = integrate(mcgehee_t_field(self.params), self.state, (0.0, 50.0), 1e-11)
        values = [jacobi_value(McGeheeState.from_array(u), self.params) for u in trajectory.states]
        self.assertLess(max(abs(v - values[0]) for v in values), 1e-8)

    def test_t_and_tau_curves(self):
        """The τ trajectory, reparametrized by t, lies on the t trajectory."""
        tau_field = mcgehee_tau_field(self.params)

        def clocked(tau, u):
            return np.append(tau_field(tau, u[:4]), SQRT2 / (EPSILON**3 * u[0] ** 3))

        start = np.append(self.state.as_array(), 0.0)
        by_tau = integrate(clocked, start, (0.0, 0.2), 1e-11, time_variable=FlowTime.TAU)
        by_t = integrate(mcgehee_t_field(self.params), self.state, (0.0, 25.0), 1e-11)
        self.assertLess(by_tau.states[-1, 4], 25.0)
        error = max(np.max(np.abs(by_t.at(u[4]) - u[:4])) for u in by_tau.states)
        self.assertLess(error, 1e-7)

    def test_bad_tolerance(self):
        for tol in (1e-13, 1e-3):
            with self.assertRaises(InvalidInputError):
                integrate(duffing_field(1.0), [0.5, 0.0], (0.0, 1.0), tol)

    def test_rows(self):
        """Duffing rows carry the fixed Θ0 and no angle."""
        trajectory = integrate(duffing_field(1.0), [0.5, 0.0], (0.0, 1.0), 1e-8, time_variable=FlowTime.DUFFING)
        self.assertEqual(trajectory_header(trajectory), ('tau', 'x', 'y', 's', 'theta', 'H_D'))
        rows = trajectory_rows(trajectory, theta0=1.0)
        self.assertEqual(len(rows), len(trajectory))
        self.assertTrue(math.isnan(rows[0][3]))
        self.assertEqual(rows[0][4], 1.0)
        self.assertAlmostEqual(rows[-1][5], hd_value(0.5, 0.0, 1.0), delta=1e-7)
        t_rows = trajectory_rows(integrate(mcgehee_t_field(self.params), self.state, (0.0, 1.0), 1e-8))
        self.assertEqual(len(t_rows[0]), 6)
        self.assertAlmostEqual(t_rows[0][3], 0.2, delta=1e-15)


class PoincareTestCase(SimpleTestCase):
    """
    Mapa de Poincaré perto do infinito, C = −1.
    """

    def setUp(self):
        setUp_flows(self)
        self.params = FlowParams(EPSILON, self.rp3bp, 9, jacobi_C=-1.0)

    def test_leading_terms(self):
        """x and y updates match √2πε³x³y and √2πε³x⁴(1 − C²x²) within 5%."""
        x0 = y0 = POINCARE_X0
        x1, y1, period = poincare_numeric(x0, y0, 0.3, self.params, tol=1e-12)
        x_ratio = (x1 - x0) / (SQRT2 * math.pi * EPSILON**3 * x0**3 * y0)
        y_ratio = (y1 - y0) / (SQRT2 * math.pi * EPSILON**3 * x0**4 * (1.0 - x0**2))
        self.assertAlmostEqual(x_ratio, 1.0, delta=POINCARE_WINDOW)
        self.assertAlmostEqual(y_ratio, 1.0, delta=POINCARE_WINDOW)
        self.assertAlmostEqual(period, 2.0 * math.pi, delta=0.5)

    def test_fixed_point(self):
        x1, y1, period = poincare_numeric(0.0, 0.0, 1.0, self.params)
        self.assertEqual((x1, y1), (0.0, 0.0))
        self.assertAlmostEqual(period, 2.0 * math.pi, delta=1e-9)

    def test_bad_start(self):
        with self.assertRaises(InvalidInputError):
            poincare_numeric(0.2, 0.0, 0.0, self.params)
        with self.assertRaises(InvalidInputError):
            poincare_numeric(0.01, 0.0, 0.0, FlowParams(EPSILON, self.rp3bp, 9))


class SplittingTestCase(SimpleTestCase):
    """
    Separação ao longo da homoclínica contra ε⁴M4 + ε⁶M6 (Θ0 = 1, ε = 0.5).
    """

    def setUp(self):
        setUp_flows(self)

    def test_matches_melnikov(self):
        """RP3BP μ = 0.3 on eight values of s0."""
        rows = splitting_sweep(1.0, EPSILON, self.rp3bp, points=8)
        scale = max(abs(prediction) for _, _, _, prediction in rows)
        self.assertGreater(scale, 0.0)
        for s0, value, error, prediction in rows:
            self.assertAlmostEqual(value, prediction, delta=SPLITTING_WINDOW * scale)
            self.assertAlmostEqual(prediction, melnikov_sum(s0, 1.0, EPSILON, self.rp3bp), delta=1e-15)

    def test_zero_bracket(self):
        """The measure changes sign across the zero predicted by the witness."""
        zero = classify(self.rp3bp_half).witness.zero_locations[1]
        self.assertAlmostEqual(zero, math.pi / 2, delta=1e-12)
        before = splitting_measure(zero - ZERO_OFFSET, 1.0, EPSILON, self.rp3bp_half)
        after = splitting_measure(zero + ZERO_OFFSET, 1.0, EPSILON, self.rp3bp_half)
        self.assertLess(before.value * after.value, 0.0)
        self.assertGreater(abs(before.value), 10.0 * before.error_estimate)

    def test_selection_rule(self):
        """No retained harmonic survives on the pentagon."""
        result = splitting_measure(0.7, 1.0, EPSILON, builders.build_polygon(6))
        self.assertLess(abs(result.value), 1e-9)

    def test_preconditions(self):
        for T, epsilon, theta0 in ((10.0, EPSILON, 1.0), (15.0, 0.2, 1.0), (15.0, EPSILON, 0.0)):
            with self.assertRaises(InvalidInputError):
                splitting_measure(0.0, theta0, epsilon, self.rp3bp, T)

    def test_shooting(self):
        """The experimental shooting returns a finite difference."""
        value = splitting_shooting(0.4, 1.0, EPSILON, self.rp3bp, T=1.5, tol=1e-8)
        self.assertTrue(math.isfinite(value))
        with self.assertRaises(InvalidInputError):
            splitting_shooting(0.4, 1.0, EPSILON, self.rp3bp, T=0.0)

    def test_task(self):
        rows = splitting_sweep_task.apply(args=(configuration_to_payload(self.rp3bp), 1.0, EPSILON, 2)).get()
        self.assertEqual(len(rows), 2)
        self.assertEqual(rows[0][0], 0.0)
        self.assertEqual(len(rows[0]), 4)
