import math
import sys

import numpy as np
from django.test import SimpleTestCase

from apps.utils.choices import QuadratureBackend
from apps.utils.exceptions import InvalidInputError, QuadratureBudgetError
from .integrals import eval_Ik, eval_Jk, eval_partial_fractions, ik_at_zero, partial_fraction_coefficients
from .kronrod import GAUSS_WEIGHTS, KRONROD_WEIGHTS, adaptive_integrate
from .models import CubicPhaseIntegrand, QuadratureResult
from .services import (
    confirmed_zeros,
    eval_F4,
    eval_F61,
    eval_F62,
    eval_Fpoly,
    evaluate_f,
    f_integrand,
    poly_numerators,
    sample_f_curve,
    uniform_grid,
)
from .tasks import sample_f_curve_task
from .utils import (
    MAX_CUTOFF,
    ROOT_TOL,
    choose_truncation,
    eval_oscillatory,
    find_zeros,
    log_floor,
    panel_breakpoints,
    phase,
    phase_inverse,
    tail_bound,
    tail_correction,
)

F4_ROOT = 0.61078210
F62_ROOTS = (0.15745028, 0.87685728)
ROOT_WINDOW = 1e-6
ZERO_WINDOW = 2e-7
DECAY_LIMIT = 1e-4

P1 = (6, 0, -480, 0, 4510, 0, -11088, 0, 8514, 0, -1936, 0, 90)
P2 = (0, 79, 0, -1782, 0, 8217, 0, -11220, 0, 4785, 0, -534, 0, 7)
P3 = (-7, 0, 749, 0, -9919, 0, 37037, 0, -48477, 0, 23023, 0, -3549, 0, 119)
P4 = (0, -106, 0, 3276, 0, -22022, 0, 48048, 0, -38038, 0, 10556, 0, -826, 0, 8)


def setUp_integrands(self):
    self.arctangent = CubicPhaseIntegrand((1.0,), (), 1, 0.0)
    self.f4_origin = f_integrand('F4', 0.0)
    self.f62_moderate = f_integrand('F62', 1.2)


class KronrodTestCase(SimpleTestCase):
    """
    Regra de Gauss–Kronrod e driver adaptativo.
    """

    def test_weights(self):
        """Both rules integrate constants exactly."""
        self.assertAlmostEqual(KRONROD_WEIGHTS.sum(), 2.0, delta=1e-15)
        self.assertAlmostEqual(GAUSS_WEIGHTS.sum(), 2.0, delta=1e-15)
        self.assertEqual(int(np.count_nonzero(GAUSS_WEIGHTS)), 7)

    def test_real_and_complex(self):
        """∫cos on [0, π/2] = 1 and ∫e^{ix} on [0, π] = 2i."""
        value, error, evaluations = adaptive_integrate(np.cos, [0.0, math.pi / 2], 1e-13, 10_000)
        self.assertAlmostEqual(value, 1.0, delta=1e-13)
        self.assertEqual(evaluations % 15, 0)
        value, _, _ = adaptive_integrate(lambda x: np.exp(1j * x), [0.0, 1.0, math.pi], 1e-13, 10_000)
        self.assertAlmostEqual(value.real, 0.0, delta=1e-13)
        self.assertAlmostEqual(value.imag, 2.0, delta=1e-13)

    def test_budget(self):
        """A singular integrand with a tiny budget runs out of evaluations."""
        with self.assertRaises(QuadratureBudgetError):
            adaptive_integrate(lambda x: np.sqrt(np.abs(x)), [-1.0, 1.0], 1e-14, 100)


class IntegrandTestCase(SimpleTestCase):
    """
    CubicPhaseIntegrand and QuadratureResult invariants.
    """

    def test_rejects_divergent(self):
        """Numerators of degree > 2k − 2 are rejected."""
        with self.assertRaises(InvalidInputError):
            CubicPhaseIntegrand((0, 0, 1), (), 1, 1.0)
        with self.assertRaises(InvalidInputError):
            CubicPhaseIntegrand((1,), (), 0, 1.0)
        with self.assertRaises(InvalidInputError):
            CubicPhaseIntegrand((1,), (), 1, math.inf)

    def test_trims_and_evaluates(self):
        """Trailing zeros are dropped; the value at 0 is C(0)."""
        integrand = CubicPhaseIntegrand((2.0, 0.0, 0.0), (0.0, 1.0, 0.0), 3, 0.7)
        self.assertEqual(integrand.cos_numerator, (2.0,))
        self.assertEqual(integrand.degree, 1)
        self.assertEqual(integrand(0.0), 2.0)

    def test_result_error(self):
        """Error estimates must be finite and non-negative."""
        with self.assertRaises(InvalidInputError):
            QuadratureResult(1.0, -1.0, 10)
        with self.assertRaises(InvalidInputError):
            QuadratureResult(1.0, math.nan, 10)


class OscillatoryTestCase(SimpleTestCase):
    """
    Quadratura direta na reta real.
    """

    def setUp(self):
        setUp_integrands(self)

    def test_phase_inverse(self):
        """phase(phase_inverse(v)) = v."""
        v = np.linspace(-200.0, 200.0, 81)
        np.testing.assert_allclose(phase(phase_inverse(v)), v, rtol=1e-12, atol=1e-13)
        self.assertEqual(phase_inverse(0.0), 0.0)

    def test_arctangent(self):
        """Constant numerator, k = 1, δ = 0 gives π."""
        result = eval_oscillatory(self.arctangent, 1e-10)
        self.assertAlmostEqual(result.value, math.pi, delta=1e-9)
        self.assertLessEqual(result.error_estimate, 1e-9)

    def test_f4_origin(self):
        """F4(0) = 0."""
        self.assertLess(abs(eval_oscillatory(self.f4_origin, 1e-11).value), 1e-10)

    def test_f_signs(self):
        """F4(0.3) < 0, F61(−1) > 0 and F61(1) < 0."""
        self.assertLess(eval_F4(0.3), 0.0)
        self.assertGreater(eval_F61(-1.0), 0.0)
        self.assertLess(eval_F61(1.0), 0.0)
        self.assertLess(abs(eval_F61(0.0, 1e-11)), 1e-10)

    def test_known_zeros(self):
        """The F4 and F62 roots vanish to 2e−7."""
        self.assertLess(abs(eval_F4(F4_ROOT)), ZERO_WINDOW)
        for root in F62_ROOTS:
            self.assertLess(abs(eval_F62(root)), ZERO_WINDOW)

    def test_decay(self):
        """|F(±10)| <= 1e−4 for the three named functions."""
        for theta in (-10.0, 10.0):
            self.assertLessEqual(abs(eval_F4(theta, 1e-8)), DECAY_LIMIT)
            self.assertLessEqual(abs(eval_F61(theta, 1e-8)), DECAY_LIMIT)
            self.assertLessEqual(abs(eval_F62(theta, 1e-8)), DECAY_LIMIT)

    def test_tolerance_range(self):
        """Tolerances outside [1e−13, 1e−3] are rejected."""
        for tol in (1e-14, 1e-2, math.nan, 'x'):
            with self.assertRaises(InvalidInputError):
                eval_oscillatory(self.f4_origin, tol)

    def test_refusals(self):
        """Large phase scales and small budgets raise budget errors."""
        with self.assertRaises(QuadratureBudgetError):
            eval_oscillatory(f_integrand('F4', 30.0))
        with self.assertRaises(QuadratureBudgetError):
            eval_oscillatory(f_integrand('F4', 5.0), budget=1000)

    def test_tail_honesty(self):
        """Halving Z moves the value by less than the reported errors."""
        for integrand in (self.f4_origin, self.f62_moderate):
            terms, cutoff = choose_truncation(integrand, 1e-10)
            full = eval_oscillatory(integrand, 1e-10, truncation=(terms, cutoff))
            half = eval_oscillatory(integrand, 1e-10, truncation=(terms, cutoff / 2))
            self.assertLessEqual(abs(full.value - half.value), full.error_estimate + half.error_estimate)
            self.assertLessEqual(tail_bound(integrand, cutoff, terms), 1e-10 / 4)

    def test_underflowing_tail_terms(self):
        """Deep tail terms whose bound underflows at the largest Z still yield a cutoff."""
        integrand = f_integrand('F4', 5.0)
        self.assertEqual(tail_bound(integrand, MAX_CUTOFF, 6), 0.0)
        terms, cutoff = choose_truncation(integrand, 1e-10)
        self.assertTrue(math.isfinite(cutoff))
        self.assertLessEqual(tail_bound(integrand, cutoff, terms), 1e-10 / 4)
        self.assertTrue(math.isfinite(eval_F4(5.0).value))
        self.assertEqual(log_floor(0.0), math.log(sys.float_info.min))

    def test_tail_pieces(self):
        """No correction without terms; the bound decreases with Z."""
        self.assertEqual(tail_correction(self.f62_moderate, 3.0, 0), 0.0)
        bounds = [tail_bound(self.f62_moderate, z, 2) for z in (1.0, 2.0, 4.0, 8.0)]
        self.assertEqual(bounds, sorted(bounds, reverse=True))

    def test_breakpoints(self):
        """Breakpoints are sorted, unique and span [−Z, Z]."""
        points = panel_breakpoints(2.0, 5.0)
        self.assertEqual(points[0], -5.0)
        self.assertEqual(points[-1], 5.0)
        self.assertTrue(np.all(np.diff(points) > 0))
        roots = phase_inverse(np.arange(1, 5) * math.pi / 2.0)
        for root in roots:
            self.assertIn(root, points)


class IntegralsTestCase(SimpleTestCase):
    """
    I_k, J_k on the shifted contour and the partial-fraction pipeline.
    """

    def test_values_at_zero(self):
        """I_1(0) = π/2, J_2(0) = 0."""
        self.assertAlmostEqual(eval_Ik(1, 0.0), math.pi / 2, delta=1e-15)
        self.assertEqual(eval_Jk(2, 0.0), 0.0)
        self.assertAlmostEqual(ik_at_zero(2), math.pi / 4, delta=1e-15)

    def test_recurrence(self):
        """J_{k+2}(δ) = δ/(2(k+1)) I_k(δ)."""
        for k in range(1, 7):
            for delta in (0.5, 2.0, 10.0):
                expected = delta / (2 * (k + 1)) * eval_Ik(k, delta, 1e-12)
                self.assertAlmostEqual(eval_Jk(k + 2, delta, 1e-12) / expected, 1.0, delta=1e-8)

    def test_symmetry(self):
        """I_k is even and J_k odd in δ."""
        for k in (2, 4):
            for delta in (0.7, 3.0):
                self.assertAlmostEqual(eval_Ik(k, -delta), eval_Ik(k, delta), delta=1e-10)
                self.assertAlmostEqual(eval_Jk(k, -delta), -eval_Jk(k, delta), delta=1e-10)

    def test_against_real_line(self):
        """The contour values agree with the real-line quadrature."""
        for k in (2, 3, 4):
            for delta in (0.5, 2.0):
                direct = eval_oscillatory(CubicPhaseIntegrand((1.0,), (), k, delta), 1e-11).value / 2
                self.assertAlmostEqual(eval_Ik(k, delta, 1e-12), direct, delta=1e-9)

    def test_deep_contour_tails(self):
        """Large k at moderate δ, where the line tail underflows at the largest cutoff."""
        for k in (5, 6):
            for delta in (5.0, 50.0):
                self.assertTrue(math.isfinite(eval_Ik(k, delta, 1e-12)))
                self.assertTrue(math.isfinite(eval_Jk(k, delta, 1e-12)))
        result = eval_partial_fractions(f_integrand('F62', 2.0), 1e-12)
        self.assertTrue(math.isfinite(result.value))

    def test_large_delta(self):
        """For δ = 300 I_4 is tiny but still positive and finite."""
        value = eval_Ik(4, 300.0, 1e-10)
        self.assertGreater(value, 0.0)
        self.assertLess(value, math.exp(-150.0))

    def test_partial_fraction_coefficients(self):
        """F4 numerators in the w basis."""
        even, odd = partial_fraction_coefficients(f_integrand('F4', 1.0))
        self.assertEqual(even, (40.0, -52.0, 14.0))
        self.assertEqual(odd, (40.0, -32.0, 3.0))
        self.assertLess(abs(eval_partial_fractions(f_integrand('F4', 0.0)).value), 1e-13)

    def test_dual_backend(self):
        """Both pipelines agree on a 32-point grid in [−2, 2]."""
        for name in ('F4', 'F61', 'F62'):
            for theta in np.linspace(-2.0, 2.0, 32):
                a = evaluate_f(name, theta, 1e-12).value
                b = evaluate_f(name, theta, 1e-12, QuadratureBackend.PARTIAL_FRACTIONS).value
                self.assertLessEqual(abs(a - b), max(1e-8 * abs(b), 1e-10), msg=f'{name} at {theta}')

    def test_dual_backend_polygon(self):
        """The polygon family cancels more digits in the w basis; looser agreement."""
        for theta in (-1.5, -0.6, 0.5, 1.1, 1.8):
            a = evaluate_f('poly:7', theta, 1e-12).value
            b = evaluate_f('poly:7', theta, 1e-12, QuadratureBackend.PARTIAL_FRACTIONS).value
            self.assertLessEqual(abs(a - b), max(1e-6 * abs(b), 1e-8), msg=f'poly:7 at {theta}')


class FunctionsTestCase(SimpleTestCase):
    """
    Funções F nomeadas, família do polígono e zeros.
    """

    def test_polygon_numerators(self):
        """N = 7 gives p1, p2; N = 8 gives −p3, −p4."""
        self.assertEqual(poly_numerators(7), (tuple(map(float, P1)), tuple(map(float, P2))))
        cos_numerator, sin_numerator = poly_numerators(8)
        self.assertEqual(cos_numerator, tuple(-float(c) for c in P3))
        self.assertEqual(sin_numerator, tuple(-float(c) for c in P4))

    def test_polygon_parity(self):
        """Cosine numerators are even and sine numerators odd."""
        for N in range(4, 10):
            cos_numerator, sin_numerator = poly_numerators(N)
            self.assertTrue(all(c == 0 for c in cos_numerator[1::2]))
            self.assertTrue(all(c == 0 for c in sin_numerator[0::2]))
            self.assertEqual(cos_numerator[0], N - 1)

    def test_polygon_four_is_f62(self):
        """The N = 4 member equals −F62."""
        integrand = f_integrand('poly:4', 0.9)
        reference = f_integrand('F62', 0.9)
        self.assertEqual(integrand.cos_numerator, tuple(-c for c in reference.cos_numerator))
        self.assertEqual(integrand.phase_scale, reference.phase_scale)
        for theta in (-1.0, 0.4, 1.3):
            self.assertAlmostEqual(eval_Fpoly(4, theta), -eval_F62(theta), delta=1e-9)

    def test_names(self):
        """Unknown names and N < 4 are rejected."""
        for name in ('F5', 'poly:3', 'poly:x'):
            with self.assertRaises(InvalidInputError):
                f_integrand(name, 1.0)

    def test_find_zeros(self):
        """F4 and F62 roots, a constant-sign function and an exact grid zero."""
        roots = find_zeros(lambda theta: eval_F4(theta, ROOT_TOL), 0.1, 1.5, 64)
        self.assertEqual(len(roots), 1)
        self.assertAlmostEqual(roots[0], F4_ROOT, delta=ROOT_WINDOW)
        roots = find_zeros(lambda theta: eval_F62(theta, ROOT_TOL), 0.05, 1.2, 128)
        self.assertEqual(len(roots), 2)
        for found, expected in zip(roots, F62_ROOTS):
            self.assertAlmostEqual(found, expected, delta=ROOT_WINDOW)
        self.assertEqual(find_zeros(lambda x: 1.0 + x * x, -1.0, 1.0, 16), [])
        self.assertEqual(find_zeros(lambda x: x, -1.0, 1.0, 8), [0.0])
        with self.assertRaises(InvalidInputError):
            find_zeros(eval_F4, 0.1, 1.5, 4)

    def test_confirmed_zeros(self):
        """The F4 root survives the dual-backend check."""
        roots = confirmed_zeros('F4', 0.1, 1.5, 32)
        self.assertEqual(len(roots), 1)
        self.assertAlmostEqual(roots[0], F4_ROOT, delta=ROOT_WINDOW)

    def test_confirmed_small_root(self):
        """The F62 root near 0.157 sits where |F62| is ~1e-9; the default search still lands within 1e-6."""
        roots = confirmed_zeros('F62', 0.1, 0.2, 8)
        self.assertEqual(len(roots), 1)
        self.assertAlmostEqual(roots[0], F62_ROOTS[0], delta=ROOT_WINDOW)

    def test_sample_curve(self):
        """Samples keep grid order and match single evaluations."""
        results = sample_f_curve('F61', -1.0, 1.0, 9, 1e-9)
        grid = uniform_grid(-1.0, 1.0, 9)
        self.assertEqual(len(results), 9)
        for theta, result in zip(grid, results):
            self.assertEqual(result.value, evaluate_f('F61', theta, 1e-9).value)

    def test_sample_task(self):
        """The Celery task returns [theta, value, error] rows."""
        rows = sample_f_curve_task.apply(args=('F4', 0.2, 1.0, 5, 1e-8)).get()
        self.assertEqual([row[0] for row in rows], uniform_grid(0.2, 1.0, 5))
        self.assertLess(rows[0][1], 0.0)
