import math

import numpy as np
from django.test import SimpleTestCase

from apps.configurations import builders
from apps.configurations.utils import rotate_configuration
from apps.harmonics.utils import c_coeffs, d_coeffs
from apps.melnikov.utils import M4
from apps.quadrature.integrals import eval_Ik, eval_Jk
from apps.quadrature.services import evaluate_f, f_integrand
from apps.utils.choices import QuadratureBackend
from apps.utils.exceptions import InvalidInputError
from .models import FourierEstimate
from .services import (
    fourier_estimate,
    ik_table,
    leading_table,
    m4_leading,
    m4_leading_evaluation,
    m6_leading,
    m6_leading_evaluation,
    poly_leading,
    recurrence_table,
)
from .utils import (
    harmonic_decay,
    ik_asymptotic,
    ik_integrand,
    jk_from_ik,
    saddle_leading,
    saddle_moment,
    saddle_series,
    sanders_bound,
    sanders_lipschitz,
    sanders_threshold,
)

SQRT_PI = math.sqrt(math.pi)
# |I_k/assintótico − 1| <= ASYMPTOTIC_WINDOW·δ^(−1/2); o caso mais justo é k = 4, δ = 30
ASYMPTOTIC_WINDOW = 4.0
LEADING_WINDOW = 0.1
ASYMPTOTIC_DELTAS = (30.0, 100.0, 300.0)
MONOTONE_DELTAS = (50.0, 100.0, 200.0, 400.0)


def setUp_configurations(self):
    self.rp3bp = builders.build_rp3bp(0.3)
    self.rp3bp_half = builders.build_rp3bp(0.5)
    self.equilateral = builders.build_equilateral(0.2, 0.3)


class IkAsymptoticTestCase(SimpleTestCase):
    """
    Termo dominante de I_k e sua comparação com a quadratura.
    """

    def test_closed_forms(self):
        """π/4, √π δ^(1/2)/4, πδ/16 and √π δ^(3/2)/24 times e^{−2δ/3}."""
        delta = 7.0
        decay = math.exp(-2.0 * delta / 3.0)
        expected = {
            1: math.pi / 4.0,
            2: SQRT_PI * delta**0.5 / 4.0,
            3: math.pi * delta / 16.0,
            4: SQRT_PI * delta**1.5 / 24.0,
        }
        for k, prefactor in expected.items():
            self.assertAlmostEqual(ik_asymptotic(k, delta) / (prefactor * decay), 1.0, delta=1e-14)

    def test_against_quadrature(self):
        """The relative gap stays under ASYMPTOTIC_WINDOW·δ^(−1/2)."""
        for k in (2, 3, 4):
            for delta in ASYMPTOTIC_DELTAS:
                ratio = eval_Ik(k, delta) / ik_asymptotic(k, delta)
                self.assertLessEqual(abs(ratio - 1.0), ASYMPTOTIC_WINDOW / math.sqrt(delta), msg=f'k={k} delta={delta}')

    def test_monotone_convergence(self):
        """|I_k/assintótico − 1| decresce ao longo da grade."""
        for k in (2, 3, 4):
            gaps = [abs(eval_Ik(k, delta) / ik_asymptotic(k, delta) - 1.0) for delta in MONOTONE_DELTAS]
            self.assertTrue(all(b < a for a, b in zip(gaps, gaps[1:])), msg=f'k={k}: {gaps}')

    def test_exponential_decay(self):
        """Doubling δ costs more than e^{−δ/2}."""
        for k in range(1, 5):
            for delta in (50.0, 100.0):
                self.assertLess(ik_asymptotic(k, 2.0 * delta) / ik_asymptotic(k, delta), math.exp(-delta / 2.0))

    def test_even_in_delta(self):
        """I_k(−δ) = I_k(δ)."""
        for delta in (0.5, 3.0, 10.0):
            self.assertAlmostEqual(eval_Ik(2, -delta), eval_Ik(2, delta), delta=1e-10)

    def test_invalid(self):
        for k, delta in ((0, 1.0), (2, 0.0), (2, -1.0), (1.5, 1.0)):
            with self.assertRaises(InvalidInputError):
                ik_asymptotic(k, delta)

    def test_table(self):
        """Rows (δ, I_k, estimate, ratio)."""
        rows = ik_table(3, (30.0, 100.0))
        self.assertEqual(len(rows), 2)
        for delta, exact, estimate, ratio in rows:
            self.assertEqual(estimate, ik_asymptotic(3, delta))
            self.assertAlmostEqual(ratio, exact / estimate, delta=1e-14)
        with self.assertRaises(InvalidInputError):
            ik_table(3, (1.0, 0.0))


class RecurrenceTestCase(SimpleTestCase):
    """
    J_{k+2} a partir de I_k.
    """

    def test_matches_direct(self):
        """(k, δ) = (2, 5) against the contour value of J_4."""
        self.assertAlmostEqual(jk_from_ik(2, 5.0) / eval_Jk(4, 5.0), 1.0, delta=1e-8)

    def test_zero_and_sign(self):
        """J vale zero em δ = 0 e é ímpar em δ."""
        self.assertEqual(jk_from_ik(3, 0.0), 0.0)
        for k in (1, 3):
            self.assertAlmostEqual(jk_from_ik(k, -4.0) / jk_from_ik(k, 4.0), -1.0, delta=1e-10)

    def test_table(self):
        """k ≤ 4 on δ up to 50, relative 1e−8."""
        rows = recurrence_table((1, 2, 4), (0.5, 5.0, 50.0), tol=1e-12)
        self.assertEqual(len(rows), 9)
        for k, delta, direct, identity, difference in rows:
            self.assertLessEqual(difference, 1e-8, msg=f'k={k} delta={delta}')

    def test_remaining_orders_at_largest_delta(self):
        """k = 3, 5 and 6 at δ = 50 complete the k ≤ 6 range, relative 1e−8."""
        rows = recurrence_table((3, 5, 6), (50.0,), tol=1e-12)
        self.assertEqual([row[0] for row in rows], [3, 5, 6])
        for k, delta, direct, identity, difference in rows:
            self.assertLessEqual(difference, 1e-8, msg=f'k={k} delta={delta}')


class SaddleTestCase(SimpleTestCase):
    """
    Expansão na sela z = ±i.
    """

    def test_moments(self):
        """Gaussian moments and the pole integrals on each side."""
        self.assertAlmostEqual(saddle_moment(0, 1), SQRT_PI, delta=1e-15)
        self.assertAlmostEqual(saddle_moment(-2, 1), SQRT_PI / 2.0, delta=1e-15)
        self.assertEqual(saddle_moment(-3, 1), 0j)
        self.assertAlmostEqual(saddle_moment(1, 1), 1j * math.pi, delta=1e-15)
        self.assertAlmostEqual(saddle_moment(1, -1), -1j * math.pi, delta=1e-15)
        self.assertAlmostEqual(saddle_moment(2, 1), -2.0 * SQRT_PI, delta=1e-14)
        self.assertAlmostEqual(saddle_moment(3, 1), -1j * math.pi, delta=1e-14)
        self.assertAlmostEqual(saddle_moment(4, 1), 4.0 * SQRT_PI / 3.0, delta=1e-14)

    def test_first_term_is_ik_estimate(self):
        """Half the first term of cos(δp)/(1 + z²)^k is ik_asymptotic."""
        for k in range(1, 7):
            for delta in (40.0, -40.0):
                value = saddle_series(ik_integrand(k, delta), 1) / 2.0
                self.assertAlmostEqual(value / ik_asymptotic(k, abs(delta)), 1.0, delta=1e-12, msg=f'k={k}')

    def test_more_terms_help(self):
        """Three orders track the quadrature better than one."""
        exact = 2.0 * eval_Ik(4, 100.0)
        integrand = ik_integrand(4, 100.0)
        one = abs(saddle_series(integrand, 1) - exact)
        three = abs(saddle_series(integrand, 3) - exact)
        self.assertLess(three, one / 5.0)

        theta = 100.0 ** (1.0 / 3.0)
        exact = evaluate_f('F4', theta, backend=QuadratureBackend.PARTIAL_FRACTIONS).value
        one = abs(saddle_series(f_integrand('F4', theta), 1) - exact)
        three = abs(saddle_series(f_integrand('F4', theta), 3) - exact)
        self.assertLess(three, one / 5.0)

    def test_lower_branch_cancellation(self):
        """
        C − iS de F4 tem zero de ordem 4 em z = −i: para δ < 0 as quatro
        primeiras ordens se cancelam e sobra −(√π/32)|δ|^(1/2) e^{−2|δ|/3}.
        """
        order, value = saddle_leading(f_integrand('F4', -4.0))
        self.assertEqual(order, 4)
        expected = -SQRT_PI / 32.0 * 8.0 * math.exp(-128.0 / 3.0)
        self.assertAlmostEqual(value / expected, 1.0, delta=1e-10)

    def test_upper_branch_leading(self):
        order, value = saddle_leading(f_integrand('F4', 2.0))
        self.assertEqual(order, 0)
        self.assertAlmostEqual(value / (2.0 * SQRT_PI / 3.0 * 8.0**2.5 * math.exp(-16.0 / 3.0)), 1.0, delta=1e-12)

    def test_invalid(self):
        with self.assertRaises(InvalidInputError):
            saddle_series(ik_integrand(2, 0.0))
        with self.assertRaises(InvalidInputError):
            saddle_series(ik_integrand(2, 10.0), 0)


class LeadingTestCase(SimpleTestCase):
    """
    Formas dominantes de ε⁴M4 e ε⁶M6.
    """

    def setUp(self):
        setUp_configurations(self)

    def test_m4_against_quadrature(self):
        """Ratio within 0.1 at Θ0³/ε³ = 60 (μ = 1/2)."""
        epsilon = 60.0 ** (-1.0 / 3.0)
        s0 = math.pi / 4.0
        quadrature = epsilon**4 * M4(s0, 1.0, epsilon, self.rp3bp_half, backend=QuadratureBackend.PARTIAL_FRACTIONS)
        self.assertAlmostEqual(quadrature / m4_leading(s0, 1.0, epsilon, self.rp3bp_half), 1.0, delta=LEADING_WINDOW)

    def test_m4_closed_form(self):
        """(4√π/3) ε^(−7/2) Θ0^(3/2) e^{−2Θ0³/3ε³} (c2 sin 2s0 − c3 cos 2s0)."""
        theta0, epsilon, s0 = 1.2, 0.4, 0.7
        _, c2, c3 = c_coeffs(self.equilateral)
        expected = (
            4.0 * SQRT_PI / 3.0 * epsilon**-3.5 * theta0**1.5 * math.exp(-2.0 * theta0**3 / (3.0 * epsilon**3))
        ) * (c2 * math.sin(2 * s0) - c3 * math.cos(2 * s0))
        self.assertAlmostEqual(m4_leading(s0, theta0, epsilon, self.equilateral) / expected, 1.0, delta=1e-12)

    def test_m6_closed_form(self):
        """Both channels, rates Θ0³/3ε³ and Θ0³/ε³."""
        theta0, epsilon, s0 = 1.1, 0.5, 2.3
        d1, d2, d3, d4 = d_coeffs(self.equilateral)
        slow = -SQRT_PI / (12.0 * math.sqrt(2.0)) * epsilon**-1.5 * theta0**-0.5
        slow *= math.exp(-(theta0**3) / (3.0 * epsilon**3)) * (d2 * math.cos(s0) - d1 * math.sin(s0))
        fast = -9.0 * math.sqrt(3.0 * math.pi) / (5.0 * math.sqrt(2.0)) * epsilon**-4.5 * theta0**2.5
        fast *= math.exp(-(theta0**3) / epsilon**3) * (d4 * math.cos(3 * s0) - d3 * math.sin(3 * s0))
        self.assertAlmostEqual(m6_leading(s0, theta0, epsilon, self.equilateral) / (slow + fast), 1.0, delta=1e-12)

    def test_a1_coefficient(self):
        """Amplitude de cos s0 em ε⁶M6."""
        theta0, epsilon = 1.0, 0.45
        _, d2, _, _ = d_coeffs(self.equilateral)
        k, a_cos, _ = m6_leading_evaluation(theta0, epsilon, self.equilateral).harmonic_terms[0]
        expected = -SQRT_PI / (12.0 * math.sqrt(2.0)) * epsilon**-1.5 * math.exp(-1.0 / (3.0 * epsilon**3)) * d2
        self.assertEqual(k, 1)
        self.assertAlmostEqual(epsilon**6 * a_cos / expected, 1.0, delta=1e-12)

    def test_zero_on_the_line(self):
        """c3 = 0 for the RP3BP, so s0 = 0 gives zero."""
        self.assertEqual(c_coeffs(self.rp3bp)[2], 0.0)
        self.assertEqual(m4_leading(0.0, 1.0, 0.4, self.rp3bp), 0.0)

    def test_lower_branch(self):
        """Θ0 < 0 uses the first surviving order, far below the upper-branch size."""
        epsilon = 0.4
        lower = abs(m4_leading(math.pi / 4.0, -1.0, epsilon, self.rp3bp))
        upper = abs(m4_leading(math.pi / 4.0, 1.0, epsilon, self.rp3bp))
        self.assertGreater(lower, 0.0)
        self.assertLess(lower, upper)

    def test_theta0_zero(self):
        with self.assertRaises(InvalidInputError):
            m4_leading(0.0, 0.0, 0.4, self.rp3bp)
        with self.assertRaises(InvalidInputError):
            m6_leading(0.0, 0.0, 0.4, self.rp3bp)

    def test_polygon_order(self):
        """ε^(2N−2)M_{2N−2} / (ε^(−N−1/2) e^{−(N−1)Θ0³/3ε³}) does not depend on ε."""
        N, s0 = 5, math.pi / 8.0

        def normalized(epsilon):
            scale = epsilon ** (-N - 0.5) * math.exp(-(N - 1) / (3.0 * epsilon**3))
            return poly_leading(N, s0, 1.0, epsilon) / scale

        self.assertNotEqual(normalized(0.3), 0.0)
        self.assertAlmostEqual(normalized(0.25) / normalized(0.3), 1.0, delta=1e-10)

    def test_leading_table(self):
        rows = leading_table(1.0, 0.5, self.rp3bp, points=4)
        self.assertEqual(len(rows), 4)
        for s0, _, m4, _, m6 in rows:
            self.assertEqual(m4, m4_leading(s0, 1.0, 0.5, self.rp3bp))
            self.assertEqual(m6, m6_leading(s0, 1.0, 0.5, self.rp3bp))


class FourierEstimateTestCase(SimpleTestCase):
    """
    Coeficientes de Fourier da função de Melnikov para Θ0 > 0.
    """

    def setUp(self):
        setUp_configurations(self)

    def test_exponents(self):
        """ε^(−3/2) for k = 1, ε^(−k−3/2) after; rate k/3."""
        self.assertEqual(fourier_estimate(1, 1.0, 0.3, self.rp3bp).epsilon_power, -1.5)
        self.assertEqual(fourier_estimate(2, 1.0, 0.3, self.rp3bp).epsilon_power, -3.5)
        estimate = fourier_estimate(5, 1.0, 0.3, self.rp3bp)
        self.assertEqual(estimate.epsilon_power, -6.5)
        self.assertAlmostEqual(estimate.exponential_rate, 5.0 / 3.0, delta=1e-15)
        self.assertFalse(estimate.constants_available)
        self.assertIsNone(estimate.alpha)

    def test_dominance(self):
        """|α_2/α_1| < 1 at ε = 0.3, Θ0 = 1."""
        first = fourier_estimate(1, 1.0, 0.3, self.equilateral)
        second = fourier_estimate(2, 1.0, 0.3, self.equilateral)
        self.assertLess(abs(second.alpha / first.alpha), 1.0)

    def test_ordering(self):
        """k = 1 > k = 2 > k = 3 em escala para ε <= 0.4."""
        for epsilon in (0.2, 0.3, 0.4):
            scales = [fourier_estimate(k, 1.0, epsilon, self.rp3bp).scale for k in (1, 2, 3)]
            self.assertGreater(scales[0], scales[1])
            self.assertGreater(scales[1], scales[2])

    def test_b1_sign(self):
        """B_1 has the sign of d1."""
        for config in (self.rp3bp, rotate_configuration(self.rp3bp, math.pi), self.equilateral):
            d1 = d_coeffs(config)[0]
            self.assertEqual(np.sign(fourier_estimate(1, 1.0, 0.3, config).beta_leading), np.sign(d1))

    def test_matches_leading_forms(self):
        """α_1, β_1 from ε⁶M6 and α_2, β_2 from ε⁴M4."""
        theta0, epsilon = 1.3, 0.5
        m4 = m4_leading_evaluation(theta0, epsilon, self.equilateral).harmonic_terms[0]
        m6 = m6_leading_evaluation(theta0, epsilon, self.equilateral).harmonic_terms[0]
        first = fourier_estimate(1, theta0, epsilon, self.equilateral)
        second = fourier_estimate(2, theta0, epsilon, self.equilateral)
        self.assertAlmostEqual(first.alpha / (epsilon**6 * m6[1]), 1.0, delta=1e-12)
        self.assertAlmostEqual(first.beta / (epsilon**6 * m6[2]), 1.0, delta=1e-12)
        self.assertAlmostEqual(second.alpha / (epsilon**4 * m4[1]), 1.0, delta=1e-12)
        self.assertAlmostEqual(second.beta / (epsilon**4 * m4[2]), 1.0, delta=1e-12)

    def test_invalid(self):
        with self.assertRaises(InvalidInputError):
            fourier_estimate(0, 1.0, 0.3, self.rp3bp)
        with self.assertRaises(InvalidInputError):
            fourier_estimate(1, -1.0, 0.3, self.rp3bp)
        with self.assertRaises(InvalidInputError):
            FourierEstimate(2, None, None, -3.5, 1.0, 1.0, 0.3)


class SandersTestCase(SimpleTestCase):
    """
    Limiar e constante de Lipschitz do resto.
    """

    def test_threshold(self):
        self.assertAlmostEqual(sanders_threshold(1, 1.0), 0.47140452, delta=1e-8)
        self.assertAlmostEqual(sanders_threshold(2, 1.0), 2.0 * sanders_threshold(1, 1.0), delta=1e-15)
        with self.assertRaises(InvalidInputError):
            sanders_threshold(1, -1.0)

    def test_defining_inequality(self):
        """The remainder drops under e^{−kΘ0³/3ε³} just past the threshold."""
        epsilon = 0.5
        for k in (1, 2):
            threshold = sanders_threshold(k, 1.0)
            self.assertGreater(harmonic_decay(k, 1.0, epsilon), sanders_bound(1.01 * threshold, 1.0, epsilon))
            self.assertLess(harmonic_decay(k, 1.0, epsilon), sanders_bound(0.99 * threshold, 1.0, epsilon))

    def test_lipschitz(self):
        """√2/Θ0."""
        self.assertAlmostEqual(sanders_lipschitz(1.0), math.sqrt(2.0), delta=1e-15)
        self.assertAlmostEqual(sanders_lipschitz(2.0), math.sqrt(2.0) / 2.0, delta=1e-15)
        self.assertEqual(sanders_lipschitz(-1.5), -sanders_lipschitz(1.5))
        with self.assertRaises(InvalidInputError):
            sanders_lipschitz(0.0)
