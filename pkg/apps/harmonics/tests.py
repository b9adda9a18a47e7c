import math

import numpy as np
from django.test import SimpleTestCase
from numpy.polynomial import legendre

from apps.configurations import builders
from apps.configurations.tests import setUp_configurations
from apps.configurations.utils import rotate_configuration
from apps.utils.exceptions import InvalidInputError
from .services import coefficient_report
from .utils import (
    c_coeffs,
    coefficient_set,
    d_coeffs,
    d_l,
    harmonic_derivative,
    harmonic_table,
    harmonic_value,
    legendre_cos_coeffs,
    legendre_derivative_cos_coeffs,
    perturbation_tables,
)

SAMPLE_ANGLES = np.linspace(0.0, 2.0 * np.pi, 32, endpoint=False) + 0.1


class LegendreTestCase(SimpleTestCase):
    """
    Cosine-basis expansion of P_j and of its derivative.
    """

    def test_low_orders(self):
        """P_0, P_2 and P_3 in the cosine basis."""
        self.assertEqual(legendre_cos_coeffs(0).as_dict(), {0: 1.0})
        self.assertEqual(legendre_cos_coeffs(2).as_dict(), {0: 0.25, 2: 0.75})
        self.assertEqual(legendre_cos_coeffs(3).as_dict(), {1: 0.375, 3: 0.625})

    def test_pointwise(self):
        """Σ p_{j,m} cos(mγ) reproduces P_j(cos γ) at 32 angles."""
        for j in (1, 2, 5, 8, 12, 20, 40, 64):
            expansion = legendre_cos_coeffs(j)
            reference = legendre.legval(np.cos(SAMPLE_ANGLES), [0] * j + [1])
            np.testing.assert_allclose(expansion(SAMPLE_ANGLES), reference, atol=1e-12)

    def test_parity_and_sign(self):
        """Only m ≡ j (mod 2) appear and every coefficient is non-negative up to j = 12."""
        for j in range(13):
            for m, p in legendre_cos_coeffs(j).coefficients:
                self.assertEqual((m - j) % 2, 0)
                self.assertGreaterEqual(p, 0.0)

    def test_derivative(self):
        """Q_j = dP_j/dw in the cosine basis."""
        for j in (1, 2, 3, 6, 9):
            expansion = legendre_derivative_cos_coeffs(j)
            reference = legendre.legval(np.cos(SAMPLE_ANGLES), legendre.legder([0] * j + [1]))
            np.testing.assert_allclose(expansion(SAMPLE_ANGLES), reference, atol=1e-12)
            self.assertTrue(all((m - j + 1) % 2 == 0 for m, _ in expansion.coefficients))

    def test_order_range(self):
        """Orders outside [0, 64] are rejected."""
        for j in (-1, 65):
            with self.assertRaises(InvalidInputError):
                legendre_cos_coeffs(j)


class HarmonicTableTestCase(SimpleTestCase):
    """
    Tabelas harmônicas e coeficientes c, d, d^(l).
    """

    def setUp(self):
        setUp_configurations(self)

    def test_two_body_quadrupole(self):
        """RP3BP with μ = 1/2: A_2 = c2/4 = 3/16."""
        table = harmonic_table(self.rp3bp_half, 2)
        self.assertAlmostEqual(table.pair(2)[0], 3.0 / 16.0, delta=1e-15)
        self.assertEqual(table.harmonics, (0, 2))

    def test_hexagon_octupole_vanishes(self):
        """The hexagon has no harmonics at order 3."""
        for m, a, b in harmonic_table(self.hexagon, 3).entries:
            self.assertLess(max(abs(a), abs(b)), 1e-12)

    def test_collinear_sine_terms(self):
        """Collinear configurations have B_m = 0 at every order."""
        for config in (self.collinear8, self.collinear11, self.rp3bp):
            for j in range(2, 10):
                for _, _, b in harmonic_table(config, j).entries:
                    self.assertAlmostEqual(b, 0.0, delta=1e-14)

    def test_normalization_ladder(self):
        """Order-2 table times 4 gives c; order-3 table times 8 gives d."""
        for config in (self.rp3bp, self.lagrange, self.rhomboid, self.collinear8):
            quadrupole = harmonic_table(config, 2)
            octupole = harmonic_table(config, 3)
            c1, c2, c3 = c_coeffs(config)
            d1, d2, d3, d4 = d_coeffs(config)
            np.testing.assert_allclose(
                [4 * quadrupole.pair(0)[0], 4 * quadrupole.pair(2)[0], 4 * quadrupole.pair(2)[1]],
                [c1, c2, c3],
                atol=1e-12,
            )
            np.testing.assert_allclose(
                [8 * x for x in (*octupole.pair(1), *octupole.pair(3))], [d1, d2, d3, d4], atol=1e-12
            )

    def test_rotational_covariance(self):
        """Rotating by φ rotates (A_m, B_m) by mφ."""
        phi = 0.37
        rotated = rotate_configuration(self.lagrange, phi)
        for j in (2, 3, 4, 5):
            original = harmonic_table(self.lagrange, j)
            turned = harmonic_table(rotated, j)
            for m, a, b in original.entries:
                if m > 4:
                    continue
                a_rot, b_rot = turned.pair(m)
                self.assertAlmostEqual(a_rot, a * math.cos(m * phi) + b * math.sin(m * phi), delta=1e-10)
                self.assertAlmostEqual(b_rot, b * math.cos(m * phi) - a * math.sin(m * phi), delta=1e-10)

    def test_polygon_selection_rule(self):
        """The (N − 1)-gon has no harmonics 1 <= m < N − 1 up to order 2N − 3."""
        for N in (4, 5, 6, 7, 8):
            polygon = builders.build_polygon(N)
            for j in range(2, 2 * N - 2):
                for m, a, b in harmonic_table(polygon, j).entries:
                    if 1 <= m < N - 1:
                        self.assertLess(max(abs(a), abs(b)), 1e-12)

    def test_c_coeffs_collinear(self):
        """c2 of the collinear eight- and eleven-body configurations."""
        self.assertAlmostEqual(c_coeffs(self.collinear8)[1], 1.76876487, delta=1e-6)
        self.assertAlmostEqual(c_coeffs(self.collinear11)[1], 1.95579995, delta=1e-6)
        self.assertEqual(c_coeffs(self.collinear8)[2], 0.0)

    def test_c_coeffs_rhomboid(self):
        """c2 = −3y² + 6μ(x² + y²) and c3 = 0 for the rhombus."""
        for a in (0.8, 1.0, 1.5):
            x, y, mu = builders.rhomboid_parameters(a, 1.0)
            _, c2, c3 = c_coeffs(builders.build_rhomboid(a, 1.0))
            self.assertAlmostEqual(c2, -3 * y**2 + 6 * mu * (x**2 + y**2), delta=1e-12)
            self.assertAlmostEqual(c3, 0.0, delta=1e-15)

    def test_d_coeffs_two_body(self):
        """d1 = 3μ(1 − μ)(1 − 2μ), d2 = 0."""
        for mu in (0.1, 0.3, 0.5):
            d1, d2, _, _ = d_coeffs(builders.build_rp3bp(mu))
            self.assertAlmostEqual(d1, 3 * mu * (1 - mu) * (1 - 2 * mu), delta=1e-14)
            self.assertEqual(d2, 0.0)

    def test_d_coeffs_equilateral(self):
        """Equal masses keep only d4 = 5/(3√3)."""
        d1, d2, d3, d4 = d_coeffs(self.equilateral)
        np.testing.assert_allclose([d1, d2, d3], 0.0, atol=1e-14)
        self.assertAlmostEqual(d4, 5.0 / (3.0 * math.sqrt(3.0)), delta=1e-14)

    def test_d_coeffs_equilateral_closed_form(self):
        """d1, d2 of the Lagrange triangle against their polynomial forms."""
        for m1, m2 in ((0.2, 0.3), (0.5, 0.25), (0.1, 0.6)):
            d1, d2, _, _ = d_coeffs(builders.build_equilateral(m1, m2))
            q = 2 * m1**2 + 2 * m2**2 + 2 * m1 * m2
            self.assertAlmostEqual(d1, 1.5 * (m1 + 2 * m2 - 1) * (q - m1 - 2 * m2), delta=1e-13)
            self.assertAlmostEqual(d2, -1.5 * math.sqrt(3.0) * m1 * (q - 3 * m1 - 2 * m2 + 1), delta=1e-13)
        self.assertAlmostEqual(d_coeffs(self.lagrange)[0], 0.126, delta=1e-13)

    def test_d_coeffs_rhomboid(self):
        """All d vanish for the rhombus."""
        np.testing.assert_allclose(d_coeffs(self.rhomboid), 0.0, atol=1e-14)

    def test_d_l(self):
        """d^(l) pairs: vanishing by symmetry and d^(1) = (d1, d2)/3."""
        for l in range(1, 6):
            np.testing.assert_allclose(d_l(self.rp3bp_half, l), 0.0, atol=1e-15)
        np.testing.assert_allclose(d_l(self.equilateral, 2), 0.0, atol=1e-14)
        self.assertAlmostEqual(d_l(self.rp3bp, 1)[0], 0.084, delta=1e-14)
        d1, d2, _, _ = d_coeffs(self.lagrange)
        np.testing.assert_allclose(d_l(self.lagrange, 1), [d1 / 3, d2 / 3], atol=1e-14)
        with self.assertRaises(InvalidInputError):
            d_l(self.rp3bp, 0)

    def test_rhomboid_order_four(self):
        """At a = 1.32018439 b the j = 4, m = 2 harmonic is nonzero: 16·A_2 ≈ 0.20447308."""
        a, b = harmonic_table(self.rhomboid, 4).pair(2)
        self.assertAlmostEqual(16 * a, 0.20447308, delta=1e-5)
        self.assertAlmostEqual(b, 0.0, delta=1e-14)
        mirror, _ = harmonic_table(builders.build_rhomboid(0.75746994, 1.0), 4).pair(2)
        self.assertLess(mirror, 0.0)

    def test_harmonic_value_and_derivative(self):
        """h_j and h_j' agree with finite differences."""
        table = harmonic_table(self.lagrange, 5)
        s = np.linspace(0.0, 2 * np.pi, 17)
        step = 1e-6
        numeric = (harmonic_value(table, s + step) - harmonic_value(table, s - step)) / (2 * step)
        np.testing.assert_allclose(harmonic_derivative(table, s), numeric, atol=1e-8)
        self.assertIsInstance(harmonic_value(table, 0.3), float)

    def test_perturbation_tables(self):
        """Truncation 3 keeps no Legendre term, 7 keeps j = 2, 9 keeps j = 2, 3."""
        self.assertEqual(perturbation_tables(self.rp3bp, 3), ())
        self.assertEqual([t.j for t in perturbation_tables(self.rp3bp, 7)], [2])
        self.assertEqual([t.j for t in perturbation_tables(self.rp3bp, 9)], [2, 3])
        with self.assertRaises(InvalidInputError):
            perturbation_tables(self.rp3bp, 5)

    def test_coefficient_report(self):
        """The coeffs report carries c, d, d^(l) and the tables."""
        report = coefficient_report(self.rp3bp, l_max=3, j_max=5)
        self.assertEqual(report['coefficients']['d1'], coefficient_set(self.rp3bp).d1)
        self.assertEqual([row['l'] for row in report['d_l']], [1, 2, 3])
        self.assertEqual([table['j'] for table in report['harmonic_tables']], [2, 3, 4, 5])
        self.assertEqual(report['harmonic_tables'][0]['entries'][1]['m'], 2)
        self.assertEqual(report['legendre'][0]['coefficients'][0], {'m': 0, 'p': 0.25})
