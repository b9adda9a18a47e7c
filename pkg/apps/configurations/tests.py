import math

import numpy as np
from django.test import SimpleTestCase

from apps.utils.exceptions import DegenerateConfigurationError, InvalidInputError, NotCentralError
from . import builders
from .services import (
    build_named,
    configuration_from_payload,
    configuration_to_payload,
    rhomboid_c2_roots,
)
from .utils import cc_residual, lambda_of, normalize_omega, rotate_configuration, scale_configuration

COLLINEAR7_POSITIONS = (-1.17858061, -0.73861375, -0.35910513, 0.0, 0.35910513, 0.73861375, 1.17858061)
EQUIDISTANT10_MASSES = (0.05585772, 0.08684056, 0.10794726, 0.12139042, 0.12796403)
EQUIDISTANT10_FIRST = -1.44194062
RHOMBOID_C2_ROOTS = (0.75746994, 1.0, 1.32018439)
PUBLISHED_DIGITS = 1e-7


def setUp_configurations(self):
    self.rp3bp = builders.build_rp3bp(0.3)
    self.rp3bp_half = builders.build_rp3bp(0.5)
    self.equilateral = builders.build_equilateral(1.0 / 3.0, 1.0 / 3.0)
    self.lagrange = builders.build_equilateral(0.2, 0.3)
    self.square = builders.build_rhomboid(1.0, 1.0)
    self.rhomboid = builders.build_rhomboid(1.32018439, 1.0)
    self.collinear8 = builders.solve_collinear_equal(7)
    self.collinear11 = builders.solve_collinear_equidistant(10)
    self.hexagon = builders.build_polygon(7)


class CentralityTestCase(SimpleTestCase):
    """
    Residuals, multiplier λ and normalization of central configurations.
    """

    def setUp(self):
        setUp_configurations(self)

    def test_two_body_is_central(self):
        """Two primaries at unit separation satisfy the equations exactly."""
        report = cc_residual(self.rp3bp)
        self.assertLess(report.max_norm, 1e-14)
        self.assertAlmostEqual(report.lambda_value, 1.0, delta=1e-12)
        self.assertAlmostEqual(lambda_of(self.rp3bp), 1.0, delta=1e-12)

    def test_lagrange_triangle_is_central(self):
        """Unit-side triangles are central for any admissible masses."""
        for m1, m2 in ((1 / 3, 1 / 3), (0.2, 0.3), (0.05, 0.9)):
            self.assertLess(cc_residual(builders.build_equilateral(m1, m2)).max_norm, 1e-13)

    def test_unit_square_lambda(self):
        """λ of the unit-circle square equals the direct sum 1/16 + 1/(4√2)."""
        square = builders.build_polygon(5)
        self.assertAlmostEqual(lambda_of(square), 1.0 / 16.0 + 1.0 / (4.0 * math.sqrt(2.0)), delta=1e-12)

    def test_lambda_homogeneity(self):
        """Scaling positions by c multiplies λ by c^(-3)."""
        for config in (self.lagrange, self.collinear8, self.square):
            lam = lambda_of(config)
            for c in (0.5, 2.0):
                scaled = lambda_of(scale_configuration(config, c))
                self.assertAlmostEqual(scaled / (lam * c**-3), 1.0, delta=1e-9)

    def test_not_central(self):
        """A non-central shape has no common multiplier."""
        config = builders.CentralConfiguration.from_arrays(
            [0.25, 0.25, 0.25, 0.25], [[1.0, 0.0], [0.0, 2.0], [-1.0, 0.0], [0.0, -2.0]]
        )
        with self.assertRaises(NotCentralError):
            lambda_of(config)

    def test_normalize_fixed_point(self):
        """A configuration with λ = 1 comes back unchanged."""
        self.assertIs(normalize_omega(self.rp3bp), self.rp3bp)

    def test_normalize_undoes_scaling(self):
        """Normalizing a doubled configuration recovers the original."""
        doubled = scale_configuration(self.collinear8, 2.0)
        normalized = normalize_omega(doubled)
        self.assertAlmostEqual(lambda_of(normalized), 1.0, delta=1e-10)
        np.testing.assert_allclose(normalized.positions, self.collinear8.positions, atol=1e-10)
        np.testing.assert_allclose(normalized.masses, self.collinear8.masses)

    def test_normalized_hexagon_radius(self):
        """Normalization rescales the unit hexagon by λ^(1/3)."""
        lam = lambda_of(self.hexagon)
        normalized = builders.build_polygon(7, normalize=True)
        np.testing.assert_allclose(normalized.radii, lam ** (1.0 / 3.0), rtol=1e-12)
        self.assertLess(cc_residual(normalized).max_norm, 1e-9)

    def test_normalized_triangle_has_unit_sides(self):
        """The N = 4 polygon normalizes to the unit-side Lagrange triangle."""
        normalized = builders.build_polygon(4, normalize=True)
        np.testing.assert_allclose(normalized.radii, 1.0 / math.sqrt(3.0), rtol=1e-10)

    def test_degenerate_positions(self):
        """Coincident primaries are rejected."""
        with self.assertRaises(DegenerateConfigurationError):
            builders.CentralConfiguration.from_arrays([0.5, 0.5], [[0.0, 0.0], [0.0, 0.0]])

    def test_reflection_symmetry(self):
        """Configurations symmetric about the horizontal axis kill every sine moment."""
        for config in (self.rp3bp, self.square, self.rhomboid, self.collinear8, self.hexagon):
            a1, a2 = config.positions.T
            for j in range(9):
                moment = np.sum(config.masses * a2 * np.hypot(a1, a2) ** j)
                self.assertLess(abs(moment), 1e-12)


class BuildersTestCase(SimpleTestCase):
    """
    Closed-form and solved configurations.
    """

    def setUp(self):
        setUp_configurations(self)

    def test_rp3bp(self):
        """Masses (μ, 1 − μ) at (1 − μ, 0) and (−μ, 0)."""
        np.testing.assert_allclose(self.rp3bp_half.positions, [[0.5, 0.0], [-0.5, 0.0]])
        np.testing.assert_allclose(self.rp3bp.masses, [0.3, 0.7])
        for mu in (0.0, -0.1, 0.6):
            with self.assertRaises(InvalidInputError):
                builders.build_rp3bp(mu)

    def test_equilateral(self):
        """Equal masses give a triangle inscribed in the circle of radius 1/√3."""
        np.testing.assert_allclose(self.equilateral.radii, 1.0 / math.sqrt(3.0), atol=1e-14)
        positions = self.lagrange.positions
        for i in range(3):
            for j in range(i + 1, 3):
                self.assertAlmostEqual(np.linalg.norm(positions[i] - positions[j]), 1.0, delta=1e-14)
        self.assertLess(np.abs(self.lagrange.masses @ positions).max(), 1e-14)
        with self.assertRaises(InvalidInputError):
            builders.build_equilateral(0.5, 0.5)

    def test_square_rhomboid(self):
        """a = b gives the square with μ = 1/4."""
        x, y, mu = builders.rhomboid_parameters(1.0, 1.0)
        self.assertAlmostEqual(mu, 0.25, delta=1e-14)
        self.assertAlmostEqual(x, y, delta=1e-14)
        self.assertLess(cc_residual(self.square).max_norm, 1e-9)

    def test_rhomboid_is_central(self):
        """Every admissible (a, b) yields a central rhombus."""
        for a in (0.7, 0.9, 1.1, 1.32018439, 1.6):
            self.assertLess(cc_residual(builders.build_rhomboid(a, 1.0)).max_norm, 1e-9)

    def test_rhomboid_boundary(self):
        """Both edges a = √3·b and b = √3·a are rejected, also when rounding lands just inside."""
        with self.assertRaises(InvalidInputError):
            builders.build_rhomboid(math.sqrt(3.0), 1.0)
        with self.assertRaises(InvalidInputError):
            builders.rhomboid_parameters(math.sqrt(3.0), 1.0)
        with self.assertRaises(InvalidInputError):
            builders.rhomboid_parameters(1.0 / math.sqrt(3.0), 1.0)
        with self.assertRaises(InvalidInputError):
            builders.rhomboid_parameters(3.0, 3.0 * math.sqrt(3.0))
        with self.assertRaises(InvalidInputError):
            builders.build_rhomboid(1.0, 0.0)

    def test_collinear_seven(self):
        """Seven equal masses reproduce the tabulated positions."""
        np.testing.assert_allclose(self.collinear8.positions[:, 0], COLLINEAR7_POSITIONS, atol=PUBLISHED_DIGITS)
        self.assertLess(cc_residual(self.collinear8).max_norm, 1e-10)

    def test_collinear_ordering(self):
        """Positions are strictly increasing and antisymmetric."""
        for n in (2, 3, 4, 5, 8, 11):
            x = builders.solve_collinear_equal(n).positions[:, 0]
            self.assertTrue(np.all(np.diff(x) > 0))
            np.testing.assert_allclose(x, -x[::-1], atol=1e-12)

    def test_collinear_small(self):
        """n = 2 sits at ±1/2 and n = 3 at ±x with x³ = 5/12."""
        np.testing.assert_allclose(builders.solve_collinear_equal(2).positions[:, 0], [-0.5, 0.5], atol=1e-12)
        x = builders.solve_collinear_equal(3).positions[2, 0]
        self.assertAlmostEqual(x**3, 5.0 / 12.0, delta=1e-12)

    def test_equidistant_ten(self):
        """Ten equidistant primaries reproduce the tabulated masses."""
        masses = self.collinear11.masses
        np.testing.assert_allclose(masses[:5], EQUIDISTANT10_MASSES, atol=PUBLISHED_DIGITS)
        np.testing.assert_allclose(masses[5:], EQUIDISTANT10_MASSES[::-1], atol=PUBLISHED_DIGITS)
        self.assertAlmostEqual(self.collinear11.positions[0, 0], EQUIDISTANT10_FIRST, delta=PUBLISHED_DIGITS)
        self.assertLess(cc_residual(self.collinear11).max_norm, 1e-9)

    def test_equidistant_small(self):
        """n = 3 is symmetric; n = 4 matches the hand-solved 2×2 system."""
        three = builders.solve_collinear_equidistant(3)
        self.assertAlmostEqual(three.masses[0], three.masses[2], delta=1e-12)
        self.assertLess(cc_residual(three).max_norm, 1e-9)
        four = builders.solve_collinear_equidistant(4)
        outer = 0.5 / (1.0 + (3.0 / 4.0 + 1.0 / 27.0) / (7.0 / 12.0))
        inner = 0.5 - outer
        np.testing.assert_allclose(four.masses, [outer, inner, inner, outer], atol=1e-12)
        spacing = four.positions[1, 0] - four.positions[0, 0]
        self.assertAlmostEqual(spacing**3, 0.255068, delta=1e-6)
        self.assertLess(cc_residual(four).max_norm, 1e-9)

    def test_polygon(self):
        """Roots of unity with equal masses."""
        triangle = builders.build_polygon(4)
        np.testing.assert_allclose(triangle.masses, 1.0 / 3.0)
        np.testing.assert_allclose(triangle.radii, 1.0, atol=1e-15)
        square = builders.build_polygon(5)
        np.testing.assert_allclose(square.positions, [[1, 0], [0, 1], [-1, 0], [0, -1]], atol=1e-15)
        with self.assertRaises(InvalidInputError):
            builders.build_polygon(3)

    def test_polygon_constants_match_harmonics(self):
        """W equals A_(N−1) and V equals A_0 of the unit polygon at order N − 1."""
        from apps.harmonics.utils import harmonic_table

        for N in (4, 5, 6, 7, 8):
            v, w = builders.polygon_potential_constants(N)
            table = harmonic_table(builders.build_polygon(N), N - 1)
            self.assertAlmostEqual(table.pair(N - 1)[0], w, delta=1e-12)
            self.assertAlmostEqual(table.pair(0)[0], v, delta=1e-12)
        self.assertAlmostEqual(builders.polygon_potential_constants(4)[1], 5.0 / 8.0, delta=1e-15)
        self.assertAlmostEqual(builders.polygon_potential_constants(5)[0], 9.0 / 64.0, delta=1e-15)


class RhomboidRootsTestCase(SimpleTestCase):
    """
    Ratios a/b where the quadrupole coefficient c2 of the rhombus vanishes.
    """

    def test_scan_roots(self):
        """The scan finds 0.75746994, 1 and 1.32018439."""
        roots = rhomboid_c2_roots()
        self.assertEqual(len(roots), 3)
        np.testing.assert_allclose(roots, RHOMBOID_C2_ROOTS, atol=1e-6)

    def test_polynomial_roots_cross_check(self):
        """The degree-14 polynomial has the two non-square roots, reciprocal to each other."""
        roots = builders.rhomboid_polynomial_roots()
        for expected in (RHOMBOID_C2_ROOTS[0], RHOMBOID_C2_ROOTS[2]):
            self.assertLess(min(abs(r - expected) for r in roots), 1e-6)
        self.assertEqual(len(builders.rhomboid_c2_polynomial()), 15)


class PayloadTestCase(SimpleTestCase):
    """
    JSON ingestion and emission.
    """

    def setUp(self):
        setUp_configurations(self)

    def test_payload_round_trip(self):
        """A built configuration survives emission and ingestion."""
        payload = configuration_to_payload(self.lagrange)
        config = configuration_from_payload(payload)
        np.testing.assert_array_equal(config.positions, self.lagrange.positions)
        self.assertEqual(config.label, self.lagrange.label)

    def test_payload_mass_normalization(self):
        """Masses not summing to one are reported as invalid input."""
        payload = {'label': 'bad', 'bodies': [{'mass': 0.3, 'position': [0.5, 0]}, {'mass': 0.3, 'position': [-0.5, 0]}]}
        with self.assertRaisesRegex(InvalidInputError, 'sum to 1'):
            configuration_from_payload(payload)

    def test_payload_shape(self):
        """Missing fields and short position vectors are rejected."""
        with self.assertRaises(InvalidInputError):
            configuration_from_payload({'bodies': [{'mass': 1.0}]})
        with self.assertRaises(InvalidInputError):
            configuration_from_payload({'bodies': [{'mass': 0.5, 'position': [1]}, {'mass': 0.5, 'position': [-1]}]})

    def test_build_named(self):
        """Builders are reachable by name with textual parameters."""
        config = build_named('rp3bp', ['0.3'])
        np.testing.assert_array_equal(config.positions, self.rp3bp.positions)
        self.assertEqual(build_named('polygon', ['5'], normalize=True).n, 4)
        with self.assertRaises(InvalidInputError):
            build_named('pentagram', ['1'])
        with self.assertRaises(InvalidInputError):
            build_named('rhomboid', ['1'])

    def test_rotation_keeps_centrality(self):
        """Rigid rotations preserve the residual."""
        rotated = rotate_configuration(self.rhomboid, math.pi / 7)
        self.assertLess(cc_residual(rotated).max_norm, 1e-9)
