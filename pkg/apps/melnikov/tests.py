import math
from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase

from apps.configurations import builders
from apps.configurations.services import configuration_to_payload
from apps.configurations.utils import rotate_configuration
from apps.harmonics.utils import c_coeffs, d_coeffs, harmonic_table
from apps.quadrature.services import eval_F4, eval_F62, eval_Fpoly
from apps.utils.choices import ClassifyStage, StageDecision, VerdictStatus
from apps.utils.exceptions import InvalidInputError
from apps.utils.formatting import dumps_json
from .models import MelnikovEvaluation, TransversalityVerdict, Witness
from .services import classify, f_roots_report, sample_melnikov, stage_four_order, verdict_report
from .tasks import classify_task
from .utils import M4, M6, M_poly, m4_evaluation, m6_evaluation, melnikov_sum, poly_prefactor, simple_zeros

F4_ROOT = 0.61078210
ROOT_WINDOW = 1e-6
SIGN_GRID = 256
ROTATIONS = (math.pi / 7, math.pi / 3)


def rhomboid_root(near):
    return min(builders.rhomboid_polynomial_roots(), key=lambda r: abs(r - near))


def setUp_configurations(self):
    self.rp3bp = builders.build_rp3bp(0.3)
    self.rp3bp_half = builders.build_rp3bp(0.5)
    self.equilateral = builders.build_equilateral(1.0 / 3.0, 1.0 / 3.0)
    self.rhomboid = builders.build_rhomboid(rhomboid_root(1.32018439), 1.0)
    self.mirror_rhomboid = builders.build_rhomboid(rhomboid_root(0.75746994), 1.0)
    self.collinear8 = builders.solve_collinear_equal(7)


class ZerosTestCase(SimpleTestCase):
    """
    Zeros simples do fator harmônico.
    """

    def test_sine(self):
        """(A, B) = (0, 1), k = 1 is sin s0, with zeros 0 and π."""
        zeros = simple_zeros(0.0, 1.0, 1)
        self.assertEqual(len(zeros), 2)
        self.assertAlmostEqual(zeros[0], 0.0, delta=1e-15)
        self.assertAlmostEqual(zeros[1], math.pi, delta=1e-15)

    def test_cosine(self):
        """(A, B) = (1, 0), k = 2 is cos 2s0."""
        zeros = simple_zeros(1.0, 0.0, 2)
        for zero, expected in zip(zeros, (1, 3, 5, 7)):
            self.assertAlmostEqual(zero, expected * math.pi / 4, delta=1e-14)

    def test_degenerate(self):
        self.assertIsNone(simple_zeros(0.0, 0.0, 3))

    def test_count_and_range(self):
        """2k distinct zeros in [0, 2π), each a root of the factor."""
        for a, b, k in ((0.3, -1.2, 1), (-2.0, 0.5, 3), (1e-3, 4.0, 7)):
            zeros = simple_zeros(a, b, k)
            self.assertEqual(len(set(zeros)), 2 * k)
            self.assertTrue(all(0.0 <= z < 2.0 * math.pi for z in zeros))
            for z in zeros:
                self.assertAlmostEqual(a * math.cos(k * z) + b * math.sin(k * z), 0.0, delta=1e-12)

    def test_bad_harmonic(self):
        with self.assertRaises(InvalidInputError):
            simple_zeros(1.0, 0.0, 0)


class ModelsTestCase(SimpleTestCase):
    def test_witness_needs_pair(self):
        """A witness with a vanishing pair is rejected."""
        with self.assertRaises(InvalidInputError):
            Witness(2, 4, (0.0, 0.0), (), ClassifyStage.C_PAIR)

    def test_transversal_needs_witness(self):
        with self.assertRaises(InvalidInputError):
            TransversalityVerdict(VerdictStatus.TRANSVERSAL)

    def test_evaluation_validation(self):
        """Odd orders, Θ0 = 0 and ε <= 0 are refused."""
        for order, theta0, epsilon in ((5, 1.0, 0.5), (4, 0.0, 0.5), (4, 1.0, 0.0)):
            with self.assertRaises(InvalidInputError):
                MelnikovEvaluation(order, (), theta0, epsilon)

    def test_sampled(self):
        """Sampling stores M on the uniform grid of [0, 2π)."""
        evaluation = MelnikovEvaluation(4, ((2, 0.0, 1.0),), 1.0, 0.5).sampled(8)
        self.assertEqual(len(evaluation.s0_grid_values), 8)
        self.assertAlmostEqual(evaluation.s0_grid_values[1], 1.0, delta=1e-15)
        self.assertAlmostEqual(evaluation(math.pi / 4), 1.0, delta=1e-15)


class MelnikovFunctionsTestCase(SimpleTestCase):
    """
    M4, M6 and the polygon functions at Θ0 = ±1, ε = 0.5 (Θ̃0 = ±2).
    """

    def setUp(self):
        setUp_configurations(self)

    def test_m4_value(self):
        """RP3BP μ = 1/2 at s0 = π/4: M4 = 2 F4(2) (3/4); the lower branch flips sign and phase."""
        self.assertAlmostEqual(
            M4(math.pi / 4, 1.0, 0.5, self.rp3bp_half) / (1.5 * eval_F4(2.0)), 1.0, delta=1e-12
        )
        self.assertAlmostEqual(
            M4(math.pi / 4, -1.0, 0.5, self.rp3bp_half) / (-1.5 * eval_F4(-2.0)), 1.0, delta=1e-12
        )

    def test_m4_vanishes_on_rhomboid(self):
        """c2 = c3 = 0 for the rhombus at the polynomial root."""
        amplitude = abs(2.0 * eval_F4(2.0))
        for s0 in np.linspace(0.0, 2.0 * math.pi, 9):
            self.assertLess(abs(M4(s0, 1.0, 0.5, self.rhomboid)), 1e-11 * amplitude)

    def test_collinear_m4_zeros(self):
        """c3 = 0 on the line, so M4 vanishes at multiples of π/2."""
        evaluation = m4_evaluation(1.0, 0.5, self.collinear8)
        amplitude = max(abs(a) for _, a_cos, a_sin in evaluation.harmonic_terms for a in (a_cos, a_sin))
        self.assertGreater(amplitude, 0.0)
        for n in range(4):
            self.assertLess(abs(evaluation(n * math.pi / 2)), 1e-14 * amplitude)

    def test_equilateral_m6(self):
        """Equal masses on the triangle keep only the 3s0 channel, d4 = 5/(3√3)."""
        evaluation = m6_evaluation(1.0, 0.5, self.equilateral)
        (k1, cos1, sin1), (k3, cos3, _) = evaluation.harmonic_terms
        self.assertEqual((k1, k3), (1, 3))
        expected = 2.0 * eval_F62(2.0) * 5.0 / (3.0 * math.sqrt(3.0))
        self.assertAlmostEqual(cos3 / expected, 1.0, delta=1e-10)
        self.assertLess(max(abs(cos1), abs(sin1)), 1e-12 * abs(expected))

    def test_collinear_m6_is_odd(self):
        """d2 = d4 = 0 on the line: M6(−s0) = −M6(s0)."""
        evaluation = m6_evaluation(1.0, 0.5, self.collinear8)
        for s0 in (0.3, 1.1, 2.5):
            self.assertAlmostEqual(evaluation(-s0), -evaluation(s0), delta=1e-14)

    def test_scale_consistency(self):
        """M4 and M6 amplitudes agree with the j = 2, 3 harmonic tables (c = 4A, d = 8A)."""
        for config in (self.rp3bp, self.equilateral, self.collinear8):
            _, c2, c3 = c_coeffs(config)
            table = harmonic_table(config, 2)
            self.assertAlmostEqual(4.0 * table.pair(2)[0], c2, delta=1e-10 * max(1.0, abs(c2)))
            self.assertAlmostEqual(4.0 * table.pair(2)[1], c3, delta=1e-10 * max(1.0, abs(c3)))
            table = harmonic_table(config, 3)
            d1, d2, d3, d4 = d_coeffs(config)
            for expected, value in zip((d1, d2, d3, d4), (*table.pair(1), *table.pair(3))):
                self.assertAlmostEqual(8.0 * value, expected, delta=1e-10 * max(1.0, abs(expected)))

    def test_melnikov_sum(self):
        """ε⁴M4 + ε⁶M6 matches its sampled version on the grid."""
        rows = sample_melnikov('sum', 1.0, 0.5, self.rp3bp, points=4, tol=1e-10)
        for s0, value in rows:
            self.assertAlmostEqual(value, melnikov_sum(s0, 1.0, 0.5, self.rp3bp), delta=1e-12)
            self.assertAlmostEqual(
                value, 0.5**4 * M4(s0, 1.0, 0.5, self.rp3bp) + 0.5**6 * M6(s0, 1.0, 0.5, self.rp3bp), delta=1e-12
            )

    def test_poly_prefactor(self):
        """K = 231/4 for N = 7 and 429/4 for N = 8."""
        self.assertEqual(poly_prefactor(7), Fraction(231, 4))
        self.assertEqual(poly_prefactor(8), Fraction(429, 4))
        self.assertEqual(poly_prefactor(4), Fraction(10))
        with self.assertRaises(InvalidInputError):
            poly_prefactor(3)

    def test_m_poly(self):
        """N = 7: zero at s0 = 0, (231/4) F12 at s0 = π/12."""
        self.assertEqual(M_poly(7, 0.0, 1.0, 0.5), 0.0)
        expected = 231.0 / 4.0 * eval_Fpoly(7, 2.0)
        self.assertAlmostEqual(M_poly(7, math.pi / 12, 1.0, 0.5) / expected, 1.0, delta=1e-12)

    def test_sample_orders(self):
        """Polygon orders need no configuration; numeric orders do."""
        rows = sample_melnikov('poly:5', 1.0, 0.5, points=8)
        self.assertEqual(len(rows), 8)
        self.assertEqual(rows[0], (0.0, 0.0))
        with self.assertRaises(InvalidInputError):
            sample_melnikov('4', 1.0, 0.5)
        with self.assertRaises(InvalidInputError):
            sample_melnikov('8', 1.0, 0.5, self.rp3bp)

    def test_theta0_zero(self):
        with self.assertRaises(InvalidInputError):
            M4(0.0, 0.0, 0.5, self.rp3bp)


class ClassifyTestCase(SimpleTestCase):
    """
    Árvore de decisão da transversalidade.
    """

    def setUp(self):
        setUp_configurations(self)

    def test_rp3bp_d_pair(self):
        """μ = 0.3: first stage, harmonic 1, order 6, pair (0.252, 0)."""
        verdict = classify(self.rp3bp)
        self.assertTrue(verdict.is_transversal)
        witness = verdict.witness
        self.assertEqual((witness.k, witness.epsilon_order, witness.stage), (1, 6, ClassifyStage.D_PAIR))
        self.assertAlmostEqual(witness.coefficient_pair[0], 0.252, delta=1e-12)
        self.assertAlmostEqual(witness.coefficient_pair[1], 0.0, delta=1e-15)
        self.assertEqual(len(verdict.search_trace), 1)

    def test_rp3bp_c_pair(self):
        """μ = 1/2 kills every d-term; c2 = 3/4 decides at order 4."""
        verdict = classify(self.rp3bp_half)
        witness = verdict.witness
        self.assertEqual((witness.k, witness.epsilon_order, witness.stage), (2, 4, ClassifyStage.C_PAIR))
        self.assertAlmostEqual(witness.coefficient_pair[0], 0.75, delta=1e-12)
        decisions = [entry.decision for entry in verdict.search_trace]
        self.assertEqual(decisions, [StageDecision.VANISHES] * 4 + [StageDecision.WITNESS])

    def test_rhomboid_signs(self):
        """Both special rhombi decide at j = 4, k = 2, with opposite signs."""
        signs = []
        for config in (self.rhomboid, self.mirror_rhomboid):
            witness = classify(config).witness
            self.assertEqual((witness.k, witness.epsilon_order), (2, 8))
            self.assertEqual(witness.stage, ClassifyStage.HARMONIC_SCAN)
            self.assertLess(abs(witness.coefficient_pair[1]), 1e-11)
            signs.append(math.copysign(1.0, witness.coefficient_pair[0]))
        self.assertEqual(signs, [1.0, -1.0])

    def test_polygon_harmonic(self):
        """Regular polygons of N − 1 bodies decide on harmonic N − 1."""
        for N in range(4, 9):
            witness = classify(builders.build_polygon(N)).witness
            self.assertEqual(witness.k, N - 1)
            self.assertEqual(witness.epsilon_order, 2 * (N - 1))

    def test_rotation_invariance(self):
        """Rotation keeps k and order; the pair only rotates."""
        for config in (self.rp3bp, self.rp3bp_half, self.rhomboid, builders.build_polygon(6)):
            reference = classify(config).witness
            for phi in ROTATIONS:
                witness = classify(rotate_configuration(config, phi)).witness
                self.assertEqual((witness.k, witness.epsilon_order), (reference.k, reference.epsilon_order))
                self.assertAlmostEqual(
                    math.hypot(*witness.coefficient_pair) / math.hypot(*reference.coefficient_pair),
                    1.0,
                    delta=1e-10,
                )

    def test_sign_changes(self):
        """The witness factor changes sign across every one of its 2k zeros."""
        step = math.pi / SIGN_GRID
        for config in (self.rp3bp, self.rp3bp_half, self.rhomboid, builders.build_polygon(5)):
            witness = classify(config).witness
            self.assertEqual(len(witness.zero_locations), 2 * witness.k)
            for zero in witness.zero_locations:
                self.assertLess(witness.factor(zero - step) * witness.factor(zero + step), 0.0)

    def test_m4_sign_changes(self):
        """The sampled M4 of μ = 1/2 changes sign across the c-pair zeros."""
        witness = classify(self.rp3bp_half).witness
        evaluation = m4_evaluation(1.0, 0.5, self.rp3bp_half)
        step = math.pi / SIGN_GRID
        for zero in witness.zero_locations:
            self.assertLess(evaluation(zero - step) * evaluation(zero + step), 0.0)

    def test_inconclusive(self):
        """A heptagon cut at j = 6 has no nonzero pair."""
        verdict = classify(builders.build_polygon(8), j_max=6)
        self.assertEqual(verdict.status, VerdictStatus.INCONCLUSIVE)
        self.assertIsNone(verdict.witness)
        self.assertEqual(len(verdict.search_trace), 1 + 3 + 1 + len(stage_four_order(6)))

    def test_stage_four_order(self):
        self.assertEqual(stage_four_order(6), [(2, 4), (2, 6), (3, 3), (3, 5), (4, 4), (4, 6), (5, 5), (6, 6)])

    def test_bad_cutoffs(self):
        for kwargs in ({'l_max': 1}, {'l_max': 17}, {'j_max': 3}):
            with self.assertRaises(InvalidInputError):
                classify(self.rp3bp, **kwargs)

    def test_report(self):
        """Verdict JSON carries status, witness and trace."""
        report = verdict_report(classify(self.rp3bp_half))
        self.assertEqual(report['status'], 'transversal')
        self.assertEqual(report['witness']['k'], 2)
        self.assertAlmostEqual(report['witness']['A'], 0.75, delta=1e-12)
        self.assertEqual(len(report['witness']['zeros']), 4)
        self.assertEqual(len(report['trace']), 5)
        self.assertEqual(report['trace'][0]['stage'], 'd_pair')
        self.assertIn(b'"status": "transversal"', dumps_json(report))

    def test_inconclusive_report(self):
        report = verdict_report(classify(builders.build_polygon(8), j_max=6))
        self.assertEqual(report['status'], 'inconclusive')
        self.assertIsNone(report['witness'])

    def test_task(self):
        """The Celery task classifies a JSON payload."""
        result = classify_task.apply(args=(configuration_to_payload(builders.build_polygon(7)),)).get()
        self.assertEqual(result['witness']['k'], 6)
        self.assertEqual(result['witness']['epsilon_order'], 12)


class FRootsTestCase(SimpleTestCase):
    def test_f4_root(self):
        """Only the F4 root lies in [0.5, 0.7]."""
        report = f_roots_report(0.5, 0.7, grid=16)
        self.assertEqual(len(report['F4']), 1)
        self.assertAlmostEqual(report['F4'][0], F4_ROOT, delta=ROOT_WINDOW)
        self.assertEqual(report['F62'], [])
