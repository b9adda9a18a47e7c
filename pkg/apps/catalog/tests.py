from django.test import SimpleTestCase

from apps.configurations import builders
from apps.utils.choices import Provenance
from apps.utils.exceptions import GoldenMismatchError, InvalidInputError
from apps.utils.formatting import dumps_json
from .models import CatalogCase, CatalogReport, GoldenCheck, GoldenValue
from .services import CASES, PUBLISHED_TOL, Subject, catalog_report, run_case, run_catalog


def setUp_cases(self):
    self.wrong = CatalogCase(
        'wrong',
        lambda: builders.build_rp3bp(0.5),
        (GoldenValue('c2', 0.7, PUBLISHED_TOL, Provenance.PUBLISHED, lambda subject: 0.75),),
    )


class CatalogTestCase(SimpleTestCase):
    """
    Casos de aplicação contra os valores de referência.
    """

    def setUp(self):
        setUp_cases(self)

    def test_every_case_passes(self):
        """All registered cases reproduce their reference values."""
        for report in run_catalog():
            failures = [(check.name, check.computed, check.expected) for check in report.failures]
            self.assertTrue(report.passed, msg=f'{report.case}: {failures}')

    def test_collinear8_report(self):
        """PASS com c2 = 1.76876487."""
        payload = catalog_report([run_case('collinear8')])
        self.assertEqual(payload[0]['status'], 'PASS')
        c2 = next(check for check in payload[0]['checks'] if check['name'] == 'c2')
        self.assertAlmostEqual(c2['computed'], 1.76876487, delta=PUBLISHED_TOL)
        self.assertEqual(c2['provenance'], 'published')
        self.assertIn(b'"status": "PASS"', dumps_json(payload))

    def test_every_value_has_provenance(self):
        for case in CASES.values():
            for value in case.expected:
                self.assertIn(value.provenance, Provenance.values)
                self.assertGreater(value.tolerance, 0.0)

    def test_mismatch(self):
        """A value outside its tolerance fails the case and the report."""
        subject = Subject(self.wrong.build())
        value = self.wrong.expected[0]
        check = GoldenCheck(value.name, value.compute(subject), value.expected, value.tolerance, value.provenance)
        report = CatalogReport('wrong', subject.config.label, (check,))
        self.assertFalse(report.passed)
        self.assertAlmostEqual(check.difference, 0.05, delta=1e-12)
        with self.assertRaises(GoldenMismatchError) as context:
            catalog_report([report])
        self.assertEqual(context.exception.payload[0]['status'], 'FAIL')

    def test_nan_fails(self):
        check = GoldenCheck('x', float('nan'), 1.0, 1.0, Provenance.DERIVED)
        self.assertFalse(check.passed)

    def test_unknown_case(self):
        with self.assertRaises(InvalidInputError):
            run_case('hexagon')

    def test_case_validation(self):
        """Tolerância positiva, origem conhecida e nomes únicos."""
        with self.assertRaises(InvalidInputError):
            GoldenValue('x', 1.0, 0.0, Provenance.PUBLISHED, lambda subject: 1.0)
        with self.assertRaises(InvalidInputError):
            GoldenValue('x', 1.0, 1e-6, 'folklore', lambda subject: 1.0)
        with self.assertRaises(InvalidInputError):
            CatalogCase('empty', lambda: None, ())
        value = GoldenValue('x', 1.0, 1e-6, Provenance.PUBLISHED, lambda subject: 1.0)
        with self.assertRaises(InvalidInputError):
            CatalogCase('twice', lambda: None, (value, value))
