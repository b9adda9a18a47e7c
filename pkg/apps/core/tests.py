import csv
import io
import os
import tempfile
from unittest import mock

import orjson
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from apps.catalog.models import CatalogCase, GoldenValue
from apps.catalog.services import CASES
from apps.configurations import builders
from apps.configurations.services import configuration_to_payload
from apps.utils.choices import ExitCode, Provenance

UNNORMALIZED = {'label': 'heavy', 'bodies': [{'mass': 0.6, 'position': [-0.5, 0.0]}, {'mass': 0.6, 'position': [0.5, 0.0]}]}


def setUp_files(self):
    directory = tempfile.TemporaryDirectory()
    self.addCleanup(directory.cleanup)

    def dump(name, payload):
        path = os.path.join(directory.name, name)
        with open(path, 'wb') as stream:
            stream.write(orjson.dumps(payload))
        return path

    self.rp3bp_path = dump('rp3bp.json', configuration_to_payload(builders.build_rp3bp(0.3)))
    self.polygon_path = dump('polygon7.json', configuration_to_payload(builders.build_polygon(7)))
    self.unnormalized_path = dump('heavy.json', UNNORMALIZED)
    self.broken_path = os.path.join(directory.name, 'broken.json')
    with open(self.broken_path, 'w') as stream:
        stream.write('{"label": ')


def run(*args):
    out = io.StringIO()
    call_command(*args, stdout=out)
    return out.getvalue()


def rows(text):
    return list(csv.reader(io.StringIO(text)))


class CommandOutputTestCase(SimpleTestCase):
    """
    Relatórios dos comandos em stdout.
    """

    def setUp(self):
        setUp_files(self)

    def test_catalog_collinear8(self):
        """PASS report including c2 = 1.76876487."""
        payload = orjson.loads(run('catalog', 'collinear8'))
        self.assertEqual(payload[0]['status'], 'PASS')
        c2 = next(check for check in payload[0]['checks'] if check['name'] == 'c2')
        self.assertAlmostEqual(c2['computed'], 1.76876487, delta=1e-6)

    def test_classify_polygon7(self):
        """Sete corpos no polígono: testemunha no harmônico 6."""
        payload = orjson.loads(run('classify', self.polygon_path))
        self.assertEqual(payload['status'], 'transversal')
        self.assertEqual(payload['witness']['k'], 6)

    def test_config_build_then_validate(self):
        """A built configuration is accepted back by ``config validate``."""
        built = run('config', 'build', 'rp3bp', '0.3')
        self.assertEqual(len(orjson.loads(built)['bodies']), 2)
        report = orjson.loads(run('config', 'validate', self.rp3bp_path))
        self.assertLess(report['centrality']['max_norm'], 1e-12)
        self.assertAlmostEqual(report['lambda'], 1.0, delta=1e-12)

    def test_coeffs(self):
        payload = orjson.loads(run('coeffs', self.rp3bp_path, '--jmax', '4'))
        self.assertEqual(len(payload['harmonic_tables']), 3)
        self.assertEqual([entry['l'] for entry in payload['d_l']], [1, 2, 3, 4])

    def test_fplot_is_deterministic(self):
        """Mesma chamada, mesmos bytes; cabeçalho e uma linha por ponto."""
        first = run('fplot', 'F4', '--range', '0.5', '1.5', '--points', '5')
        self.assertEqual(first, run('fplot', 'F4', '--range', '0.5', '1.5', '--points', '5'))
        table = rows(first)
        self.assertEqual(table[0], ['theta_tilde', 'value', 'error_estimate'])
        self.assertEqual(len(table), 6)
        self.assertEqual(table[1][0], '5.0000000000000000e-01')
        self.assertTrue(first.endswith('\n') and '\r' not in first)

    def test_melnikov_polygon(self):
        """poly:N needs no configuration file."""
        table = rows(run('melnikov', '--order', 'poly:5', '--theta0', '1', '--eps', '0.8', '--points', '8'))
        self.assertEqual(table[0], ['s0', 'M'])
        self.assertEqual(len(table), 9)

    def test_asymp_recurrence(self):
        table = rows(run('asymp', 'recurrence', '--ks', '2', '--deltas', '5'))
        self.assertEqual(table[0][0], 'k')
        self.assertLess(float(table[1][-1]), 1e-8)

    def test_integrate_duffing(self):
        """Trajectory CSV over the requested grid, H_D near zero on the homoclinic."""
        text = run('integrate', '--flow', 'duffing', '--span', '-5', '5', '--points', '11')
        table = rows(text)
        self.assertEqual(table[0], ['tau', 'x', 'y', 's', 'theta', 'H_D'])
        self.assertEqual(len(table), 12)
        for row in table[1:]:
            self.assertLess(abs(float(row[-1])), 1e-8)


class ExitCodeTestCase(SimpleTestCase):
    """
    Códigos de saída: 1 uso, 2 falha numérica, 3 valor de referência.
    """

    def setUp(self):
        setUp_files(self)

    def assertExitCode(self, code, *args):
        with self.assertRaises(CommandError) as context:
            run(*args)
        self.assertEqual(context.exception.returncode, code)
        return context.exception

    def test_unnormalized_masses(self):
        """Masses that do not sum to one are a usage error with a message."""
        error = self.assertExitCode(ExitCode.USAGE, 'coeffs', self.unnormalized_path)
        self.assertIn('sum to 1', str(error))

    def test_usage_errors(self):
        self.assertExitCode(ExitCode.USAGE, 'coeffs', self.broken_path)
        self.assertExitCode(ExitCode.USAGE, 'coeffs', '/nonexistent/config.json')
        self.assertExitCode(ExitCode.USAGE, 'fplot', 'F5')
        self.assertExitCode(ExitCode.USAGE, 'asymp', 'table')
        self.assertExitCode(ExitCode.USAGE, 'config', 'build', 'rp3bp')
        self.assertExitCode(ExitCode.USAGE, 'catalog', 'hexagon')

    def test_numerical_failure(self):
        """Θ̃ ≥ 25 puts F4 beyond the direct quadrature's phase scale."""
        self.assertExitCode(ExitCode.NUMERICAL, 'fplot', 'F4', '--range', '25', '26', '--points', '2')

    def test_golden_mismatch(self):
        """A wrong reference value exits 3 after printing the FAIL report."""
        wrong = CatalogCase(
            'wrong',
            lambda: builders.build_rp3bp(0.5),
            (GoldenValue('c2', 0.7, 1e-6, Provenance.PUBLISHED, lambda subject: 0.75),),
        )
        out = io.StringIO()
        with mock.patch.dict(CASES, {'wrong': wrong}):
            with self.assertRaises(CommandError) as context:
                call_command('catalog', 'wrong', stdout=out)
        self.assertEqual(context.exception.returncode, ExitCode.GOLDEN)
        self.assertEqual(orjson.loads(out.getvalue())[0]['status'], 'FAIL')
