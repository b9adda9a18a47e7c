"""
The application cases as golden fixtures: every case builds its
configuration, recomputes the tabulated quantities and compares them with
the reference values.
"""
import logging
import math
from functools import cached_property

from apps.configurations import builders
from apps.harmonics.utils import c_coeffs, d_coeffs
from apps.melnikov.services import classify
from apps.melnikov.utils import poly_prefactor
from apps.quadrature.services import confirmed_zeros
from apps.utils.choices import Provenance
from apps.utils.exceptions import GoldenMismatchError, InvalidInputError
from .models import CatalogCase, CatalogReport, GoldenCheck, GoldenValue
from .serializers import CatalogReportSerializer

logger = logging.getLogger(__name__)

# the reference tables carry eight significant digits
PUBLISHED_TOL = 1e-6
EXACT_TOL = 1e-12
RHOMBOID_RATIOS = (1.32018439, 0.75746994)


class Subject:
    """Configuração de um caso, com o veredito calculado uma única vez."""

    def __init__(self, config):
        self.config = config

    @cached_property
    def verdict(self):
        return classify(self.config)

    @property
    def witness(self):
        return self.verdict.witness


def _rhomboid_ratio(near):
    return min(builders.rhomboid_polynomial_roots(), key=lambda r: abs(r - near))


def _witness_attribute(name):
    def compute(subject):
        witness = subject.witness
        return math.nan if witness is None else float(getattr(witness, name))

    return compute


def _witness_sign(subject):
    witness = subject.witness
    return math.nan if witness is None else math.copysign(1.0, witness.coefficient_pair[0])


def _c2(subject):
    return c_coeffs(subject.config)[1]


def _d(index):
    return lambda subject: d_coeffs(subject.config)[index]


def _position(index):
    return lambda subject: float(subject.config.positions[index, 0])


def _mass(index):
    return lambda subject: float(subject.config.masses[index])


def _f4_root(_):
    roots = confirmed_zeros('F4', 0.5, 0.7, grid=16)
    return roots[0] if roots else math.nan


def _witness_values(k, order, provenance=Provenance.PUBLISHED):
    return (
        GoldenValue('witness k', k, EXACT_TOL, provenance, _witness_attribute('k')),
        GoldenValue('witness order', order, EXACT_TOL, provenance, _witness_attribute('epsilon_order')),
    )


def _rp3bp_case(mu):
    return CatalogCase(
        f'rp3bp-{mu}',
        lambda: builders.build_rp3bp(mu),
        (GoldenValue('d1', 3.0 * mu * (1.0 - mu) * (1.0 - 2.0 * mu), PUBLISHED_TOL, Provenance.PUBLISHED, _d(0)),)
        + _witness_values(1, 6),
    )


def _rhomboid_case(name, near, sign):
    return CatalogCase(
        name,
        lambda: builders.build_rhomboid(_rhomboid_ratio(near), 1.0),
        (
            GoldenValue('a/b', near, PUBLISHED_TOL, Provenance.PUBLISHED, lambda _: _rhomboid_ratio(near)),
            GoldenValue('c2', 0.0, 1e-8, Provenance.DERIVED, _c2),
            GoldenValue('witness sign', sign, EXACT_TOL, Provenance.DERIVED, _witness_sign),
        )
        + _witness_values(2, 8),
    )


def _polygon_case(N, provenance):
    return CatalogCase(
        f'polygon{N}',
        lambda: builders.build_polygon(N),
        (GoldenValue('K', float(poly_prefactor(N)), EXACT_TOL, provenance, lambda _: float(poly_prefactor(N))),)
        + _witness_values(N - 1, 2 * (N - 1), provenance),
    )


CASES = {
    case.name: case
    for case in (
        _rp3bp_case(0.1),
        _rp3bp_case(0.3),
        _rp3bp_case(0.49),
        CatalogCase(
            'rp3bp-0.5',
            lambda: builders.build_rp3bp(0.5),
            (
                GoldenValue('c2', 0.75, PUBLISHED_TOL, Provenance.PUBLISHED, _c2),
                GoldenValue('d1', 0.0, EXACT_TOL, Provenance.TRIVIAL, _d(0)),
                GoldenValue('F4 root', 0.61078210, PUBLISHED_TOL, Provenance.PUBLISHED, _f4_root),
            )
            + _witness_values(2, 4),
        ),
        CatalogCase(
            'equilateral',
            lambda: builders.build_equilateral(1.0 / 3.0, 1.0 / 3.0),
            (GoldenValue('d4', 5.0 / (3.0 * math.sqrt(3.0)), PUBLISHED_TOL, Provenance.PUBLISHED, _d(3)),)
            + _witness_values(3, 6, Provenance.DERIVED),
        ),
        _rhomboid_case('rhomboid', RHOMBOID_RATIOS[0], 1.0),
        _rhomboid_case('rhomboid-mirror', RHOMBOID_RATIOS[1], -1.0),
        CatalogCase(
            'collinear8',
            lambda: builders.solve_collinear_equal(7),
            (
                GoldenValue('c2', 1.76876487, PUBLISHED_TOL, Provenance.PUBLISHED, _c2),
                GoldenValue('a1', -1.17858061, PUBLISHED_TOL, Provenance.PUBLISHED, _position(0)),
                GoldenValue('a2', -0.73861375, PUBLISHED_TOL, Provenance.PUBLISHED, _position(1)),
                GoldenValue('a3', -0.35910513, PUBLISHED_TOL, Provenance.PUBLISHED, _position(2)),
            )
            + _witness_values(2, 4, Provenance.DERIVED),
        ),
        CatalogCase(
            'collinear11',
            lambda: builders.solve_collinear_equidistant(10),
            (
                GoldenValue('c2', 1.95579995, PUBLISHED_TOL, Provenance.PUBLISHED, _c2),
                GoldenValue('a1', -1.44194062, PUBLISHED_TOL, Provenance.PUBLISHED, _position(0)),
            )
            + tuple(
                GoldenValue(f'm{i + 1}', mass, PUBLISHED_TOL, Provenance.PUBLISHED, _mass(i))
                for i, mass in enumerate((0.05585772, 0.08684056, 0.10794726, 0.12139042, 0.12796403))
            )
            + _witness_values(2, 4, Provenance.DERIVED),
        ),
        _polygon_case(7, Provenance.PUBLISHED),
        _polygon_case(8, Provenance.DERIVED),
    )
}


def run_case(name):
    """
    Recalcula os valores de referência de um caso.

    Retorna:
        CatalogReport: uma verificação por valor, aprovada ou não.

    Raises:
        InvalidInputError: caso desconhecido.
    """
    try:
        case = CASES[name]
    except KeyError:
        raise InvalidInputError(f'unknown catalog case {name!r}; choose from {", ".join(CASES)} or all')
    subject = Subject(case.build())
    checks = tuple(
        GoldenCheck(value.name, float(value.compute(subject)), value.expected, value.tolerance, value.provenance)
        for value in case.expected
    )
    report = CatalogReport(case.name, subject.config.label, checks)
    for check in report.failures:
        logger.warning('%s: %s = %r, expected %r ± %r', name, check.name, check.computed, check.expected, check.tolerance)
    logger.info('catalog %s: %s/%s passed', name, len(checks) - len(report.failures), len(checks))
    return report


def run_catalog(names=None):
    return [run_case(name) for name in (names or CASES)]


def catalog_report(reports):
    """
    Serializa os relatórios.

    Raises:
        GoldenMismatchError: algum valor ficou fora da tolerância; o
            relatório já serializado vai em ``payload``.
    """
    payload = CatalogReportSerializer(reports, many=True).data
    failed = [report.case for report in reports if not report.passed]
    if failed:
        error = GoldenMismatchError(f'golden mismatch in {", ".join(failed)}')
        error.payload = payload
        raise error
    return payload
