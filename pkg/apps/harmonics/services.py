import logging

from apps.utils.exceptions import InvalidInputError
from .serializers import (
    CoefficientSetSerializer,
    HarmonicTableSerializer,
    LegendreCosExpansionSerializer,
)
from .utils import coefficient_set, d_l, harmonic_table, legendre_cos_coeffs, legendre_derivative_cos_coeffs

logger = logging.getLogger(__name__)


def coefficient_report(config, l_max=4, j_max=8):
    """
    Reúne os coeficientes c, d, d^(l) e as tabelas harmônicas de uma
    configuração no formato do relatório ``coeffs``.

    Parâmetros:
        config (CentralConfiguration): configuração validada.
        l_max (int): maior l de d^(l) reportado.
        j_max (int): maior ordem de Legendre tabelada.

    Retorna:
        dict: pronto para ``dumps_json``.
    """
    if l_max < 1:
        raise InvalidInputError(f'l_max must be >= 1, got {l_max!r}')
    if j_max < 2:
        raise InvalidInputError(f'j_max must be >= 2, got {j_max!r}')
    orders = range(2, j_max + 1)
    report = {
        'label': config.label,
        'coefficients': CoefficientSetSerializer(coefficient_set(config)).data,
        'd_l': [dict(zip(('l', 'd1', 'd2'), (l, *d_l(config, l)))) for l in range(1, l_max + 1)],
        'harmonic_tables': HarmonicTableSerializer([harmonic_table(config, j) for j in orders], many=True).data,
        'legendre': LegendreCosExpansionSerializer([legendre_cos_coeffs(j) for j in orders], many=True).data,
        'legendre_derivative': LegendreCosExpansionSerializer(
            [legendre_derivative_cos_coeffs(j) for j in orders], many=True
        ).data,
    }
    logger.info('coefficient report for %s: l_max=%s j_max=%s', config.label, l_max, j_max)
    return report
