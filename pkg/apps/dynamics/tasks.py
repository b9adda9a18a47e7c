import logging

from celery import shared_task

from apps.configurations.services import configuration_from_payload
from apps.quadrature.utils import MAX_TOL
from apps.utils.exceptions import NumericalError
from .services import MIN_SPLITTING_T, splitting_sweep

logger = logging.getLogger(__name__)


@shared_task(
    bind=True,
    name='dynamics.splitting_sweep',
    max_retries=3,
    default_retry_delay=1,
)
def splitting_sweep_task(
    self, payload: dict, theta0: float, epsilon: float, points: int = 8, T: float = MIN_SPLITTING_T, tol: float = 1e-10
):
    """
    Varredura da separação das variedades numa grade de s0.

    Retorna:
        list: linhas [s0, separação, estimativa de erro, previsão de Melnikov].
    """
    try:
        config = configuration_from_payload(payload)
        return [list(row) for row in splitting_sweep(theta0, epsilon, config, points, T, tol)]

    except NumericalError as e:
        logger.exception('Erro na varredura de %s com tol=%s', payload.get('label', ''), tol)
        relaxed = min(tol * 10.0, MAX_TOL)
        raise self.retry(exc=e, args=(payload, theta0, epsilon, points, T, relaxed))
