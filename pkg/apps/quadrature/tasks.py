import logging

from celery import shared_task

from apps.utils.exceptions import NumericalError
from .services import sample_f_curve, uniform_grid
from .utils import MAX_TOL

logger = logging.getLogger(__name__)


@shared_task(
    bind=True,
    name='quadrature.sample_f_curve',
    max_retries=3,
    default_retry_delay=1,
)
def sample_f_curve_task(self, name: str, lo: float, hi: float, points: int, tol: float, backend: str = 'direct'):
    """
    Amostra uma F-função em background.

    Retorna:
        list: linhas [theta_tilde, value, error_estimate].
    """
    try:
        results = sample_f_curve(name, lo, hi, points, tol, backend)
        return [[theta, r.value, r.error_estimate] for theta, r in zip(uniform_grid(lo, hi, points), results)]

    except NumericalError as e:
        logger.exception('Erro na amostragem de %s com tol=%s', name, tol)
        relaxed = min(tol * 10.0, MAX_TOL)
        raise self.retry(exc=e, args=(name, lo, hi, points, relaxed, backend))
