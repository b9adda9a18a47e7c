import logging

from celery import shared_task

from apps.configurations.services import configuration_from_payload
from apps.utils.exceptions import NumericalError
from .services import classify, verdict_report

logger = logging.getLogger(__name__)


@shared_task(
    bind=True,
    name='melnikov.classify',
    max_retries=3,
    default_retry_delay=1,
)
def classify_task(self, payload: dict, l_max: int = 4, j_max: int = None):
    """
    Classifica uma configuração recebida como JSON.

    Retorna:
        dict: veredito serializado.
    """
    try:
        config = configuration_from_payload(payload)
        return verdict_report(classify(config, l_max, j_max))

    except NumericalError as e:
        logger.exception('Erro ao classificar %s', payload.get('label', ''))
        raise self.retry(exc=e)
