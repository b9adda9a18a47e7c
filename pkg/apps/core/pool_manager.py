import os
import sys
import threading
from concurrent.futures import ThreadPoolExecutor

from django.conf import settings
from tqdm import tqdm


class WorkerPool:
    """
    Classe Singleton que guarda o pool de threads usado na amostragem de
    grades (curvas F, funções de Melnikov, varreduras em s0).
    """

    def __init__(self):
        self._executor = None
        self._lock = threading.Lock()

    @property
    def size(self):
        threads = getattr(settings, 'MELNIKOV_THREADS', None) or os.cpu_count() or 1
        return max(1, int(threads))

    def executor(self):
        """
        Cria o executor na primeira chamada e o reaproveita nas seguintes.

        Retorna:
        ThreadPoolExecutor: executor compartilhado.
        """
        with self._lock:
            if self._executor is None:
                self._executor = ThreadPoolExecutor(max_workers=self.size, thread_name_prefix='melnikov')
            return self._executor

    def map(self, function, iterable, progress=False, desc=None):
        """Ordered map over the shared executor; results keep input order."""
        items = list(iterable)
        bar = dict(total=len(items), desc=desc, file=sys.stderr, disable=not progress)
        if len(items) <= 1 or self.size == 1:
            return [function(item) for item in tqdm(items, **bar)]
        return list(tqdm(self.executor().map(function, items), **bar))

    def shutdown(self):
        with self._lock:
            if self._executor is not None:
                self._executor.shutdown(wait=True)
                self._executor = None


# Singleton pattern
pool_instance = WorkerPool()


def get_pool():
    """
    Obtém a instância exclusiva do pool de workers.

    Retorna:
    WorkerPool: instância única da classe WorkerPool.
    """
    return pool_instance
