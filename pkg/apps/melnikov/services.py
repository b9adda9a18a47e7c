"""
Decision tree for transversal intersection of the invariant manifolds of
infinity, and the reports built on the Melnikov functions.
"""
import logging

import numpy as np
from django.conf import settings

from apps.harmonics.utils import MAX_LEGENDRE_ORDER, c_coeffs, d_coeffs, d_l, harmonic_table
from apps.quadrature.services import POLY_PREFIX, confirmed_zeros, parse_function_name
from apps.quadrature.utils import ROOT_TOL
from apps.utils.choices import ClassifyStage, FunctionName, QuadratureBackend, StageDecision, VerdictStatus
from apps.utils.exceptions import InvalidInputError
from .models import TraceEntry, TransversalityVerdict, Witness
from .serializers import TransversalityVerdictSerializer
from .utils import m4_evaluation, m6_evaluation, poly_evaluation, simple_zeros

logger = logging.getLogger(__name__)

MAX_L = 16
MELNIKOV_ORDERS = ('4', '6', 'sum')


def default_j_max(config):
    return min(2 * config.n + 4, MAX_LEGENDRE_ORDER)


def stage_four_order(j_max):
    """
    Ordem de varredura (k, j) do estágio iv: harmônicos k crescentes e,
    para cada k, ordens j crescentes com j ≡ k (mod 2). O par j = 2, k = 2
    já foi examinado pelo estágio iii e os canais k = 1 pelos estágios i e ii.
    """
    order = []
    for k in range(2, j_max + 1):
        first = 4 if k == 2 else max(3, k)
        order.extend((k, j) for j in range(first, j_max + 1, 2))
    return order


class _Search:
    def __init__(self, threshold):
        self.threshold = threshold
        self.trace = []

    def visit(self, stage, k, epsilon_order, pair, j=None):
        """Registra o par; devolve a testemunha quando ele não se anula."""
        pair = (float(pair[0]), float(pair[1]))
        found = max(abs(pair[0]), abs(pair[1])) > self.threshold
        decision = StageDecision.WITNESS if found else StageDecision.VANISHES
        self.trace.append(TraceEntry(stage, pair, decision, k, epsilon_order, j))
        logger.debug('%s k=%s j=%s pair=%s -> %s', stage, k, j, pair, decision)
        if not found:
            return None
        zeros = simple_zeros(-pair[1], pair[0], k)
        return Witness(k, epsilon_order, pair, tuple(zeros), stage)

    def verdict(self, witness=None):
        status = VerdictStatus.TRANSVERSAL if witness else VerdictStatus.INCONCLUSIVE
        return TransversalityVerdict(status, witness, tuple(self.trace))


def classify(config, l_max=4, j_max=None, threshold=None):
    """
    Decide se as variedades estável e instável do infinito se cortam
    transversalmente, procurando o primeiro par harmônico não nulo.

    Estágios, nesta ordem:
        i.   (d1, d2), harmônico 1, ordem ε⁶;
        ii.  d^(l) para l = 2..l_max, harmônico 1, ordem ε^(2(2l+1));
        iii. (c2, c3), harmônico 2, ordem ε⁴;
        iv.  tabelas harmônicas j <= j_max na ordem de ``stage_four_order``.

    Parâmetros:
        config (CentralConfiguration): configuração validada.
        l_max (int): 2 <= l_max <= 16.
        j_max (int | None): maior ordem de Legendre; padrão 2n + 4.
        threshold (float | None): corte absoluto para "coeficiente nulo";
            padrão ``settings.MELNIKOV_ZERO_THRESHOLD``.

    Retorna:
        TransversalityVerdict: inconclusivo não é erro.
    """
    if not isinstance(l_max, (int, np.integer)) or not 2 <= l_max <= MAX_L:
        raise InvalidInputError(f'l_max must be an integer in [2, {MAX_L}], got {l_max!r}')
    j_max = default_j_max(config) if j_max is None else j_max
    if not isinstance(j_max, (int, np.integer)) or not 4 <= j_max <= MAX_LEGENDRE_ORDER:
        raise InvalidInputError(f'j_max must be an integer in [4, {MAX_LEGENDRE_ORDER}], got {j_max!r}')
    threshold = settings.MELNIKOV_ZERO_THRESHOLD if threshold is None else threshold
    search = _Search(threshold)

    d1, d2, _, _ = d_coeffs(config)
    witness = search.visit(ClassifyStage.D_PAIR, 1, 6, (d1, d2), j=3)

    for l in range(2, l_max + 1):
        if witness:
            break
        witness = search.visit(ClassifyStage.D_LADDER, 1, 2 * (2 * l + 1), d_l(config, l), j=2 * l + 1)

    if not witness:
        _, c2, c3 = c_coeffs(config)
        witness = search.visit(ClassifyStage.C_PAIR, 2, 4, (c2, c3), j=2)

    if not witness:
        tables = {}
        for k, j in stage_four_order(j_max):
            table = tables.setdefault(j, harmonic_table(config, j))
            witness = search.visit(ClassifyStage.HARMONIC_SCAN, k, 2 * j, table.pair(k), j=j)
            if witness:
                break

    verdict = search.verdict(witness)
    logger.info(
        'classify %s: %s after %s checks%s',
        config.label,
        verdict.status,
        len(verdict.search_trace),
        f' (k={witness.k}, order {witness.epsilon_order})' if witness else '',
    )
    return verdict


def verdict_report(verdict):
    return TransversalityVerdictSerializer(verdict).data


def melnikov_evaluations(order, theta0, epsilon, config, tol, backend=QuadratureBackend.DIRECT):
    """
    Funções de Melnikov que compõem a ordem pedida, com o peso ε^ordem
    de cada uma: '4', '6', 'sum' (ε⁴M4 + ε⁶M6) ou 'poly:N'.

    Retorna:
        list: pares (peso, MelnikovEvaluation).
    """
    if isinstance(order, str) and order.startswith(POLY_PREFIX):
        _, N = parse_function_name(order)
        return [(1.0, poly_evaluation(N, theta0, epsilon, tol, backend))]
    if order not in MELNIKOV_ORDERS:
        raise InvalidInputError(f'unknown Melnikov order {order!r}; expected 4, 6, sum or poly:N')
    if config is None:
        raise InvalidInputError(f'order {order!r} needs a configuration')
    if order == '4':
        return [(1.0, m4_evaluation(theta0, epsilon, config, tol, backend))]
    if order == '6':
        return [(1.0, m6_evaluation(theta0, epsilon, config, tol, backend))]
    return [
        (epsilon**4, m4_evaluation(theta0, epsilon, config, tol, backend)),
        (epsilon**6, m6_evaluation(theta0, epsilon, config, tol, backend)),
    ]


def sample_melnikov(order, theta0, epsilon, config=None, points=256, tol=None, backend=QuadratureBackend.DIRECT):
    """
    Amostra M numa grade uniforme de ``points`` valores de s0 em [0, 2π).

    Retorna:
        list: linhas (s0, M(s0)).
    """
    if points < 1:
        raise InvalidInputError(f'points must be >= 1, got {points!r}')
    tol = settings.MELNIKOV_QUAD_TOL if tol is None else tol
    grid = 2.0 * np.pi * np.arange(points) / points
    values = np.zeros(points)
    for weight, evaluation in melnikov_evaluations(order, theta0, epsilon, config, tol, backend):
        values = values + weight * np.asarray(evaluation(grid))
    logger.info('sampled Melnikov order %s at %s points (theta0=%s, epsilon=%s)', order, points, theta0, epsilon)
    return [(float(s0), float(value)) for s0, value in zip(grid, values)]


def f_roots_report(lo, hi, grid=64, tol=None):
    """
    Raízes isoladas de F4, F61 e F62 em Θ̃0 ∈ [lo, hi], confirmadas pelos
    dois pipelines; nessas raízes o fator F da testemunha se anula e a
    conclusão de ``classify`` não se aplica.
    """
    tol = ROOT_TOL if tol is None else tol
    report = {}
    for name in FunctionName.values:
        report[name] = confirmed_zeros(name, lo, hi, grid, tol)
    logger.info('F roots in [%s, %s]: %s', lo, hi, {name: len(roots) for name, roots in report.items()})
    return report
