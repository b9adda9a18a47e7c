"""
Leading-order Melnikov functions for small ε, Fourier-coefficient sizes and
the comparison tables against quadrature.
"""
import logging
import math

import numpy as np

from apps.core.pool_manager import get_pool
from apps.harmonics.utils import c_coeffs, d_coeffs
from apps.melnikov.models import MelnikovEvaluation
from apps.melnikov.utils import M4, M6, check_point, poly_prefactor
from apps.quadrature.integrals import eval_Ik, eval_Jk
from apps.quadrature.services import f_integrand
from apps.quadrature.utils import DEFAULT_TOL
from apps.utils.choices import FunctionName, QuadratureBackend
from apps.utils.exceptions import InvalidInputError
from .models import FourierEstimate
from .utils import SQRT2, ik_asymptotic, jk_from_ik, saddle_series

logger = logging.getLogger(__name__)

SQRT_PI = math.sqrt(math.pi)
IK_HEADER = ('delta', 'I_k', 'I_k_asymptotic', 'ratio')
RECURRENCE_HEADER = ('k', 'delta', 'J_k2', 'J_k2_from_I_k', 'relative_difference')
LEADING_HEADER = ('s0', 'eps4_M4', 'm4_leading', 'eps6_M6', 'm6_leading')


def _leading_f(name, theta_tilde):
    return saddle_series(f_integrand(name, theta_tilde), 1)


def m4_leading_evaluation(theta0, epsilon, config):
    """M4 com F4 trocada pelo primeiro termo não nulo da expansão de sela."""
    sign, theta_tilde = check_point(theta0, epsilon)
    _, c2, c3 = c_coeffs(config)
    scale = sign * 2.0 / theta0**6 * _leading_f(FunctionName.F4, theta_tilde)
    return MelnikovEvaluation(4, ((2, -scale * c3, scale * c2),), theta0, epsilon)


def m6_leading_evaluation(theta0, epsilon, config):
    sign, theta_tilde = check_point(theta0, epsilon)
    d1, d2, d3, d4 = d_coeffs(config)
    scale = sign * 2.0 / theta0**8
    f61 = scale * _leading_f(FunctionName.F61, theta_tilde)
    f62 = scale * _leading_f(FunctionName.F62, theta_tilde)
    return MelnikovEvaluation(6, ((1, f61 * d2, -f61 * d1), (3, f62 * d4, -f62 * d3)), theta0, epsilon)


def poly_leading_evaluation(N, theta0, epsilon):
    prefactor = poly_prefactor(N)
    sign, theta_tilde = check_point(theta0, epsilon)
    amplitude = sign * float(prefactor) / theta0 ** (2 * N) * _leading_f(f'poly:{N}', theta_tilde)
    return MelnikovEvaluation(2 * N - 2, ((N - 1, 0.0, amplitude),), theta0, epsilon)


def m4_leading(s0, theta0, epsilon, config):
    """
    ε⁴M4 para ε pequeno. Com Θ0 > 0:

        (4√π/3) ε^(−7/2) Θ0^(3/2) e^{−2Θ0³/3ε³} (c2 sin 2s0 − c3 cos 2s0)
    """
    return epsilon**4 * m4_leading_evaluation(theta0, epsilon, config)(s0)


def m6_leading(s0, theta0, epsilon, config):
    """
    ε⁶M6 para ε pequeno, canais s0 e 3s0. Com Θ0 > 0:

        −(√π/(12√2)) ε^(−3/2) Θ0^(−1/2) e^{−Θ0³/3ε³} (d2 cos s0 − d1 sin s0)
        − (9√(3π)/(5√2)) ε^(−9/2) Θ0^(5/2) e^{−Θ0³/ε³} (d4 cos 3s0 − d3 sin 3s0)
    """
    return epsilon**6 * m6_leading_evaluation(theta0, epsilon, config)(s0)


def poly_leading(N, s0, theta0, epsilon):
    """ε^(2N−2) M_{2N−2} of the (N − 1)-gon; of order ε^(−N−1/2) e^{−(N−1)Θ0³/3ε³} for Θ0 > 0."""
    return epsilon ** (2 * N - 2) * poly_leading_evaluation(N, theta0, epsilon)(s0)


def fourier_estimate(k, theta0, epsilon, config):
    """
    Tamanho do k-ésimo coeficiente de Fourier da função de Melnikov, Θ0 > 0.

    k = 1 vem do canal s0 de ε⁶M6 e k = 2 de ε⁴M4; para k >= 3 só os
    expoentes ε^(−k−3/2) e^{−kΘ0³/3ε³} são conhecidos.

    Retorna:
        FourierEstimate
    """
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise InvalidInputError(f'harmonic k must be an integer >= 1, got {k!r}')
    if not (math.isfinite(theta0) and theta0 > 0):
        raise InvalidInputError(f'Fourier estimates need theta0 > 0, got {theta0!r}')
    alpha = beta = None
    if k == 1:
        d1, d2, _, _ = d_coeffs(config)
        constant = SQRT_PI / (12.0 * SQRT2) * theta0**-0.5
        alpha, beta = -constant * d2, constant * d1
    elif k == 2:
        _, c2, c3 = c_coeffs(config)
        constant = 4.0 * SQRT_PI / 3.0 * theta0**1.5
        alpha, beta = -constant * c3, constant * c2
    power = -1.5 if k == 1 else -k - 1.5
    return FourierEstimate(int(k), alpha, beta, power, k / 3.0, theta0, epsilon)


def ik_table(k, deltas, tol=DEFAULT_TOL, progress=False):
    """
    Linhas (δ, I_k, assintótico, razão) para δ > 0.
    """
    deltas = [float(delta) for delta in deltas]
    if any(not delta > 0 for delta in deltas):
        raise InvalidInputError(f'deltas must be positive, got {deltas!r}')

    def row(delta):
        exact = eval_Ik(k, delta, tol)
        estimate = ik_asymptotic(k, delta)
        return delta, exact, estimate, exact / estimate if estimate else math.nan

    rows = get_pool().map(row, deltas, progress=progress, desc=f'I{k}')
    logger.info('I_%s table at %s points', k, len(rows))
    return rows


def recurrence_table(ks, deltas, tol=DEFAULT_TOL):
    """Rows (k, δ, J_{k+2} direct, δ/(2(k+1)) I_k, relative difference)."""
    rows = []
    for k in ks:
        for delta in deltas:
            direct = eval_Jk(k + 2, delta, tol)
            identity = jk_from_ik(k, delta, tol)
            difference = abs(direct - identity) / abs(direct) if direct else abs(identity)
            rows.append((int(k), float(delta), direct, identity, difference))
    return rows


def leading_table(theta0, epsilon, config, points=16, tol=DEFAULT_TOL):
    """
    ε⁴M4 e ε⁶M6 por quadratura (pipeline de frações parciais) ao lado das
    formas dominantes, numa grade uniforme de s0.
    """
    if points < 1:
        raise InvalidInputError(f'points must be >= 1, got {points!r}')
    backend = QuadratureBackend.PARTIAL_FRACTIONS
    rows = []
    for i in range(points):
        s0 = 2.0 * math.pi * i / points
        rows.append(
            (
                s0,
                epsilon**4 * M4(s0, theta0, epsilon, config, tol, backend),
                m4_leading(s0, theta0, epsilon, config),
                epsilon**6 * M6(s0, theta0, epsilon, config, tol, backend),
                m6_leading(s0, theta0, epsilon, config),
            )
        )
    logger.info('leading-order table of %s at theta0=%s, epsilon=%s', config.label, theta0, epsilon)
    return rows
