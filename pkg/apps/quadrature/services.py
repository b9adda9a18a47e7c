"""
The named F-functions of the Melnikov integrals and their sampling.
"""
import logging
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as P

from apps.core.pool_manager import get_pool
from apps.utils.choices import FunctionName, QuadratureBackend
from apps.utils.exceptions import InvalidInputError
from .integrals import eval_partial_fractions
from .models import CubicPhaseIntegrand
from .utils import DEFAULT_BUDGET, DEFAULT_TOL, ROOT_TOL, eval_oscillatory, find_zeros

logger = logging.getLogger(__name__)

POLY_PREFIX = 'poly:'

# numerators in ascending powers, denominator power and δ/Θ̃³
F_TABLE = {
    FunctionName.F4: ((2, 0, -24, 0, 14), (0, 11, 0, -26, 0, 3), 6, 1.0),
    FunctionName.F61: ((-1, 0, 9), (0, -6, 0, 4), 6, 0.5),
    FunctionName.F62: ((-3, 0, 69, 0, -125, 0, 27), (0, -22, 0, 120, 0, -78, 0, 4), 8, 1.5),
}


def parse_function_name(name):
    """
    Aceita 'F4', 'F61', 'F62' ou 'poly:N' (N >= 4).

    Retorna:
        tuple: (FunctionName ou None, N ou None).
    """
    if isinstance(name, str) and name.startswith(POLY_PREFIX):
        try:
            N = int(name[len(POLY_PREFIX) :])
        except ValueError:
            raise InvalidInputError(f'bad polygon function name {name!r}')
        _check_polygon(N)
        return None, N
    if name not in FunctionName.values:
        raise InvalidInputError(f'unknown F-function {name!r}; expected F4, F61, F62 or poly:N')
    return FunctionName(name), None


def _check_polygon(N):
    if not isinstance(N, (int, np.integer)) or N < 4:
        raise InvalidInputError(f'polygon family needs an integer N >= 4, got {N!r}')


@lru_cache(maxsize=None)
def poly_numerators(N):
    """
    Numeradores do F-função do polígono de N − 1 corpos.

    Com n = N − 1, P(z) = (N z + i n)(1 − i z)^{2n} = P_r + i P_i; a parte
    imaginária (par) multiplica o cosseno e a real (ímpar) o seno.

    Retorna:
        tuple: (numerador do cosseno, numerador do seno), potências crescentes.
    """
    _check_polygon(N)
    n = N - 1
    product = P.polymul([1j * n, N], P.polypow([1.0, -1j], 2 * n))
    return tuple(P.polytrim(np.rint(product.imag)).tolist()), tuple(P.polytrim(np.rint(product.real)).tolist())


def f_integrand(name, theta_tilde):
    """Integrand of the named F-function at Θ̃ = Θ0/ε (signed)."""
    function, N = parse_function_name(name)
    theta_tilde = float(theta_tilde)
    if N is not None:
        cos_numerator, sin_numerator = poly_numerators(N)
        return CubicPhaseIntegrand(
            cos_numerator, sin_numerator, 2 * N, (N - 1) * theta_tilde**3 / 2.0, label=f'{POLY_PREFIX}{N}'
        )
    cos_numerator, sin_numerator, power, ratio = F_TABLE[function]
    return CubicPhaseIntegrand(cos_numerator, sin_numerator, power, ratio * theta_tilde**3, label=function.value)


def evaluate_f(name, theta_tilde, tol=DEFAULT_TOL, backend=QuadratureBackend.DIRECT, budget=DEFAULT_BUDGET):
    """
    Avalia a F-função nomeada em Θ̃ pelo pipeline escolhido.

    Retorna:
        QuadratureResult
    """
    integrand = f_integrand(name, theta_tilde)
    if QuadratureBackend(backend) == QuadratureBackend.PARTIAL_FRACTIONS:
        return eval_partial_fractions(integrand, tol, budget)
    return eval_oscillatory(integrand, tol, budget)


def eval_F4(theta_tilde, tol=DEFAULT_TOL, backend=QuadratureBackend.DIRECT):
    return evaluate_f(FunctionName.F4, theta_tilde, tol, backend).value


def eval_F61(theta_tilde, tol=DEFAULT_TOL, backend=QuadratureBackend.DIRECT):
    return evaluate_f(FunctionName.F61, theta_tilde, tol, backend).value


def eval_F62(theta_tilde, tol=DEFAULT_TOL, backend=QuadratureBackend.DIRECT):
    return evaluate_f(FunctionName.F62, theta_tilde, tol, backend).value


def eval_Fpoly(N, theta_tilde, tol=DEFAULT_TOL, backend=QuadratureBackend.DIRECT):
    _check_polygon(N)
    return evaluate_f(f'{POLY_PREFIX}{N}', theta_tilde, tol, backend).value


def uniform_grid(lo, hi, points):
    if points < 2 or not lo < hi:
        raise InvalidInputError(f'need lo < hi and at least 2 points, got [{lo!r}, {hi!r}] with {points!r}')
    return [float(x) for x in np.linspace(lo, hi, points)]


def sample_f_curve(name, lo, hi, points, tol=DEFAULT_TOL, backend=QuadratureBackend.DIRECT, progress=False):
    """
    Amostra a F-função numa grade uniforme de ``points`` valores de Θ̃,
    em paralelo e na ordem da grade.

    Retorna:
        list: QuadratureResult para cada ponto de ``uniform_grid(lo, hi, points)``.
    """
    parse_function_name(name)
    grid = uniform_grid(lo, hi, points)
    results = get_pool().map(lambda theta: evaluate_f(name, theta, tol, backend), grid, progress=progress, desc=name)
    logger.info('sampled %s at %s points in [%s, %s]', name, points, lo, hi)
    return results


def confirmed_zeros(name, lo, hi, grid=64, tol=ROOT_TOL):
    """
    Roots of the named F-function in [lo, hi], kept only when both pipelines
    agree that |F| at the root is below ten times their combined error.
    """
    roots = find_zeros(lambda theta: evaluate_f(name, theta, tol).value, lo, hi, grid)
    confirmed = []
    for root in roots:
        direct = evaluate_f(name, root, tol)
        second = evaluate_f(name, root, tol, QuadratureBackend.PARTIAL_FRACTIONS)
        threshold = 10.0 * (direct.error_estimate + second.error_estimate + tol)
        if max(abs(direct.value), abs(second.value)) <= threshold:
            confirmed.append(root)
        else:
            logger.warning('%s: discarding root %.10f, |F| above %.3e', name, root, threshold)
    return confirmed
