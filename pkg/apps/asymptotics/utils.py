"""
Large-|δ| behaviour of the cubic-phase integrals.

Near z* = σi (σ = sign δ) the phase δ(z + z³/3) has a double saddle that
coincides with the pole of (1 + z²)^(−k). With z = z* + v h, h = |δ|^(−1/2):

    iδp(z)  = −2|δ|/3 − v² + iσ v³ h/3
    1 + z²  = 2σi v h (1 − σi v h/2)

so every integrand expands in powers of h with coefficients given by the
moments ∫ e^{−v²} v^(−n) dv taken on the side of the pole away from the
real axis.
"""
import math
from math import comb

import numpy as np
from numpy.polynomial import polynomial as P

from apps.quadrature.integrals import eval_Ik
from apps.quadrature.models import CubicPhaseIntegrand
from apps.quadrature.utils import DEFAULT_TOL
from apps.utils.exceptions import InvalidInputError

SQRT2 = math.sqrt(2.0)
MAX_SADDLE_ORDER = 16
# relative size under which a saddle term is an exact cancellation
SADDLE_ZERO = 1e-12


def _check_order(k):
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise InvalidInputError(f'order k must be an integer >= 1, got {k!r}')


def _double_factorial(n):
    return math.prod(range(n, 0, -2))


def ik_asymptotic(k, delta):
    """
    Termo dominante de I_k para δ grande:

        k = 2n − 1:  e^{−2δ/3} π δ^(n−1) / (2^(n+1) (2n−2)!!)
        k = 2n:      e^{−2δ/3} √π δ^(n−1/2) / (2^(n+1) (2n−1)!!)
    """
    _check_order(k)
    if not (math.isfinite(delta) and delta > 0):
        raise InvalidInputError(f'delta must be positive, got {delta!r}')
    n = (k + 1) // 2
    if k % 2:
        prefactor = math.pi * delta ** (n - 1) / (2 ** (n + 1) * _double_factorial(2 * n - 2))
    else:
        prefactor = math.sqrt(math.pi) * delta ** (n - 0.5) / (2 ** (n + 1) * _double_factorial(2 * n - 1))
    return prefactor * math.exp(-2.0 * delta / 3.0)


def jk_from_ik(k, delta, tol=DEFAULT_TOL):
    """J_{k+2}(δ) = δ/(2(k+1)) I_k(δ); odd in δ since I_k is even."""
    _check_order(k)
    if delta == 0:
        return 0.0
    return delta / (2.0 * (k + 1)) * eval_Ik(k, delta, tol)


def ik_integrand(k, delta):
    """cos(δp)/(1 + z²)^k on the whole line, that is 2 I_k(δ)."""
    _check_order(k)
    return CubicPhaseIntegrand((1.0,), (), int(k), float(delta), label=f'I{k}')


def saddle_moment(n, sigma):
    """
    ∫ e^{−v²} v^(−n) dv. Para n >= 1 o caminho passa abaixo do polo quando
    σ = +1 e acima quando σ = −1.
    """
    if n <= 0:
        return 0j if n % 2 else complex(math.gamma((1 - n) / 2.0))
    value = sigma * 1j * math.pi if n % 2 else complex(math.sqrt(math.pi))
    for j in range(3 if n % 2 else 2, n + 1, 2):
        value *= -2.0 / (j - 1)
    return value


def _taylor(numerator, point, orders):
    """N^(a)(point)/a! for a < orders."""
    coefficients = np.asarray(numerator, dtype=complex)
    values = []
    for a in range(orders):
        values.append(P.polyval(point, coefficients) / math.factorial(a) if len(coefficients) else 0j)
        coefficients = P.polyder(coefficients) if len(coefficients) > 1 else np.zeros(0, dtype=complex)
    return values


def _truncated_product(left, right):
    orders, width = left.shape
    result = np.zeros_like(left)
    for q1 in range(orders):
        for q2 in range(orders - q1):
            result[q1 + q2] += np.convolve(left[q1], right[q2])[:width]
    return result


def saddle_coefficients(integrand, orders):
    """
    Matriz (q, m) dos coeficientes de h^q v^m em

        N(z* + v h) (1 − σi v h/2)^(−k) exp(iσ v³ h/3),   N = C − iS.
    """
    sigma = 1 if integrand.phase_scale > 0 else -1
    k = integrand.denominator_power
    width = 3 * (orders - 1) + 1
    numerator = np.zeros((orders, width), dtype=complex)
    pole = np.zeros((orders, width), dtype=complex)
    cubic = np.zeros((orders, width), dtype=complex)
    for q, value in enumerate(_taylor(integrand.complex_numerator(), sigma * 1j, orders)):
        numerator[q, q] = value
        pole[q, q] = comb(k + q - 1, q) * (sigma * 0.5j) ** q
        cubic[q, 3 * q] = (sigma * 1j / 3.0) ** q / math.factorial(q)
    return _truncated_product(_truncated_product(numerator, pole), cubic)


def saddle_terms(integrand, orders=MAX_SADDLE_ORDER):
    """
    Contribuições reais de cada potência h^q, q < ``orders``, à integral
    de ``integrand`` na reta toda. Cancelamentos exatos valem 0.0.

    Raises:
        InvalidInputError: δ = 0.
    """
    delta = float(integrand.phase_scale)
    if delta == 0:
        raise InvalidInputError('the saddle expansion needs delta != 0')
    sigma = 1 if delta > 0 else -1
    k = integrand.denominator_power
    magnitude = abs(delta)
    h = magnitude**-0.5
    prefactor = (2j * sigma) ** (-k) * magnitude ** ((k - 1) / 2.0) * math.exp(-2.0 * magnitude / 3.0)
    coefficients = saddle_coefficients(integrand, orders)
    moments = np.array([saddle_moment(k - m, sigma) for m in range(coefficients.shape[1])])
    terms = []
    for q in range(orders):
        value = (prefactor * (coefficients[q] @ moments)).real * h**q
        size = abs(prefactor) * float(np.abs(coefficients[q]) @ np.abs(moments)) * h**q
        terms.append(0.0 if abs(value) <= SADDLE_ZERO * size else float(value))
    return terms


def saddle_leading(integrand):
    """
    Primeira ordem que não se cancela.

    Retorna:
        tuple: (q, valor), com o valor proporcional a |δ|^((k−1−q)/2) e^{−2|δ|/3};
        (None, 0.0) quando todas as ordens se anulam.
    """
    for q, value in enumerate(saddle_terms(integrand)):
        if value != 0.0:
            return q, value
    return None, 0.0


def saddle_series(integrand, terms=1):
    """Sum of the first ``terms`` non-vanishing orders of the saddle expansion."""
    if terms < 1:
        raise InvalidInputError(f'terms must be >= 1, got {terms!r}')
    kept = [value for value in saddle_terms(integrand) if value != 0.0]
    return math.fsum(kept[:terms])


def harmonic_decay(k, theta0, epsilon):
    """e^{−kΘ0³/3ε³}, the size of the k-th Fourier coefficient."""
    return math.exp(-k * theta0**3 / (3.0 * epsilon**3))


def sanders_bound(tau, theta0, epsilon):
    """Resto e^{−Θ0²|τ|/(√2 ε³)}, com constante 1."""
    return math.exp(-(theta0**2) * abs(tau) / (SQRT2 * epsilon**3))


def sanders_threshold(k, theta0):
    """|τ| beyond which the remainder bound falls under the k-th harmonic: k√2Θ0/3."""
    _check_order(k)
    if not (math.isfinite(theta0) and theta0 > 0):
        raise InvalidInputError(f'theta0 must be positive, got {theta0!r}')
    return k * SQRT2 * theta0 / 3.0


def sanders_lipschitz(theta0):
    if theta0 == 0 or not math.isfinite(theta0):
        raise InvalidInputError(f'theta0 must be finite and nonzero, got {theta0!r}')
    return SQRT2 / theta0
