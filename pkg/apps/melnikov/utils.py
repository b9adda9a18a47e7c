"""
Melnikov functions of the cometary problem along the Duffing homoclinic.

Upper signs (Θ0 > 0) and lower signs (Θ0 < 0) differ by the overall sign
and by the sign of the phase: every F-integral is evaluated at the signed
Θ̃ = Θ0/ε.
"""
import logging
import math
from fractions import Fraction

import numpy as np

from apps.harmonics.utils import c_coeffs, d_coeffs
from apps.quadrature.services import eval_F4, eval_F61, eval_F62, eval_Fpoly
from apps.quadrature.utils import DEFAULT_TOL
from apps.utils.choices import QuadratureBackend, SignBranch
from apps.utils.exceptions import InvalidInputError
from .models import MelnikovEvaluation

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


def check_point(theta0, epsilon):
    if theta0 == 0 or not math.isfinite(theta0):
        raise InvalidInputError(f'theta0 must be finite and nonzero, got {theta0!r}')
    if not (math.isfinite(epsilon) and epsilon > 0):
        raise InvalidInputError(f'epsilon must be positive, got {epsilon!r}')
    return SignBranch.of(theta0).sign, theta0 / epsilon


def m4_evaluation(theta0, epsilon, config, tol=DEFAULT_TOL, backend=QuadratureBackend.DIRECT):
    """
    M4 = ±(2/Θ0⁶) F4(Θ̃) (c2 sin 2s0 − c3 cos 2s0).

    Retorna:
        MelnikovEvaluation: ordem 4, harmônico 2.
    """
    sign, theta_tilde = check_point(theta0, epsilon)
    _, c2, c3 = c_coeffs(config)
    scale = sign * 2.0 / theta0**6 * eval_F4(theta_tilde, tol, backend)
    return MelnikovEvaluation(4, ((2, -scale * c3, scale * c2),), theta0, epsilon)


def m6_evaluation(theta0, epsilon, config, tol=DEFAULT_TOL, backend=QuadratureBackend.DIRECT):
    """
    M6 = ±(2/Θ0⁸)(F61 (d2 cos s0 − d1 sin s0) + F62 (d4 cos 3s0 − d3 sin 3s0)).
    """
    sign, theta_tilde = check_point(theta0, epsilon)
    d1, d2, d3, d4 = d_coeffs(config)
    scale = sign * 2.0 / theta0**8
    f61 = scale * eval_F61(theta_tilde, tol, backend)
    f62 = scale * eval_F62(theta_tilde, tol, backend)
    return MelnikovEvaluation(6, ((1, f61 * d2, -f61 * d1), (3, f62 * d4, -f62 * d3)), theta0, epsilon)


def poly_prefactor(N):
    """
    K = 2^N W_{N−1} = 4 (2N − 3)!! / (N − 1)!, exact (231/4 for N = 7).
    """
    if not isinstance(N, (int, np.integer)) or N < 4:
        raise InvalidInputError(f'polygon family needs an integer N >= 4, got {N!r}')
    double_factorial = math.prod(range(2 * N - 3, 0, -2))
    return Fraction(4 * double_factorial, math.factorial(N - 1))


def poly_evaluation(N, theta0, epsilon, tol=DEFAULT_TOL, backend=QuadratureBackend.DIRECT):
    """M_{2N−2} = ±(K/Θ0^{2N}) F_{2N−2}(Θ̃) sin((N − 1) s0)."""
    prefactor = poly_prefactor(N)
    sign, theta_tilde = check_point(theta0, epsilon)
    amplitude = sign * float(prefactor) / theta0 ** (2 * N) * eval_Fpoly(N, theta_tilde, tol, backend)
    return MelnikovEvaluation(2 * N - 2, ((N - 1, 0.0, amplitude),), theta0, epsilon)


def M4(s0, theta0, epsilon, config, tol=DEFAULT_TOL, backend=QuadratureBackend.DIRECT):
    return m4_evaluation(theta0, epsilon, config, tol, backend)(s0)


def M6(s0, theta0, epsilon, config, tol=DEFAULT_TOL, backend=QuadratureBackend.DIRECT):
    return m6_evaluation(theta0, epsilon, config, tol, backend)(s0)


def M_poly(N, s0, theta0, epsilon, tol=DEFAULT_TOL, backend=QuadratureBackend.DIRECT):
    return poly_evaluation(N, theta0, epsilon, tol, backend)(s0)


def melnikov_sum(s0, theta0, epsilon, config, tol=DEFAULT_TOL, backend=QuadratureBackend.DIRECT):
    """ε⁴M4 + ε⁶M6, the Melnikov integral of the Hamiltonian truncated at ε⁹."""
    return epsilon**4 * M4(s0, theta0, epsilon, config, tol, backend) + epsilon**6 * M6(
        s0, theta0, epsilon, config, tol, backend
    )


def simple_zeros(A, B, k):
    """
    Zeros de A cos(k s0) + B sin(k s0) em [0, 2π).

    São 2k zeros simples em s0 = (atan2(−A, B) + nπ)/k, ordenados.

    Retorna:
        list | None: ``None`` quando A = B = 0 (fator identicamente nulo).
    """
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise InvalidInputError(f'harmonic k must be an integer >= 1, got {k!r}')
    if A == 0 and B == 0:
        return None
    base = math.atan2(-A, B)
    zeros = []
    for n in range(2 * k):
        s0 = ((base + n * math.pi) / k) % TWO_PI + 0.0
        zeros.append(0.0 if s0 >= TWO_PI else s0)
    return sorted(zeros)
